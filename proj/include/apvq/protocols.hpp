#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "apvq/chain_model.hpp"

namespace apvq {

/// Gate-count strategy for preparing an N-qubit cat.
enum class GateCountModel {
    Linear,    // n1 = N, n2 = N - 1 (CNOT ladder)
    LogDepth,  // n1 = 2N, n2 = N - 1 (fan-out tree)
};

/// How the DFS cat charges its two reversal channels against the atom budget.
enum class DfsAccounting {
    PerChannel,   // each isotope places N_A atoms in each channel (2 N_A total)
    SplitBudget,  // each isotope splits its N_A atoms evenly over the two channels
};

struct ProtocolConfig {
    double omega = 1.0;  // common APV scale (Hz)
    double tau = 1.0;    // Ramsey time (s)
    double C0 = 1.0;
    double F1 = 1.0 - 1e-4;
    double F2 = 1.0 - 1e-3;
    double p_surv = 1.0;
    double T2 = std::numeric_limits<double>::infinity();
    double T2_local = std::numeric_limits<double>::infinity();
    double T2_diff = std::numeric_limits<double>::infinity();
    double G_dB = 4.0;
    std::optional<double> rep_rate;  // repetitions per second; defaults to 1 / tau
    double T_avg = 3600.0;           // averaging time (s)
    double C_sql = 1.0;              // SQL readout contrast
    GateCountModel gate_counts = GateCountModel::Linear;
    DfsAccounting dfs_accounting = DfsAccounting::PerChannel;

    [[nodiscard]] double effective_rep_rate() const { return rep_rate.value_or(1.0 / tau); }
    /// Number of repetitions R * T_avg.
    [[nodiscard]] double repetitions() const { return effective_rep_rate() * T_avg; }

    /// Throws apvq::Error naming the first field that violates its range.
    void validate() const;

    friend bool operator==(const ProtocolConfig&, const ProtocolConfig&) = default;
};

struct NoiseCounts {
    std::int64_t n1 = 0;
    std::int64_t n2 = 0;
};

NoiseCounts gate_counts(GateCountModel model, std::int64_t n_qubits);

enum class Protocol {
    Sql,
    Squeezed,
    SameIsotopeCat,
    CrossCatIdeal,
    CrossCatNoisy,
    DfsCat,
};

std::string_view to_string(Protocol p) noexcept;
std::optional<Protocol> protocol_from_string(std::string_view name) noexcept;
/// The five protocols compared on an atom-number scan.
std::vector<Protocol> standard_protocols();

struct SensitivityResult {
    Protocol protocol = Protocol::Sql;
    double delta_theta = 0.0;
    std::vector<double> per_isotope;  // delta omega_A (Hz), empty for global cats
    double contrast_used = 1.0;
    std::optional<double> eigsep;  // branch eigenvalue separation (rad)
};

/// xi = 10^(-G_dB / 20).
double squeezing_factor(double g_db);

/// C_N = C0 F1^n1 F2^n2 p_surv^N exp(-N tau / T2), evaluated in the log domain.
double cat_contrast(const ProtocolConfig& cfg, const NoiseCounts& counts, std::int64_t n,
                    double tau);

/// DFS variant: common dephasing through T2_local, one N-independent residual
/// factor exp(-tau / T2_diff).
double dfs_contrast(const ProtocolConfig& cfg, const NoiseCounts& counts, std::int64_t n,
                    double tau);

double sql_per_isotope(const ProtocolConfig& cfg, std::int64_t n_atoms);
double squeezed_per_isotope(const ProtocolConfig& cfg, std::int64_t n_atoms);
double same_isotope_cat_per_isotope(const ProtocolConfig& cfg, std::int64_t n_atoms);

/// Marginal uncertainty on theta from per-isotope frequency uncertainties,
/// linearized at theta = 0 with Omega as a nuisance parameter. Entries of
/// `per_isotope` may be +inf for isotopes that were not measured.
double combine_classical_fit(const IsotopeChain& chain, const DeviationPattern& h,
                             std::span<const double> per_isotope, const ProtocolConfig& cfg);

SensitivityResult cross_cat_sensitivity(const IsotopeChain& chain, const ProjectedPattern& proj,
                                        const ProtocolConfig& cfg, bool noisy);

SensitivityResult dfs_cat_sensitivity(const IsotopeChain& chain, const ProjectedPattern& proj,
                                      const ProtocolConfig& cfg);

/// Evaluates one protocol; throws on failure.
SensitivityResult evaluate_protocol(const IsotopeChain& chain, const DeviationPattern& h,
                                    const ProtocolConfig& cfg, Protocol protocol);

struct ProtocolRow {
    Protocol protocol = Protocol::Sql;
    std::optional<SensitivityResult> result;
    std::string error;  // set iff result is empty

    [[nodiscard]] bool ok() const noexcept { return result.has_value(); }
};

/// One row per requested protocol at a common (chain, h, cfg). Per-protocol
/// failures become row errors instead of aborting the table.
std::vector<ProtocolRow> protocol_table(const IsotopeChain& chain, const DeviationPattern& h,
                                        const ProtocolConfig& cfg,
                                        std::span<const Protocol> protocols);

}  // namespace apvq
