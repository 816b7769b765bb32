#include "apvq/protocols.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "apvq/error.hpp"

namespace apvq {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_unit_interval(double v, const char* name) {
    if (!(v > 0.0 && v <= 1.0)) {
        throw Error(ErrorKind::Domain, std::string(name) + " must lie in (0, 1]");
    }
}

void require_positive_time(double v, const char* name) {
    if (!(v > 0.0)) throw Error(ErrorKind::Domain, std::string(name) + " must be > 0");
}

// exp(-n tau / T) in log form; zero for an infinite coherence time.
double dephasing_log(double n, double tau, double t2) {
    return std::isinf(t2) ? 0.0 : -n * tau / t2;
}

double gate_survival_log(const ProtocolConfig& cfg, const NoiseCounts& counts, std::int64_t n) {
    return std::log(cfg.C0) + static_cast<double>(counts.n1) * std::log(cfg.F1) +
           static_cast<double>(counts.n2) * std::log(cfg.F2) +
           static_cast<double>(n) * std::log(cfg.p_surv);
}

void require_atoms(std::int64_t n) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "per-isotope readout needs N_A >= 1");
}

std::vector<double> per_isotope_values(const IsotopeChain& chain,
                                       double (*fn)(const ProtocolConfig&, std::int64_t),
                                       const ProtocolConfig& cfg) {
    std::vector<double> out;
    out.reserve(chain.size());
    for (const auto& iso : chain.isotopes()) {
        out.push_back(iso.atoms > 0 ? fn(cfg, iso.atoms)
                                    : std::numeric_limits<double>::infinity());
    }
    return out;
}

}  // namespace

void ProtocolConfig::validate() const {
    if (!(std::isfinite(omega) && omega != 0.0)) {
        throw Error(ErrorKind::Domain, "omega must be finite and nonzero");
    }
    if (!(std::isfinite(tau) && tau > 0.0)) throw Error(ErrorKind::Domain, "tau must be > 0");
    require_unit_interval(C0, "C0");
    require_unit_interval(F1, "F1");
    require_unit_interval(F2, "F2");
    require_unit_interval(p_surv, "p_surv");
    require_unit_interval(C_sql, "C_sql");
    require_positive_time(T2, "T2");
    require_positive_time(T2_local, "T2_local");
    require_positive_time(T2_diff, "T2_diff");
    if (!std::isfinite(G_dB)) throw Error(ErrorKind::Domain, "G_dB must be finite");
    if (rep_rate && !(std::isfinite(*rep_rate) && *rep_rate > 0.0)) {
        throw Error(ErrorKind::Domain, "rep_rate must be > 0");
    }
    if (!(std::isfinite(T_avg) && T_avg > 0.0)) throw Error(ErrorKind::Domain, "T_avg must be > 0");
    if (repetitions() < 1.0) {
        throw Error(ErrorKind::Domain, "rep_rate * T_avg must be >= 1");
    }
}

NoiseCounts gate_counts(GateCountModel model, std::int64_t n_qubits) {
    if (n_qubits < 1) return {};
    switch (model) {
        case GateCountModel::Linear: return {n_qubits, n_qubits - 1};
        case GateCountModel::LogDepth: return {2 * n_qubits, n_qubits - 1};
    }
    return {};
}

std::string_view to_string(Protocol p) noexcept {
    switch (p) {
        case Protocol::Sql: return "sql";
        case Protocol::Squeezed: return "squeezed";
        case Protocol::SameIsotopeCat: return "same_isotope_cat";
        case Protocol::CrossCatIdeal: return "cross_cat_ideal";
        case Protocol::CrossCatNoisy: return "cross_cat_noisy";
        case Protocol::DfsCat: return "dfs_cat";
    }
    return "unknown";
}

std::optional<Protocol> protocol_from_string(std::string_view name) noexcept {
    for (auto p : {Protocol::Sql, Protocol::Squeezed, Protocol::SameIsotopeCat,
                   Protocol::CrossCatIdeal, Protocol::CrossCatNoisy, Protocol::DfsCat}) {
        if (to_string(p) == name) return p;
    }
    return std::nullopt;
}

std::vector<Protocol> standard_protocols() {
    return {Protocol::Sql, Protocol::Squeezed, Protocol::SameIsotopeCat, Protocol::CrossCatIdeal,
            Protocol::CrossCatNoisy};
}

double squeezing_factor(double g_db) { return std::pow(10.0, -g_db / 20.0); }

double cat_contrast(const ProtocolConfig& cfg, const NoiseCounts& counts, std::int64_t n,
                    double tau) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "cat_contrast needs N >= 1");
    return std::exp(gate_survival_log(cfg, counts, n) +
                    dephasing_log(static_cast<double>(n), tau, cfg.T2));
}

double dfs_contrast(const ProtocolConfig& cfg, const NoiseCounts& counts, std::int64_t n,
                    double tau) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "dfs_contrast needs N >= 1");
    return std::exp(gate_survival_log(cfg, counts, n) +
                    dephasing_log(static_cast<double>(n), tau, cfg.T2_local) +
                    dephasing_log(1.0, tau, cfg.T2_diff));
}

double sql_per_isotope(const ProtocolConfig& cfg, std::int64_t n_atoms) {
    require_atoms(n_atoms);
    return 1.0 / (kTwoPi * cfg.C_sql * cfg.tau *
                  std::sqrt(static_cast<double>(n_atoms) * cfg.repetitions()));
}

double squeezed_per_isotope(const ProtocolConfig& cfg, std::int64_t n_atoms) {
    return squeezing_factor(cfg.G_dB) * sql_per_isotope(cfg, n_atoms);
}

double same_isotope_cat_per_isotope(const ProtocolConfig& cfg, std::int64_t n_atoms) {
    require_atoms(n_atoms);
    const double c = cat_contrast(cfg, gate_counts(cfg.gate_counts, n_atoms), n_atoms, cfg.tau);
    return 1.0 / (kTwoPi * c * cfg.tau * static_cast<double>(n_atoms) *
                  std::sqrt(cfg.repetitions()));
}

double combine_classical_fit(const IsotopeChain& chain, const DeviationPattern& h,
                             std::span<const double> per_isotope, const ProtocolConfig& cfg) {
    const std::size_t n = chain.size();
    if (h.h.size() != n || per_isotope.size() != n) {
        throw Error(ErrorKind::InvalidArgument, "classical fit: length mismatch with chain");
    }
    const auto q = chain.q();

    // Fisher matrix for (Omega, theta) at theta = 0:
    //   d omega_A / d Omega = q_A,  d omega_A / d theta = Omega h_A.
    double f_oo = 0.0;
    double f_ot = 0.0;
    double f_tt = 0.0;
    int measured = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dw = per_isotope[i];
        if (std::isinf(dw)) continue;
        if (!(dw > 0.0) || std::isnan(dw)) {
            throw Error(ErrorKind::InvalidArgument, "per-isotope uncertainties must be > 0");
        }
        ++measured;
        const double w = 1.0 / (dw * dw);
        const double dt = cfg.omega * h.h[i];
        f_oo += w * q[i] * q[i];
        f_ot += w * q[i] * dt;
        f_tt += w * dt * dt;
    }
    if (measured < 2) {
        throw Error(ErrorKind::InvalidArgument,
                    "classical fit needs at least two isotopes with finite uncertainty");
    }
    const double det = f_oo * f_tt - f_ot * f_ot;
    if (!(det > 1e-12 * f_oo * f_tt)) {
        throw Error(ErrorKind::Singular,
                    "Fisher matrix is singular: deviation pattern is degenerate with the "
                    "common scale");
    }
    return std::sqrt(f_oo / det);
}

SensitivityResult cross_cat_sensitivity(const IsotopeChain& chain, const ProjectedPattern& proj,
                                        const ProtocolConfig& cfg, bool noisy) {
    if (!(proj.weighted_l1 > 0.0)) {
        throw Error(ErrorKind::NoSignal, "projected pattern has no component orthogonal to q");
    }
    SensitivityResult r;
    r.protocol = noisy ? Protocol::CrossCatNoisy : Protocol::CrossCatIdeal;
    const double eigsep = kTwoPi * cfg.tau * cfg.omega * proj.weighted_l1;
    r.eigsep = eigsep;
    r.delta_theta = 1.0 / (std::abs(eigsep) * std::sqrt(cfg.repetitions()));
    if (noisy) {
        const auto n = chain.total_atoms();
        r.contrast_used = cat_contrast(cfg, gate_counts(cfg.gate_counts, n), n, cfg.tau);
        r.delta_theta /= r.contrast_used;
    }
    return r;
}

SensitivityResult dfs_cat_sensitivity(const IsotopeChain& chain, const ProjectedPattern& proj,
                                      const ProtocolConfig& cfg) {
    if (!(proj.weighted_l1 > 0.0)) {
        throw Error(ErrorKind::NoSignal, "projected pattern has no component orthogonal to q");
    }
    const bool per_channel = cfg.dfs_accounting == DfsAccounting::PerChannel;
    // Every qubit contributes |g_A| to each branch, so the separation is set by
    // the number of qubits carried per isotope.
    const double channel_factor = per_channel ? 2.0 : 1.0;
    const std::int64_t qubits = per_channel ? 2 * chain.total_atoms() : chain.total_atoms();

    SensitivityResult r;
    r.protocol = Protocol::DfsCat;
    const double eigsep = channel_factor * kTwoPi * cfg.tau * cfg.omega * proj.weighted_l1;
    r.eigsep = eigsep;
    r.contrast_used = dfs_contrast(cfg, gate_counts(cfg.gate_counts, qubits), qubits, cfg.tau);
    r.delta_theta = 1.0 / (std::abs(eigsep) * r.contrast_used * std::sqrt(cfg.repetitions()));
    return r;
}

SensitivityResult evaluate_protocol(const IsotopeChain& chain, const DeviationPattern& h,
                                    const ProtocolConfig& cfg, Protocol protocol) {
    cfg.validate();
    SensitivityResult r;
    r.protocol = protocol;
    switch (protocol) {
        case Protocol::Sql:
            r.per_isotope = per_isotope_values(chain, sql_per_isotope, cfg);
            r.contrast_used = cfg.C_sql;
            break;
        case Protocol::Squeezed:
            r.per_isotope = per_isotope_values(chain, squeezed_per_isotope, cfg);
            r.contrast_used = cfg.C_sql;
            break;
        case Protocol::SameIsotopeCat:
            r.per_isotope = per_isotope_values(chain, same_isotope_cat_per_isotope, cfg);
            // Contrast of the largest subarray, reported for reference.
            {
                std::int64_t largest = 0;
                for (const auto& iso : chain.isotopes()) largest = std::max(largest, iso.atoms);
                if (largest > 0) {
                    r.contrast_used = cat_contrast(
                        cfg, gate_counts(cfg.gate_counts, largest), largest, cfg.tau);
                }
            }
            break;
        case Protocol::CrossCatIdeal:
            return cross_cat_sensitivity(chain, project_deviation(chain, h), cfg, false);
        case Protocol::CrossCatNoisy:
            return cross_cat_sensitivity(chain, project_deviation(chain, h), cfg, true);
        case Protocol::DfsCat:
            return dfs_cat_sensitivity(chain, project_deviation(chain, h), cfg);
    }
    r.delta_theta = combine_classical_fit(chain, h, r.per_isotope, cfg);
    return r;
}

std::vector<ProtocolRow> protocol_table(const IsotopeChain& chain, const DeviationPattern& h,
                                        const ProtocolConfig& cfg,
                                        std::span<const Protocol> protocols) {
    std::vector<ProtocolRow> rows;
    rows.reserve(protocols.size());
    for (auto p : protocols) {
        ProtocolRow row;
        row.protocol = p;
        try {
            row.result = evaluate_protocol(chain, h, cfg, p);
        } catch (const Error& e) {
            row.error = std::string(to_string(e.kind())) + ": " + e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace apvq
