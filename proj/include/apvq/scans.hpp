#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "apvq/chain_model.hpp"
#include "apvq/protocols.hpp"

namespace apvq {

enum class ScanAxis { AtomNumber, Time };

/// Rule mapping a total atom number onto the chain.
struct AllocationRule {
    enum class Kind { Equal, Weighted };
    Kind kind = Kind::Equal;
    std::vector<double> weights;  // Weighted only, one per isotope, >= 0

    friend bool operator==(const AllocationRule&, const AllocationRule&) = default;
};

/// Splits `total` atoms over the chain. Equal: floor(total / n) each with the
/// remainder handed out one by one from the lowest mass number up. Weighted:
/// largest-remainder rounding of total * w_A / sum(w), ties to lowest mass
/// number. With `min_one`, throws Allocation when some isotope would get
/// no atoms.
std::vector<std::int64_t> allocate_atoms(const IsotopeChain& chain, std::int64_t total,
                                         const AllocationRule& rule, bool min_one = true);

struct ScanSpec {
    std::string name;
    ScanAxis axis = ScanAxis::AtomNumber;
    std::vector<double> grid;
    AllocationRule allocation;
    std::vector<Protocol> protocols;
    double sigma_sys = 0.0;
    std::int64_t n_fixed = 1000;

    /// Throws on a non-increasing or non-positive grid, or a negative floor.
    void validate() const;

    friend bool operator==(const ScanSpec&, const ScanSpec&) = default;
};

struct ScanRow {
    double axis_value = 0.0;
    Protocol protocol = Protocol::Sql;
    double delta_theta_stat = 0.0;
    double delta_theta_tot = 0.0;
    std::string error;  // nonempty marks a failed row; the values are then NaN

    [[nodiscard]] bool ok() const noexcept { return error.empty(); }
};

struct ScanTable {
    ScanAxis axis = ScanAxis::AtomNumber;
    std::vector<ScanRow> rows;  // grid-major, protocol order as requested

    /// Rows of one protocol in grid order.
    [[nodiscard]] std::vector<ScanRow> series(Protocol p) const;
};

/// delta theta versus total atom number at the configured averaging time.
/// `chain` supplies isotopes and reference; its own atom counts are replaced
/// by the allocation at every grid point.
ScanTable atom_scan(const IsotopeChain& chain, const DeviationPattern& h,
                    const ProtocolConfig& cfg, const ScanSpec& spec);

/// delta theta versus averaging time at N = spec.n_fixed. The statistical part
/// is evaluated once at T0 = grid[0] and rescaled by sqrt(T0 / T); the total
/// adds sigma_sys in quadrature.
ScanTable time_scan(const IsotopeChain& chain, const DeviationPattern& h,
                    const ProtocolConfig& cfg, const ScanSpec& spec);

ScanTable run_scan(const IsotopeChain& chain, const DeviationPattern& h,
                   const ProtocolConfig& cfg, const ScanSpec& spec);

struct Crossover {
    Protocol first = Protocol::Sql;
    Protocol second = Protocol::Sql;
    double axis_value = 0.0;  // geometric midpoint of the bracketing grid pair
    double lower = 0.0;
    double upper = 0.0;
};

/// Grid intervals where delta_theta_stat of the two protocols exchange rank.
std::vector<Crossover> crossover_finder(const ScanTable& table, Protocol first, Protocol second);

/// All protocol pairs present in the table.
std::vector<Crossover> crossover_finder(const ScanTable& table);

/// n logarithmically spaced points from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, std::size_t n);

/// Default time axis: 1 s to 420 h.
std::vector<double> default_time_grid(std::size_t n = 60);

}  // namespace apvq
