#include "apvq/scans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "apvq/error.hpp"

namespace apvq {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Isotope indices ordered by mass number, ties by chain position.
std::vector<std::size_t> by_mass_number(const IsotopeChain& chain) {
    std::vector<std::size_t> order(chain.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return chain.isotope(a).mass_number < chain.isotope(b).mass_number;
    });
    return order;
}

ScanRow error_row(double axis, Protocol p, const std::string& message) {
    return {axis, p, kNaN, kNaN, message};
}

std::string describe(const Error& e) { return std::string(to_string(e.kind())) + ": " + e.what(); }

}  // namespace

std::vector<std::int64_t> allocate_atoms(const IsotopeChain& chain, std::int64_t total,
                                         const AllocationRule& rule, bool min_one) {
    const std::size_t n = chain.size();
    if (total < 0) throw Error(ErrorKind::Allocation, "negative atom total");
    const auto order = by_mass_number(chain);
    std::vector<std::int64_t> atoms(n, 0);

    if (rule.kind == AllocationRule::Kind::Equal) {
        const auto count = static_cast<std::int64_t>(n);
        std::int64_t remainder = total % count;
        for (std::size_t i = 0; i < n; ++i) atoms[i] = total / count;
        for (std::size_t k = 0; remainder > 0; ++k, --remainder) ++atoms[order[k]];
    } else {
        if (rule.weights.size() != n) {
            throw Error(ErrorKind::Allocation, "allocation weights do not match chain length");
        }
        double sum = 0.0;
        for (double w : rule.weights) {
            if (!(w >= 0.0) || !std::isfinite(w)) {
                throw Error(ErrorKind::Allocation, "allocation weights must be finite and >= 0");
            }
            sum += w;
        }
        if (sum <= 0.0) throw Error(ErrorKind::Allocation, "allocation weights sum to zero");
        std::vector<double> frac(n);
        std::int64_t assigned = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double exact = static_cast<double>(total) * rule.weights[i] / sum;
            atoms[i] = static_cast<std::int64_t>(std::floor(exact));
            frac[i] = exact - static_cast<double>(atoms[i]);
            assigned += atoms[i];
        }
        auto ranked = order;
        std::stable_sort(ranked.begin(), ranked.end(),
                         [&](std::size_t a, std::size_t b) { return frac[a] > frac[b]; });
        for (std::size_t k = 0; assigned < total; ++k, ++assigned) ++atoms[ranked[k % n]];
    }

    if (min_one) {
        for (std::size_t i = 0; i < n; ++i) {
            if (atoms[i] < 1) {
                throw Error(ErrorKind::Allocation,
                            "total of " + std::to_string(total) + " atoms leaves isotope A=" +
                                std::to_string(chain.isotope(i).mass_number) + " empty");
            }
        }
    }
    return atoms;
}

void ScanSpec::validate() const {
    if (grid.empty()) throw Error(ErrorKind::InvalidArgument, "scan grid is empty");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > 0.0) || !std::isfinite(grid[i])) {
            throw Error(ErrorKind::InvalidArgument, "scan grid values must be positive");
        }
        if (i > 0 && !(grid[i] > grid[i - 1])) {
            throw Error(ErrorKind::InvalidArgument, "scan grid must be strictly increasing");
        }
        if (axis == ScanAxis::AtomNumber && grid[i] != std::floor(grid[i])) {
            throw Error(ErrorKind::InvalidArgument, "atom-number grid values must be integers");
        }
    }
    if (!(sigma_sys >= 0.0) || !std::isfinite(sigma_sys)) {
        throw Error(ErrorKind::InvalidArgument, "sigma_sys must be >= 0");
    }
    if (axis == ScanAxis::Time && n_fixed < 1) {
        throw Error(ErrorKind::InvalidArgument, "time scans need N_fixed >= 1");
    }
    if (protocols.empty()) throw Error(ErrorKind::InvalidArgument, "scan requests no protocols");
}

std::vector<ScanRow> ScanTable::series(Protocol p) const {
    std::vector<ScanRow> out;
    for (const auto& r : rows) {
        if (r.protocol == p) out.push_back(r);
    }
    return out;
}

ScanTable atom_scan(const IsotopeChain& chain, const DeviationPattern& h,
                    const ProtocolConfig& cfg, const ScanSpec& spec) {
    spec.validate();
    if (spec.axis != ScanAxis::AtomNumber) {
        throw Error(ErrorKind::InvalidArgument, "atom_scan needs an atom_number axis");
    }
    cfg.validate();
    ScanTable table;
    table.axis = ScanAxis::AtomNumber;
    table.rows.reserve(spec.grid.size() * spec.protocols.size());
    for (double value : spec.grid) {
        const auto total = static_cast<std::int64_t>(value);
        std::optional<IsotopeChain> allocated;
        try {
            const auto atoms = allocate_atoms(chain, total, spec.allocation);
            allocated = chain.with_atoms(atoms);
        } catch (const Error& e) {
            for (auto p : spec.protocols) table.rows.push_back(error_row(value, p, describe(e)));
            continue;
        }
        for (const auto& row : protocol_table(*allocated, h, cfg, spec.protocols)) {
            if (row.ok()) {
                const double stat = row.result->delta_theta;
                table.rows.push_back({value, row.protocol, stat,
                                      std::hypot(stat, spec.sigma_sys), {}});
            } else {
                table.rows.push_back(error_row(value, row.protocol, row.error));
            }
        }
    }
    return table;
}

ScanTable time_scan(const IsotopeChain& chain, const DeviationPattern& h,
                    const ProtocolConfig& cfg, const ScanSpec& spec) {
    spec.validate();
    if (spec.axis != ScanAxis::Time) {
        throw Error(ErrorKind::InvalidArgument, "time_scan needs a time axis");
    }
    ScanTable table;
    table.axis = ScanAxis::Time;

    const double t0 = spec.grid.front();
    ProtocolConfig at_t0 = cfg;
    at_t0.T_avg = t0;

    std::vector<ProtocolRow> base;
    try {
        at_t0.validate();
        const auto atoms = allocate_atoms(chain, spec.n_fixed, spec.allocation);
        base = protocol_table(chain.with_atoms(atoms), h, at_t0, spec.protocols);
    } catch (const Error& e) {
        for (double t : spec.grid) {
            for (auto p : spec.protocols) table.rows.push_back(error_row(t, p, describe(e)));
        }
        return table;
    }

    table.rows.reserve(spec.grid.size() * base.size());
    for (double t : spec.grid) {
        const double scale = std::sqrt(t0 / t);
        for (const auto& row : base) {
            if (!row.ok()) {
                table.rows.push_back(error_row(t, row.protocol, row.error));
                continue;
            }
            const double stat = row.result->delta_theta * scale;
            table.rows.push_back({t, row.protocol, stat, std::hypot(stat, spec.sigma_sys), {}});
        }
    }
    return table;
}

ScanTable run_scan(const IsotopeChain& chain, const DeviationPattern& h,
                   const ProtocolConfig& cfg, const ScanSpec& spec) {
    return spec.axis == ScanAxis::AtomNumber ? atom_scan(chain, h, cfg, spec)
                                             : time_scan(chain, h, cfg, spec);
}

std::vector<Crossover> crossover_finder(const ScanTable& table, Protocol first, Protocol second) {
    const auto a = table.series(first);
    const auto b = table.series(second);
    std::vector<Crossover> out;

    // Walk the shared grid, remembering the last point where the two differed.
    int last_sign = 0;
    double last_axis = 0.0;
    std::size_t j = 0;
    for (const auto& ra : a) {
        while (j < b.size() && b[j].axis_value < ra.axis_value) ++j;
        if (j == b.size()) break;
        const auto& rb = b[j];
        if (rb.axis_value != ra.axis_value || !ra.ok() || !rb.ok()) continue;
        const double diff = ra.delta_theta_stat - rb.delta_theta_stat;
        const double scale = std::max(std::abs(ra.delta_theta_stat), std::abs(rb.delta_theta_stat));
        int sign = 0;
        if (std::abs(diff) > 1e-12 * scale) sign = diff > 0.0 ? 1 : -1;
        if (sign == 0) continue;
        if (last_sign != 0 && sign != last_sign) {
            out.push_back({first, second, std::sqrt(last_axis * ra.axis_value), last_axis,
                           ra.axis_value});
        }
        last_sign = sign;
        last_axis = ra.axis_value;
    }
    return out;
}

std::vector<Crossover> crossover_finder(const ScanTable& table) {
    std::vector<Protocol> present;
    for (const auto& r : table.rows) {
        if (std::find(present.begin(), present.end(), r.protocol) == present.end()) {
            present.push_back(r.protocol);
        }
    }
    std::vector<Crossover> out;
    for (std::size_t i = 0; i < present.size(); ++i) {
        for (std::size_t k = i + 1; k < present.size(); ++k) {
            auto found = crossover_finder(table, present[i], present[k]);
            out.insert(out.end(), found.begin(), found.end());
        }
    }
    return out;
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
    if (!(lo > 0.0 && hi > lo) || n < 2) {
        throw Error(ErrorKind::InvalidArgument, "log_grid needs 0 < lo < hi and n >= 2");
    }
    std::vector<double> g(n);
    const double a = std::log(lo);
    const double step = (std::log(hi) - a) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) g[i] = std::exp(a + step * static_cast<double>(i));
    g.front() = lo;
    g.back() = hi;
    return g;
}

std::vector<double> default_time_grid(std::size_t n) { return log_grid(1.0, 420.0 * 3600.0, n); }

}  // namespace apvq
