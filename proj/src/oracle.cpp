#include "apvq/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "apvq/error.hpp"

namespace apvq::oracle {

namespace {

constexpr double kNormTol = 1e-12;
// Populations below this are treated as empty when identifying cat branches.
constexpr double kBranchTol = 1e-12;
// p (1 - p) below this marks a fringe extremum.
constexpr double kExtremumTol = 1e-10;

void check_cap(std::size_t m, std::size_t cap) {
    if (m > cap) {
        throw Error(ErrorKind::CapExceeded, "register of " + std::to_string(m) +
                                                " qubits exceeds the cap of " +
                                                std::to_string(cap));
    }
}

void check_dims(const StateVector& state, const DiagonalGenerator& gen) {
    if (state.dimension() != gen.diag.size()) {
        throw Error(ErrorKind::InvalidArgument, "state and generator dimensions differ");
    }
}

// Basis index of a cat branch. `flip` selects the branch with every sign
// reversed; a negative qubit sign sets the bit.
std::size_t branch_index(const std::vector<QubitLabel>& labels, const std::vector<int>& signs,
                         bool flip) {
    std::size_t index = 0;
    for (std::size_t j = 0; j < labels.size(); ++j) {
        int s = signs[labels[j].isotope];
        if (labels[j].channel == Channel::Minus) s = -s;
        if (flip) s = -s;
        if (s < 0) index |= std::size_t{1} << j;
    }
    return index;
}

}  // namespace

std::vector<QubitLabel> qubit_layout(const IsotopeChain& chain, bool dfs, std::size_t cap) {
    const std::int64_t per_channel = chain.total_atoms();
    const std::int64_t total = dfs ? 2 * per_channel : per_channel;
    check_cap(static_cast<std::size_t>(total), cap);
    std::vector<QubitLabel> labels;
    labels.reserve(static_cast<std::size_t>(total));
    for (std::size_t a = 0; a < chain.size(); ++a) {
        const auto n = chain.isotope(a).atoms;
        if (dfs) {
            for (std::int64_t k = 0; k < n; ++k) labels.push_back({a, Channel::Plus});
            for (std::int64_t k = 0; k < n; ++k) labels.push_back({a, Channel::Minus});
        } else {
            for (std::int64_t k = 0; k < n; ++k) labels.push_back({a, Channel::None});
        }
    }
    return labels;
}

StateVector::StateVector(std::vector<Complex> amplitudes, std::vector<QubitLabel> labels)
    : amplitudes_(std::move(amplitudes)), labels_(std::move(labels)) {
    if (labels_.size() >= 8 * sizeof(std::size_t) ||
        amplitudes_.size() != (std::size_t{1} << labels_.size())) {
        throw Error(ErrorKind::InvalidArgument, "amplitude count must be 2^(number of qubits)");
    }
    if (std::abs(norm_squared() - 1.0) > kNormTol) {
        throw Error(ErrorKind::InvalidArgument, "state vector is not normalized");
    }
}

double StateVector::norm_squared() const noexcept {
    double s = 0.0;
    for (const auto& a : amplitudes_) s += std::norm(a);
    return s;
}

double DiagonalGenerator::max_eigenvalue() const {
    return *std::max_element(diag.begin(), diag.end());
}

double DiagonalGenerator::min_eigenvalue() const {
    return *std::min_element(diag.begin(), diag.end());
}

DiagonalGenerator make_generator(std::vector<double> per_qubit_coeff) {
    const std::size_t m = per_qubit_coeff.size();
    check_cap(m, 8 * sizeof(std::size_t) - 2);
    DiagonalGenerator gen;
    gen.diag.assign(std::size_t{1} << m, 0.0);
    for (std::size_t b = 0; b < gen.diag.size(); ++b) {
        double v = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            v += ((b >> j) & 1U) ? -per_qubit_coeff[j] : per_qubit_coeff[j];
        }
        gen.diag[b] = v;
    }
    gen.per_qubit_coeff = std::move(per_qubit_coeff);
    return gen;
}

DiagonalGenerator build_generator(const IsotopeChain& chain, const ProjectedPattern& proj,
                                  double tau, double omega, bool dfs, Coupling coupling,
                                  std::size_t cap) {
    if (proj.h_perp.size() != chain.size()) {
        throw Error(ErrorKind::InvalidArgument, "projected pattern does not match chain");
    }
    const auto labels = qubit_layout(chain, dfs, cap);
    std::vector<double> coeff;
    coeff.reserve(labels.size());
    for (const auto& l : labels) {
        double g = std::numbers::pi * tau * omega * proj.h_perp[l.isotope];
        if (l.channel == Channel::Minus && coupling == Coupling::Apv) g = -g;
        coeff.push_back(g);
    }
    return make_generator(std::move(coeff));
}

StateVector build_state(StateKind kind, const IsotopeChain& chain, const ProjectedPattern& proj,
                        double phase, std::size_t cap) {
    const bool dfs = kind == StateKind::DfsCat;
    auto labels = qubit_layout(chain, dfs, cap);
    const std::size_t dim = std::size_t{1} << labels.size();
    std::vector<Complex> amp(dim, Complex{0.0, 0.0});
    const Complex rel = std::polar(1.0, phase);
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;

    switch (kind) {
        case StateKind::ProductX: {
            const double a = std::pow(2.0, -0.5 * static_cast<double>(labels.size()));
            std::fill(amp.begin(), amp.end(), Complex{a, 0.0});
            break;
        }
        case StateKind::GhzPerIsotope: {
            // Product over isotope blocks; a block contributes only if all its
            // bits agree.
            std::vector<std::size_t> masks(chain.size(), 0);
            for (std::size_t j = 0; j < labels.size(); ++j) {
                masks[labels[j].isotope] |= std::size_t{1} << j;
            }
            for (std::size_t b = 0; b < dim; ++b) {
                Complex v{1.0, 0.0};
                for (std::size_t mask : masks) {
                    if (mask == 0) continue;
                    const std::size_t bits = b & mask;
                    if (bits == 0) {
                        v *= inv_sqrt2;
                    } else if (bits == mask) {
                        v *= rel * inv_sqrt2;
                    } else {
                        v = 0.0;
                        break;
                    }
                }
                amp[b] = v;
            }
            break;
        }
        case StateKind::CrossCat:
        case StateKind::DfsCat: {
            if (proj.signs.size() != chain.size()) {
                throw Error(ErrorKind::InvalidArgument, "projected pattern does not match chain");
            }
            const std::size_t up = branch_index(labels, proj.signs, false);
            const std::size_t down = branch_index(labels, proj.signs, true);
            if (up == down) {
                throw Error(ErrorKind::NoSignal, "cat branches coincide: all signs are zero");
            }
            amp[up] = inv_sqrt2;
            amp[down] = rel * inv_sqrt2;
            break;
        }
    }
    return StateVector(std::move(amp), std::move(labels));
}

double qfi(const StateVector& state, const DiagonalGenerator& gen) {
    check_dims(state, gen);
    const auto& amp = state.amplitudes();
    double mean = 0.0;
    for (std::size_t b = 0; b < amp.size(); ++b) mean += std::norm(amp[b]) * gen.diag[b];
    double var = 0.0;
    for (std::size_t b = 0; b < amp.size(); ++b) {
        const double d = gen.diag[b] - mean;
        var += std::norm(amp[b]) * d * d;
    }
    return 4.0 * var;
}

StateVector ramsey_evolve(const StateVector& state, const DiagonalGenerator& gen, double theta) {
    check_dims(state, gen);
    std::vector<Complex> amp = state.amplitudes();
    for (std::size_t b = 0; b < amp.size(); ++b) amp[b] *= std::polar(1.0, -theta * gen.diag[b]);
    return StateVector(std::move(amp), state.labels());
}

CatBranches cat_branches(const StateVector& state, const DiagonalGenerator& gen) {
    check_dims(state, gen);
    std::vector<std::size_t> populated;
    const auto& amp = state.amplitudes();
    for (std::size_t b = 0; b < amp.size(); ++b) {
        if (std::norm(amp[b]) > kBranchTol) {
            populated.push_back(b);
            if (populated.size() > 2) break;
        }
    }
    if (populated.size() != 2) {
        throw Error(ErrorKind::Unsupported,
                    "parity readout needs a two-branch cat state");
    }
    CatBranches br{populated[0], populated[1], 0.0};
    if (gen.diag[br.upper] < gen.diag[br.lower]) std::swap(br.upper, br.lower);
    br.eigsep = gen.diag[br.upper] - gen.diag[br.lower];
    return br;
}

namespace {

struct FringePoint {
    double symmetric;
    double antisymmetric;
};

FringePoint fringe_point(const StateVector& state, const DiagonalGenerator& gen,
                         const CatBranches& br, double theta) {
    const Complex up = state.amplitude(br.upper) * std::polar(1.0, -theta * gen.diag[br.upper]);
    const Complex lo = state.amplitude(br.lower) * std::polar(1.0, -theta * gen.diag[br.lower]);
    return {0.5 * std::norm(up + lo), 0.5 * std::norm(up - lo)};
}

}  // namespace

double parity_fringe(const StateVector& state, const DiagonalGenerator& gen, double theta) {
    const auto br = cat_branches(state, gen);
    return fringe_point(state, gen, br, theta).symmetric;
}

double cfi_parity(const StateVector& state, const DiagonalGenerator& gen, double theta) {
    const auto br = cat_branches(state, gen);
    if (!(br.eigsep > 0.0)) {
        throw Error(ErrorKind::NonInformative, "cat branches are degenerate under the generator");
    }
    const auto here = fringe_point(state, gen, br, theta);
    const double spread = here.symmetric * here.antisymmetric;
    if (spread < kExtremumTol) {
        throw Error(ErrorKind::NonInformative, "parity readout at a fringe extremum");
    }
    const double step = 1e-6 * 2.0 * std::numbers::pi / br.eigsep;
    const double plus = fringe_point(state, gen, br, theta + step).symmetric;
    const double minus = fringe_point(state, gen, br, theta - step).symmetric;
    const double slope = (plus - minus) / (2.0 * step);
    return slope * slope / spread;
}

double common_noise_check(const StateVector& state, const DiagonalGenerator& gen, double phase) {
    check_dims(state, gen);
    const auto& amp = state.amplitudes();
    Complex overlap{0.0, 0.0};
    for (std::size_t b = 0; b < amp.size(); ++b) {
        overlap += std::norm(amp[b]) * std::polar(1.0, -phase * gen.diag[b]);
    }
    return std::abs(overlap);
}

}  // namespace apvq::oracle
