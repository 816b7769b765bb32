#include "apvq/chain_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "apvq/error.hpp"

namespace apvq {

double weak_charge(int protons, int neutrons, double sin2_theta_w) {
    if (!(sin2_theta_w > 0.0 && sin2_theta_w < 0.5)) {
        throw Error(ErrorKind::Domain,
                    "sin2_theta_w must lie in (0, 0.5), got " + std::to_string(sin2_theta_w));
    }
    if (protons < 1 || neutrons < 0) {
        throw Error(ErrorKind::Domain, "weak_charge needs Z >= 1 and N >= 0");
    }
    return -static_cast<double>(neutrons) +
           static_cast<double>(protons) * (1.0 - 4.0 * sin2_theta_w);
}

IsotopeChain IsotopeChain::build(std::vector<Isotope> isotopes, std::size_t ref_index,
                                 double sin2_theta_w) {
    if (isotopes.size() < 2) {
        throw Error(ErrorKind::InvalidArgument, "an isotope chain needs at least two isotopes");
    }
    if (ref_index >= isotopes.size()) {
        throw Error(ErrorKind::InvalidArgument,
                    "reference index " + std::to_string(ref_index) + " out of range");
    }
    IsotopeChain chain;
    chain.weak_charges_.reserve(isotopes.size());
    for (const auto& iso : isotopes) {
        if (iso.mass_number < 1 || iso.protons < 1 || iso.protons > iso.mass_number) {
            throw Error(ErrorKind::InvalidArgument,
                        "invalid isotope A=" + std::to_string(iso.mass_number) +
                            " Z=" + std::to_string(iso.protons));
        }
        if (iso.atoms < 0) {
            throw Error(ErrorKind::InvalidArgument, "negative atom count for A=" +
                                                        std::to_string(iso.mass_number));
        }
        const double qw = weak_charge(iso.protons, iso.neutrons(), sin2_theta_w);
        if (std::abs(qw) < 1e-12) {
            throw Error(ErrorKind::DivisionByZero,
                        "zero weak charge for A=" + std::to_string(iso.mass_number));
        }
        chain.weak_charges_.push_back(qw);
    }
    const double qref = chain.weak_charges_[ref_index];
    chain.q_.reserve(isotopes.size());
    for (std::size_t i = 0; i < isotopes.size(); ++i) {
        chain.q_.push_back(i == ref_index ? 1.0 : chain.weak_charges_[i] / qref);
    }
    chain.isotopes_ = std::move(isotopes);
    chain.ref_index_ = ref_index;
    chain.sin2_theta_w_ = sin2_theta_w;
    return chain;
}

std::int64_t IsotopeChain::total_atoms() const noexcept {
    std::int64_t total = 0;
    for (const auto& iso : isotopes_) total += iso.atoms;
    return total;
}

std::vector<double> IsotopeChain::atom_weights() const {
    std::vector<double> w;
    w.reserve(isotopes_.size());
    for (const auto& iso : isotopes_) w.push_back(static_cast<double>(iso.atoms));
    return w;
}

IsotopeChain IsotopeChain::with_atoms(std::span<const std::int64_t> atoms) const {
    if (atoms.size() != isotopes_.size()) {
        throw Error(ErrorKind::InvalidArgument, "allocation length does not match chain");
    }
    auto isotopes = isotopes_;
    for (std::size_t i = 0; i < isotopes.size(); ++i) isotopes[i].atoms = atoms[i];
    return build(std::move(isotopes), ref_index_, sin2_theta_w_);
}

IsotopeChain IsotopeChain::with_reference(std::size_t ref_index) const {
    return build(isotopes_, ref_index, sin2_theta_w_);
}

DeviationPattern DeviationPattern::sign_split(std::size_t n) {
    DeviationPattern p;
    p.h.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (2 * i + 1 == n) {
            p.h[i] = 0.0;
        } else {
            p.h[i] = (2 * i < n) ? -1.0 : 1.0;
        }
    }
    return p;
}

ProjectedPattern project_deviation(const IsotopeChain& chain, const DeviationPattern& h,
                                   double zero_tol) {
    const auto w = chain.atom_weights();
    return project_deviation_weighted(chain, h, w, zero_tol);
}

ProjectedPattern project_deviation_weighted(const IsotopeChain& chain, const DeviationPattern& h,
                                            std::span<const double> weights, double zero_tol) {
    const std::size_t n = chain.size();
    if (h.h.size() != n) {
        throw Error(ErrorKind::InvalidArgument,
                    "deviation pattern has " + std::to_string(h.h.size()) +
                        " entries for a chain of " + std::to_string(n));
    }
    if (weights.size() != n) {
        throw Error(ErrorKind::InvalidArgument, "weight vector length does not match chain");
    }
    const auto q = chain.q();

    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(weights[i] >= 0.0) || !std::isfinite(weights[i])) {
            throw Error(ErrorKind::InvalidArgument, "projection weights must be finite and >= 0");
        }
        if (weights[i] == 0.0) continue;
        num += weights[i] * h.h[i] * q[i];
        den += weights[i] * q[i] * q[i];
    }
    if (den == 0.0) {
        throw Error(ErrorKind::InvalidArgument,
                    "projection undefined: no isotope carries a positive weight");
    }

    ProjectedPattern out;
    out.beta = num / den;
    out.weights.assign(weights.begin(), weights.end());
    out.h_perp.resize(n);
    out.signs.resize(n);

    double scale = 0.0;
    for (double v : h.h) scale = std::max(scale, std::abs(v));
    const double threshold = zero_tol * scale;

    for (std::size_t i = 0; i < n; ++i) {
        const double hp = h.h[i] - out.beta * q[i];
        out.h_perp[i] = hp;
        if (std::abs(hp) <= threshold) {
            out.signs[i] = 0;
        } else {
            out.signs[i] = hp > 0.0 ? 1 : -1;
        }
        if (out.signs[i] != 0) out.weighted_l1 += weights[i] * std::abs(hp);
        out.weighted_l2sq += weights[i] * hp * hp;
    }
    return out;
}

double isotope_ratio(const IsotopeChain& chain, std::size_t index, std::size_t ref_index) {
    if (index >= chain.size() || ref_index >= chain.size()) {
        throw Error(ErrorKind::InvalidArgument, "isotope index out of range");
    }
    const auto q = chain.q();
    const auto& a = chain.isotope(index);
    const auto& r = chain.isotope(ref_index);
    return q[index] / q[ref_index] * (1.0 + a.epsilon - r.epsilon);
}

}  // namespace apvq
