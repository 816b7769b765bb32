#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace apvq {

/// Default weak mixing parameter. Chosen so that 1 - 4 sin^2(theta_W) = 0.07.
inline constexpr double kDefaultSin2ThetaW = 0.2325;

/// Default relative threshold below which a projected component is treated as
/// exactly zero (scaled by max |h_A|).
inline constexpr double kDefaultZeroTol = 1e-12;

struct Isotope {
    int mass_number = 0;   // A
    int protons = 0;       // Z
    std::int64_t atoms = 0;  // probes allocated to this isotope
    double epsilon = 0.0;  // isotope-dependent correction to the weak-charge ratio

    [[nodiscard]] int neutrons() const noexcept { return mass_number - protons; }

    friend bool operator==(const Isotope&, const Isotope&) = default;
};

/// Tree-level weak charge Q_W = -N + Z (1 - 4 sin^2 theta_W).
double weak_charge(int protons, int neutrons, double sin2_theta_w);

/// An isotope chain together with its normalized Standard-Model weak-charge
/// pattern q_A = Q_W(A) / Q_W(A_ref). Immutable once built.
class IsotopeChain {
  public:
    /// Validates the isotopes and fills the weak-charge pattern.
    /// Throws apvq::Error on a chain shorter than two, a bad reference index,
    /// an invalid isotope or a zero weak charge.
    static IsotopeChain build(std::vector<Isotope> isotopes, std::size_t ref_index,
                              double sin2_theta_w = kDefaultSin2ThetaW);

    [[nodiscard]] std::size_t size() const noexcept { return isotopes_.size(); }
    [[nodiscard]] const std::vector<Isotope>& isotopes() const noexcept { return isotopes_; }
    [[nodiscard]] const Isotope& isotope(std::size_t i) const { return isotopes_.at(i); }
    [[nodiscard]] std::size_t ref_index() const noexcept { return ref_index_; }
    [[nodiscard]] double sin2_theta_w() const noexcept { return sin2_theta_w_; }
    [[nodiscard]] std::span<const double> weak_charges() const noexcept { return weak_charges_; }
    [[nodiscard]] std::span<const double> q() const noexcept { return q_; }

    [[nodiscard]] std::int64_t total_atoms() const noexcept;
    [[nodiscard]] std::vector<double> atom_weights() const;

    /// Same chain with a different per-isotope atom allocation.
    [[nodiscard]] IsotopeChain with_atoms(std::span<const std::int64_t> atoms) const;

    /// Same chain normalized to a different reference isotope.
    [[nodiscard]] IsotopeChain with_reference(std::size_t ref_index) const;

  private:
    IsotopeChain() = default;

    std::vector<Isotope> isotopes_;
    std::size_t ref_index_ = 0;
    double sin2_theta_w_ = kDefaultSin2ThetaW;
    std::vector<double> weak_charges_;
    std::vector<double> q_;
};

inline IsotopeChain build_chain(std::vector<Isotope> isotopes, std::size_t ref_index,
                                double sin2_theta_w = kDefaultSin2ThetaW) {
    return IsotopeChain::build(std::move(isotopes), ref_index, sin2_theta_w);
}

/// Assumed isotope-dependent deviation pattern h_A, in chain order.
struct DeviationPattern {
    std::vector<double> h;

    /// -1 on the first half of the chain, +1 on the second half (-,-,+,+ for
    /// four isotopes). Odd lengths put 0 on the middle isotope.
    static DeviationPattern sign_split(std::size_t n);
};

/// Component of h orthogonal to q under the weighted inner product
/// <a, b> = sum_A w_A a_A b_A.
struct ProjectedPattern {
    double beta = 0.0;
    std::vector<double> h_perp;
    std::vector<int> signs;       // sign(h_perp) with 0 below the zero tolerance
    std::vector<double> weights;  // w_A used in the projection
    double weighted_l1 = 0.0;     // sum_A w_A |h_perp,A| over nonzero signs
    double weighted_l2sq = 0.0;   // sum_A w_A h_perp,A^2
};

/// Projection with the atom numbers N_A as weights. Isotopes with zero atoms
/// take no part in beta. Throws when the chain has no atoms at all or when h
/// has the wrong length.
ProjectedPattern project_deviation(const IsotopeChain& chain, const DeviationPattern& h,
                                   double zero_tol = kDefaultZeroTol);

/// Projection with explicit non-negative weights (e.g. Fisher weights of a
/// per-isotope readout). Same contract otherwise.
ProjectedPattern project_deviation_weighted(const IsotopeChain& chain, const DeviationPattern& h,
                                            std::span<const double> weights,
                                            double zero_tol = kDefaultZeroTol);

/// E_PNC(A) / E_PNC(A_ref) ~ q_A / q_ref * (1 + eps_A - eps_ref).
double isotope_ratio(const IsotopeChain& chain, std::size_t index, std::size_t ref_index);

}  // namespace apvq
