#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "apvq/chain_model.hpp"

namespace apvq::oracle {

// Exact state-vector reference for small registers.
//
// Basis convention: qubit j is bit j of the basis index (qubit 0 is the least
// significant bit). Bit value 0 is the sigma_z = +1 eigenstate, bit value 1 is
// sigma_z = -1. Qubits are laid out isotope by isotope in chain order; in the
// DFS layout each isotope contributes its (+) channel block followed by its
// (-) channel block.

inline constexpr std::size_t kDefaultQubitCap = 14;

using Complex = std::complex<double>;

enum class Channel { None, Plus, Minus };

struct QubitLabel {
    std::size_t isotope = 0;
    Channel channel = Channel::None;

    friend bool operator==(const QubitLabel&, const QubitLabel&) = default;
};

/// Qubit labels for a chain. `dfs` doubles every isotope block into (+, -)
/// reversal channels of N_A qubits each. Throws CapExceeded above `cap`.
std::vector<QubitLabel> qubit_layout(const IsotopeChain& chain, bool dfs,
                                     std::size_t cap = kDefaultQubitCap);

class StateVector {
  public:
    StateVector(std::vector<Complex> amplitudes, std::vector<QubitLabel> labels);

    [[nodiscard]] std::size_t num_qubits() const noexcept { return labels_.size(); }
    [[nodiscard]] std::size_t dimension() const noexcept { return amplitudes_.size(); }
    [[nodiscard]] const std::vector<Complex>& amplitudes() const noexcept { return amplitudes_; }
    [[nodiscard]] const std::vector<QubitLabel>& labels() const noexcept { return labels_; }
    [[nodiscard]] Complex amplitude(std::size_t basis) const { return amplitudes_.at(basis); }
    [[nodiscard]] double norm_squared() const noexcept;

  private:
    std::vector<Complex> amplitudes_;
    std::vector<QubitLabel> labels_;
};

/// Diagonal generator G = sum_j g_j sigma_z^(j).
struct DiagonalGenerator {
    std::vector<double> diag;             // eigenvalue on every basis state
    std::vector<double> per_qubit_coeff;  // g_j (rad)

    [[nodiscard]] double max_eigenvalue() const;
    [[nodiscard]] double min_eigenvalue() const;
    /// Spectral width max - min.
    [[nodiscard]] double spread() const { return max_eigenvalue() - min_eigenvalue(); }
};

/// Fills `diag` from per-qubit coefficients.
DiagonalGenerator make_generator(std::vector<double> per_qubit_coeff);

enum class Coupling {
    Apv,     // opposite sign on the two reversal channels
    Common,  // same sign on both channels
};

/// Generator for theta: g_j = pi tau Omega h_perp,A(j). In the DFS layout the
/// APV coupling flips g_j on (-) channel qubits; the common coupling does not.
DiagonalGenerator build_generator(const IsotopeChain& chain, const ProjectedPattern& proj,
                                  double tau, double omega, bool dfs,
                                  Coupling coupling = Coupling::Apv,
                                  std::size_t cap = kDefaultQubitCap);

enum class StateKind { ProductX, GhzPerIsotope, CrossCat, DfsCat };

/// ProductX: |+x>^M. GhzPerIsotope: (|0..0> + e^{i phi}|1..1>)/sqrt2 on every
/// isotope block. CrossCat / DfsCat: the two-branch cats whose branches put
/// isotope A in |s_A> and |-s_A> (isotopes with s_A = 0 stay in |0> on both
/// branches). DfsCat uses the DFS layout.
StateVector build_state(StateKind kind, const IsotopeChain& chain, const ProjectedPattern& proj,
                        double phase = 0.0, std::size_t cap = kDefaultQubitCap);

/// 4 Var(G) for a pure state.
double qfi(const StateVector& state, const DiagonalGenerator& gen);

/// amplitude[b] *= exp(-i theta diag[b]).
StateVector ramsey_evolve(const StateVector& state, const DiagonalGenerator& gen, double theta);

/// The two populated basis states of a cat, ordered so that `upper` has the
/// larger generator eigenvalue.
struct CatBranches {
    std::size_t upper = 0;
    std::size_t lower = 0;
    double eigsep = 0.0;  // diag[upper] - diag[lower]
};

/// Throws Unsupported unless exactly two amplitudes exceed the tolerance.
CatBranches cat_branches(const StateVector& state, const DiagonalGenerator& gen);

/// Probability of the branch-symmetric outcome after evolving by theta:
/// (1 + C cos(theta * eigsep + phi)) / 2.
double parity_fringe(const StateVector& state, const DiagonalGenerator& gen, double theta);

/// Classical Fisher information of the parity readout, slope by central
/// difference with step 1e-6 of a fringe period. Throws NonInformative at a
/// fringe extremum.
double cfi_parity(const StateVector& state, const DiagonalGenerator& gen, double theta);

/// |<psi| exp(-i phase G) |psi>|.
double common_noise_check(const StateVector& state, const DiagonalGenerator& gen, double phase);

}  // namespace apvq::oracle
