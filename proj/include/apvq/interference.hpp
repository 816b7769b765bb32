#pragma once

#include <complex>

namespace apvq {

/// Parity-conserving and parity-violating amplitudes driving one transition.
/// Interpreted either as transition amplitudes (arbitrary common units) or as
/// Rabi frequencies in rad/s.
struct AmplitudePair {
    std::complex<double> pc;
    std::complex<double> pnc;

    /// |pnc| / |pc|; infinite when pc vanishes.
    [[nodiscard]] double smallness() const;
};

struct InterferenceRate {
    double rate = 0.0;          // |pc + pnc|^2
    double reversal_odd = 0.0;  // 2 Re(pc* pnc)
};

InterferenceRate interference_rate(const AmplitudePair& pair);

/// PV-to-Stark amplitude ratio zeta / (beta E). `zeta_over_beta` and the
/// field must share units (V/m). Throws on a zero field.
double amplitude_ratio(double zeta_over_beta, double field);

struct LightShift {
    double total = 0.0;  // rad/s
    double pv = 0.0;     // rad/s, odd in the PNC amplitude
};

/// Off-resonant light shift |Omega_PC + Omega_PNC|^2 / (4 Delta) and its
/// interference part, both as angular frequencies. Throws on zero detuning.
LightShift pv_light_shift(const AmplitudePair& rabi, double detuning);

/// Ramsey phase accumulated by a shift over an interrogation time.
double ramsey_phase(double pv_shift, double tau);

}  // namespace apvq
