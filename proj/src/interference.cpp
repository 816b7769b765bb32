#include "apvq/interference.hpp"

#include <cmath>
#include <limits>

#include "apvq/error.hpp"

namespace apvq {

double AmplitudePair::smallness() const {
    const double a = std::abs(pc);
    if (a == 0.0) return std::numeric_limits<double>::infinity();
    return std::abs(pnc) / a;
}

InterferenceRate interference_rate(const AmplitudePair& pair) {
    return {std::norm(pair.pc + pair.pnc), 2.0 * std::real(std::conj(pair.pc) * pair.pnc)};
}

double amplitude_ratio(double zeta_over_beta, double field) {
    if (field == 0.0) throw Error(ErrorKind::DivisionByZero, "amplitude_ratio: zero field");
    return zeta_over_beta / field;
}

LightShift pv_light_shift(const AmplitudePair& rabi, double detuning) {
    if (detuning == 0.0) throw Error(ErrorKind::DivisionByZero, "pv_light_shift: zero detuning");
    const double denom = 4.0 * detuning;
    return {std::norm(rabi.pc + rabi.pnc) / denom,
            2.0 * std::real(std::conj(rabi.pc) * rabi.pnc) / denom};
}

double ramsey_phase(double pv_shift, double tau) {
    if (tau < 0.0) throw Error(ErrorKind::Domain, "ramsey_phase: negative interrogation time");
    return pv_shift * tau;
}

}  // namespace apvq
