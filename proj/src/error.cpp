#include "apvq/error.hpp"

namespace apvq {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Domain: return "domain";
        case ErrorKind::InvalidArgument: return "invalid_argument";
        case ErrorKind::DivisionByZero: return "division_by_zero";
        case ErrorKind::Singular: return "singular";
        case ErrorKind::NoSignal: return "no_signal";
        case ErrorKind::CapExceeded: return "cap_exceeded";
        case ErrorKind::Unsupported: return "unsupported";
        case ErrorKind::NonInformative: return "non_informative";
        case ErrorKind::Allocation: return "allocation";
        case ErrorKind::Io: return "io";
    }
    return "unknown";
}

}  // namespace apvq
