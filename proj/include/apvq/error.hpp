#pragma once

#include <stdexcept>
#include <string>

namespace apvq {

/// Error categories raised by the library. Every failure is reported as an
/// `apvq::Error` carrying one of these kinds so callers (the scan driver in
/// particular) can turn it into a row marker without string matching.
enum class ErrorKind {
    Domain,           // argument outside its mathematical domain
    InvalidArgument,  // malformed input (length mismatch, bad index, ...)
    DivisionByZero,   // zero weak charge, zero detuning, zero field
    Singular,         // Fisher matrix not invertible (theta unidentifiable)
    NoSignal,         // projected pattern has no useful direction
    CapExceeded,      // oracle qubit cap exceeded
    Unsupported,      // readout requested on a state it does not apply to
    NonInformative,   // readout point carries no Fisher information
    Allocation,       // atom allocation rule cannot be satisfied
    Io,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

}  // namespace apvq
