#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "apvq/chain_model.hpp"
#include "apvq/oracle.hpp"
#include "apvq/protocols.hpp"

namespace apvq::oracle {

/// Outcome of one oracle-vs-analytic comparison.
struct CheckResult {
    std::string name;
    bool passed = false;
    double value = 0.0;          // oracle-side quantity
    double reference = 0.0;      // analytic value, or the caller's expected value
    double rel_deviation = 0.0;  // |value - reference| / |reference|
    double tolerance = 0.0;
    std::string detail;
};

struct CheckRequest {
    std::string name;
    std::optional<double> expected;  // overrides the analytic reference

    friend bool operator==(const CheckRequest&, const CheckRequest&) = default;
};

/// Every check name the suite knows, in suite order.
const std::vector<std::string>& known_checks();

/// Smallest qubit budget a check needs.
std::size_t required_budget(const std::string& check);

/// Checks that fit in `budget` qubits.
std::vector<std::string> default_checks(std::size_t budget);

/// Runs the requested checks (all that fit when `requests` is empty) on a
/// small instance of `chain` with at most `budget` qubits and ideal contrast.
/// Throws CapExceeded when budget exceeds `cap`, InvalidArgument for a zero
/// budget or an unknown check name.
std::vector<CheckResult> run_validation(const IsotopeChain& chain, const DeviationPattern& h,
                                        const ProtocolConfig& cfg, std::size_t budget,
                                        const std::vector<CheckRequest>& requests = {},
                                        std::size_t cap = kDefaultQubitCap);

/// cfg with every contrast and coherence factor set to its lossless value.
ProtocolConfig ideal_contrast(ProtocolConfig cfg);

}  // namespace apvq::oracle
