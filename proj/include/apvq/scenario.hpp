#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "apvq/chain_model.hpp"
#include "apvq/protocols.hpp"
#include "apvq/scans.hpp"
#include "apvq/validation.hpp"

namespace apvq {

// Scenario files are JSON documents. See README.md for the
// grammar; every key is validated and unknown keys are rejected.

struct ChainBlock {
    std::vector<Isotope> isotopes;
    int ref_mass_number = 0;
    double sin2_theta_w = kDefaultSin2ThetaW;

    friend bool operator==(const ChainBlock&, const ChainBlock&) = default;
};

struct DeviationBlock {
    std::optional<std::string> preset;  // "sign_split"
    std::vector<double> h;              // used when no preset is given

    friend bool operator==(const DeviationBlock&, const DeviationBlock&) = default;
};

struct OracleBlock {
    std::size_t budget = 10;
    std::vector<oracle::CheckRequest> checks;  // empty: every check that fits

    friend bool operator==(const OracleBlock&, const OracleBlock&) = default;
};

struct Scenario {
    ChainBlock chain;
    DeviationBlock deviation;
    // Omega and tau carry physics and are never defaulted; the remaining
    // protocol fields live in `protocol` with their defaults applied.
    std::optional<double> omega;
    std::optional<double> tau;
    ProtocolConfig protocol;
    std::vector<ScanSpec> scans;
    std::optional<OracleBlock> oracle;

    [[nodiscard]] IsotopeChain build_chain() const;
    [[nodiscard]] DeviationPattern deviation_pattern() const;
    /// Protocol configuration with omega and tau filled in. Throws when either
    /// is absent.
    [[nodiscard]] ProtocolConfig config() const;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Parse failure carrying one "key.path: reason" entry per problem.
class ScenarioError : public std::runtime_error {
  public:
    explicit ScenarioError(std::vector<std::string> problems);
    [[nodiscard]] const std::vector<std::string>& problems() const noexcept { return problems_; }

  private:
    std::vector<std::string> problems_;
};

Scenario parse_scenario_text(const std::string& text);
Scenario parse_scenario(const std::filesystem::path& path);

/// Canonical JSON text: sorted keys, every defaulted field written out.
std::string serialize_scenario(const Scenario& scenario);

/// FNV-1a 64-bit hash of the canonical serialization, as 16 hex digits.
std::string scenario_hash(const Scenario& scenario);

}  // namespace apvq
