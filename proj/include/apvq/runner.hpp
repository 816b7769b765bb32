#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "apvq/scans.hpp"
#include "apvq/scenario.hpp"
#include "apvq/validation.hpp"

namespace apvq {

inline constexpr const char* kLibraryVersion = "0.1.0";

struct ScanOutput {
    std::string name;
    std::filesystem::path path;
    std::size_t rows = 0;
    std::size_t error_rows = 0;
    std::vector<Crossover> crossovers;  // atom-number scans only
    double seconds = 0.0;
};

struct RunSummary {
    std::string scenario_hash;
    std::string library_version = kLibraryVersion;
    std::vector<ScanOutput> scans;
    std::vector<oracle::CheckResult> checks;
    std::optional<std::size_t> oracle_budget;
    double seconds = 0.0;

    [[nodiscard]] bool all_checks_passed() const;
    /// 0 iff every oracle check passed.
    [[nodiscard]] int exit_status() const { return all_checks_passed() ? 0 : 1; }
    [[nodiscard]] std::string to_json() const;
};

/// Plain decimal (never exponent) rendering with `significant` digits.
std::string format_decimal(double value, int significant = 12);

/// CSV with header `axis,protocol,delta_theta_stat,delta_theta_tot` and LF
/// line endings. Atom-number axes are written as integers; error rows carry
/// the literal `error` in both value columns.
std::string scan_csv(const ScanTable& table);

struct RunOptions {
    bool quiet = true;
    std::ostream* log = nullptr;  // progress lines when not quiet
};

/// Runs every scan and oracle check of the scenario, writing `<scan>.csv`
/// and `run_summary.json` into `out_dir` (created if needed).
RunSummary run(const Scenario& scenario, const std::filesystem::path& out_dir,
               const RunOptions& options = {});

/// Oracle checks only. `budget` overrides the scenario's oracle budget;
/// without either, throws InvalidArgument.
RunSummary validate(const Scenario& scenario, std::optional<std::size_t> budget = std::nullopt);

}  // namespace apvq
