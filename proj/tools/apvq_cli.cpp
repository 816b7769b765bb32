// Command-line front end: `apvq run <scenario> --out <dir>` and
// `apvq validate <scenario> [--budget M]`.

#include <cstdint>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "apvq/error.hpp"
#include "apvq/runner.hpp"
#include "apvq/scenario.hpp"

namespace {

void print_checks(const apvq::RunSummary& summary) {
    for (const auto& c : summary.checks) {
        std::cout << (c.passed ? "PASS  " : "FAIL  ") << c.name << "  rel_dev=" << std::setprecision(3)
                  << c.rel_deviation << "  tol=" << c.tolerance;
        if (!c.passed && !c.detail.empty()) std::cout << "  (" << c.detail << ")";
        std::cout << '\n';
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Isotope-chain parity-violation metrology simulator"};
    app.set_version_flag("--version", std::string(apvq::kLibraryVersion));
    app.require_subcommand(1);
    app.fallthrough();

    bool quiet = false;
    std::uint64_t seed = 0;
    app.add_flag("--quiet,-q", quiet, "Suppress progress output");
    app.add_option("--seed", seed, "Reserved; all computations are deterministic");

    std::string run_scenario;
    std::string out_dir;
    auto* run_cmd = app.add_subcommand("run", "Run every scan and oracle check of a scenario");
    run_cmd->add_option("scenario", run_scenario, "Scenario file (JSON)")->required()->check(CLI::ExistingFile);
    run_cmd->add_option("--out,-o", out_dir, "Output directory")->required();

    std::string validate_scenario;
    std::optional<std::size_t> budget;
    auto* validate_cmd = app.add_subcommand("validate", "Run the oracle-vs-analytic checks only");
    validate_cmd->add_option("scenario", validate_scenario, "Scenario file (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    validate_cmd->add_option("--budget,-b", budget, "Qubit budget for the exact oracle");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd) {
            const auto scenario = apvq::parse_scenario(run_scenario);
            apvq::RunOptions opts;
            opts.quiet = quiet;
            opts.log = &std::cout;
            const auto summary = apvq::run(scenario, out_dir, opts);
            if (!quiet) print_checks(summary);
            if (!summary.all_checks_passed()) {
                std::cerr << "oracle checks failed:";
                for (const auto& c : summary.checks) {
                    if (!c.passed) std::cerr << ' ' << c.name;
                }
                std::cerr << '\n';
            }
            return summary.exit_status();
        }
        const auto scenario = apvq::parse_scenario(validate_scenario);
        const auto summary = apvq::validate(scenario, budget);
        if (!quiet) print_checks(summary);
        return summary.exit_status();
    } catch (const apvq::ScenarioError& e) {
        std::cerr << e.what() << '\n';
        return 2;
    } catch (const apvq::Error& e) {
        std::cerr << "error (" << apvq::to_string(e.kind()) << "): " << e.what() << '\n';
        return 2;
    }
}
