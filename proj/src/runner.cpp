#include "apvq/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>

#include <json.hpp>

#include "apvq/error.hpp"

namespace apvq {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
    out << text;
    if (!out) throw Error(ErrorKind::Io, "write failed for " + path.string());
}

std::vector<oracle::CheckResult> run_checks(const Scenario& sc, std::size_t budget) {
    const std::vector<oracle::CheckRequest> requests =
        sc.oracle ? sc.oracle->checks : std::vector<oracle::CheckRequest>{};
    return oracle::run_validation(sc.build_chain(), sc.deviation_pattern(), sc.config(), budget,
                                  requests);
}

}  // namespace

bool RunSummary::all_checks_passed() const {
    for (const auto& c : checks) {
        if (!c.passed) return false;
    }
    return true;
}

std::string RunSummary::to_json() const {
    json scans_j = json::array();
    for (const auto& s : scans) {
        json xo = json::array();
        for (const auto& c : s.crossovers) {
            xo.push_back({{"first", std::string(to_string(c.first))},
                          {"second", std::string(to_string(c.second))},
                          {"axis_value", c.axis_value},
                          {"lower", c.lower},
                          {"upper", c.upper}});
        }
        scans_j.push_back({{"name", s.name},
                           {"path", s.path.string()},
                           {"rows", s.rows},
                           {"error_rows", s.error_rows},
                           {"crossovers", xo},
                           {"seconds", s.seconds}});
    }
    json checks_j = json::array();
    for (const auto& c : checks) {
        checks_j.push_back({{"name", c.name},
                            {"passed", c.passed},
                            {"value", c.value},
                            {"reference", c.reference},
                            {"rel_deviation", c.rel_deviation},
                            {"tolerance", c.tolerance},
                            {"detail", c.detail}});
    }
    json doc = {{"scenario_hash", scenario_hash},
                {"library_version", library_version},
                {"scans", scans_j},
                {"checks", checks_j},
                {"all_checks_passed", all_checks_passed()},
                {"seconds", seconds}};
    if (oracle_budget) doc["oracle_budget"] = *oracle_budget;
    return doc.dump(2) + "\n";
}

std::string format_decimal(double value, int significant) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (value == 0.0) {
        return significant > 1 ? "0." + std::string(static_cast<std::size_t>(significant - 1), '0')
                               : "0";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", significant - 1, value);
    // buf looks like "-d.ddddde+XX"
    std::string s(buf);
    std::string sign;
    if (s.front() == '-') {
        sign = "-";
        s.erase(0, 1);
    }
    const auto epos = s.find('e');
    const int exponent = std::atoi(s.c_str() + epos + 1);
    std::string digits = s.substr(0, 1) + s.substr(2, epos - 2);

    std::string out;
    if (exponent >= 0) {
        const auto int_len = static_cast<std::size_t>(exponent) + 1;
        if (int_len >= digits.size()) {
            out = digits + std::string(int_len - digits.size(), '0');
        } else {
            out = digits.substr(0, int_len) + "." + digits.substr(int_len);
        }
    } else {
        out = "0." + std::string(static_cast<std::size_t>(-exponent - 1), '0') + digits;
    }
    return sign + out;
}

std::string scan_csv(const ScanTable& table) {
    std::string out = "axis,protocol,delta_theta_stat,delta_theta_tot\n";
    for (const auto& r : table.rows) {
        if (table.axis == ScanAxis::AtomNumber) {
            out += std::to_string(static_cast<long long>(r.axis_value));
        } else {
            out += format_decimal(r.axis_value);
        }
        out += ',';
        out += to_string(r.protocol);
        if (r.ok()) {
            out += ',' + format_decimal(r.delta_theta_stat) + ',' + format_decimal(r.delta_theta_tot);
        } else {
            out += ",error,error";
        }
        out += '\n';
    }
    return out;
}

RunSummary run(const Scenario& scenario, const std::filesystem::path& out_dir,
               const RunOptions& options) {
    const auto start = Clock::now();
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw Error(ErrorKind::Io, "cannot create " + out_dir.string() + ": " + ec.message());

    RunSummary summary;
    summary.scenario_hash = scenario_hash(scenario);
    auto say = [&](const std::string& line) {
        if (!options.quiet && options.log) *options.log << line << '\n';
    };

    if (!scenario.scans.empty()) {
        const auto chain = scenario.build_chain();
        const auto h = scenario.deviation_pattern();
        const auto cfg = scenario.config();
        for (const auto& spec : scenario.scans) {
            const auto t0 = Clock::now();
            const auto table = run_scan(chain, h, cfg, spec);
            ScanOutput out;
            out.name = spec.name;
            out.path = out_dir / (spec.name + ".csv");
            out.rows = table.rows.size();
            for (const auto& r : table.rows) out.error_rows += r.ok() ? 0 : 1;
            if (spec.axis == ScanAxis::AtomNumber) out.crossovers = crossover_finder(table);
            write_file(out.path, scan_csv(table));
            out.seconds = seconds_since(t0);
            say("scan " + spec.name + ": " + std::to_string(out.rows) + " rows -> " +
                out.path.string());
            summary.scans.push_back(std::move(out));
        }
    }

    if (scenario.oracle) {
        summary.oracle_budget = scenario.oracle->budget;
        summary.checks = run_checks(scenario, scenario.oracle->budget);
    }

    summary.seconds = seconds_since(start);
    write_file(out_dir / "run_summary.json", summary.to_json());
    return summary;
}

RunSummary validate(const Scenario& scenario, std::optional<std::size_t> budget) {
    const auto start = Clock::now();
    std::size_t b = 0;
    if (budget) {
        b = *budget;
    } else if (scenario.oracle) {
        b = scenario.oracle->budget;
    } else {
        throw Error(ErrorKind::InvalidArgument, "scenario has no oracle block and no budget was given");
    }
    RunSummary summary;
    summary.scenario_hash = scenario_hash(scenario);
    summary.oracle_budget = b;
    summary.checks = run_checks(scenario, b);
    summary.seconds = seconds_since(start);
    return summary;
}

}  // namespace apvq
