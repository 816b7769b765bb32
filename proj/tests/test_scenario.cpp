#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "apvq/error.hpp"
#include "apvq/runner.hpp"
#include "apvq/scenario.hpp"

using namespace apvq;
using doctest::Approx;
namespace fs = std::filesystem;

namespace {

const char* kMinimal = R"({
  "chain": {"isotopes": [{"A": 170, "Z": 70, "atoms": 10}, {"A": 172, "Z": 70, "atoms": 10}],
            "ref_A": 170},
  "deviation": {"h": [1, -1]}
})";

const char* kSmallRun = R"({
  "chain": {"isotopes": [{"A": 170, "Z": 70}, {"A": 172, "Z": 70}, {"A": 174, "Z": 70},
                         {"A": 176, "Z": 70}], "ref_A": 174},
  "deviation": {"preset": "sign_split"},
  "protocol": {"omega": 1.0, "tau": 1.0},
  "scans": [
    {"name": "n", "axis": "atom_number", "grid": [2, 4, 8, 1000],
     "protocols": ["sql", "cross_cat_noisy"]},
    {"name": "t", "axis": "time", "grid": {"log_from": 1, "log_to": 1000, "points": 4},
     "protocols": ["sql"], "sigma_sys": 0.001, "N_fixed": 40}
  ],
  "oracle": {"budget": 4}
})";

std::string problems_of(const std::string& text) {
    try {
        parse_scenario_text(text);
    } catch (const ScenarioError& e) {
        std::string all;
        for (const auto& p : e.problems()) all += p + "\n";
        return all;
    }
    return {};
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path fresh_dir(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("apvq_test_" + name);
    fs::remove_all(dir);
    return dir;
}

}  // namespace

TEST_CASE("minimal scenario") {
    const auto sc = parse_scenario_text(kMinimal);
    CHECK(sc.chain.isotopes.size() == 2);
    CHECK(sc.chain.sin2_theta_w == 0.2325);
    CHECK(sc.deviation.h == std::vector<double>{1, -1});
    CHECK_FALSE(sc.omega.has_value());
    CHECK(sc.scans.empty());
    CHECK_FALSE(sc.oracle.has_value());
    const auto chain = sc.build_chain();
    CHECK(chain.ref_index() == 0);
    CHECK_THROWS_AS((void)sc.config(), Error);
}

TEST_CASE("validation names the offending key") {
    auto doc = nlohmann::json::parse(kMinimal);

    SUBCASE("out-of-range sin2") {
        doc["chain"]["sin2_theta_w"] = 0.7;
        CHECK(problems_of(doc.dump()).find("chain.sin2_theta_w") != std::string::npos);
    }
    SUBCASE("unknown keys at any level") {
        doc["colour"] = "blue";
        doc["chain"]["isotopes"][1]["spin"] = 0;
        const auto p = problems_of(doc.dump());
        CHECK(p.find("colour: unknown key") != std::string::npos);
        CHECK(p.find("chain.isotopes[1].spin: unknown key") != std::string::npos);
    }
    SUBCASE("scans need omega and tau") {
        doc["scans"] = nlohmann::json::array(
            {{{"axis", "atom_number"}, {"grid", {4, 8}}, {"protocols", {"sql"}}}});
        const auto p = problems_of(doc.dump());
        CHECK(p.find("protocol.omega") != std::string::npos);
        CHECK(p.find("protocol.tau") != std::string::npos);
    }
    SUBCASE("time scans need sigma_sys and N_fixed") {
        doc["protocol"] = {{"omega", 1}, {"tau", 1}};
        doc["scans"] = nlohmann::json::array(
            {{{"axis", "time"}, {"grid", {1, 10}}, {"protocols", {"sql"}}}});
        const auto p = problems_of(doc.dump());
        CHECK(p.find("scans[0].sigma_sys") != std::string::npos);
        CHECK(p.find("scans[0].N_fixed") != std::string::npos);
    }
    SUBCASE("bad values") {
        doc["protocol"] = {{"F2", 1.5}, {"gate_counts", "star"}, {"T2", "forever"}};
        doc["deviation"]["h"] = {1, 2, 3};
        const auto p = problems_of(doc.dump());
        CHECK(p.find("protocol.F2") != std::string::npos);
        CHECK(p.find("protocol.gate_counts") != std::string::npos);
        CHECK(p.find("protocol.T2") != std::string::npos);
        CHECK(p.find("deviation.h") != std::string::npos);
    }
    SUBCASE("unknown oracle check and oversize budget") {
        doc["protocol"] = {{"omega", 1}, {"tau", 1}};
        doc["oracle"] = {{"budget", 20}, {"checks", {"telepathy"}}};
        const auto p = problems_of(doc.dump());
        CHECK(p.find("oracle.budget") != std::string::npos);
        CHECK(p.find("oracle.checks[0]") != std::string::npos);
    }
    SUBCASE("malformed JSON") {
        CHECK_THROWS_AS(parse_scenario_text("{\"chain\": "), ScenarioError);
    }
}

TEST_CASE("bundled scenario") {
    const auto sc = parse_scenario(fs::path(APVQ_SCENARIO_DIR) / "yb_even_chain.json");
    CHECK(sc.build_chain().ref_index() == 2);
    CHECK(sc.deviation_pattern().h == std::vector<double>{-1, -1, 1, 1});
    REQUIRE(sc.scans.size() == 2);
    CHECK(sc.scans[0].grid.front() == 4);
    CHECK(sc.scans[1].grid.size() == 61);
    CHECK(sc.scans[1].grid.back() == 1512000.0);
    CHECK(std::isinf(sc.protocol.T2));
    CHECK(sc.oracle->budget == 10);
    CHECK(sc.config().F2 == 0.999);
}

TEST_CASE("canonical round trip") {
    const auto sc = parse_scenario(fs::path(APVQ_SCENARIO_DIR) / "yb_even_chain.json");
    const auto text = serialize_scenario(sc);
    const auto again = parse_scenario_text(text);
    CHECK(again == sc);
    CHECK(serialize_scenario(again) == text);
    CHECK(scenario_hash(again) == scenario_hash(sc));
    CHECK(scenario_hash(sc).size() == 16);

    auto changed = sc;
    changed.protocol.F2 = 0.998;
    CHECK(scenario_hash(changed) != scenario_hash(sc));
}

TEST_CASE("format_decimal") {
    CHECK(format_decimal(1.0) == "1.00000000000");
    CHECK(format_decimal(0.005) == "0.00500000000000");
    CHECK(format_decimal(1.0 / 3.0) == "0.333333333333");
    CHECK(format_decimal(2.5e9) == "2500000000.00");
    CHECK(format_decimal(-0.125) == "-0.125000000000");

    // Twelve significant digits, no exponent, value recovered to that precision.
    for (double v : {1.23456789e-7, 0.159154943091895, 1512000.0, 7.0}) {
        const auto s = format_decimal(v);
        CHECK(s.find_first_of("eE") == std::string::npos);
        std::string digits;
        for (char c : s) {
            if (c >= '0' && c <= '9') digits += c;
        }
        digits.erase(0, digits.find_first_not_of('0'));
        CHECK(digits.size() == 12);
        CHECK(std::stod(s) == Approx(v).epsilon(5e-12));
    }
}

TEST_CASE("run writes deterministic outputs") {
    const auto sc = parse_scenario_text(kSmallRun);
    const auto a = fresh_dir("run_a");
    const auto b = fresh_dir("run_b");
    const auto sa = run(sc, a);
    const auto sb = run(sc, b);
    CHECK(sa.exit_status() == 0);
    REQUIRE(sa.scans.size() == 2);
    for (const char* name : {"n.csv", "t.csv"}) {
        REQUIRE(fs::exists(a / name));
        CHECK(read_file(a / name) == read_file(b / name));
    }
    CHECK(fs::exists(a / "run_summary.json"));

    const auto csv = read_file(a / "n.csv");
    CHECK(csv.rfind("axis,protocol,delta_theta_stat,delta_theta_tot\n", 0) == 0);
    CHECK(csv.find('\r') == std::string::npos);
    CHECK(csv.find("2,sql,error,error\n") != std::string::npos);
    CHECK(csv.find("1000,cross_cat_noisy,") != std::string::npos);
    CHECK(csv.find('e', csv.find('\n')) == csv.find("error"));  // no exponents
    CHECK(sa.scans[0].error_rows == 2);

    const auto summary = nlohmann::json::parse(read_file(a / "run_summary.json"));
    CHECK(summary["scenario_hash"] == scenario_hash(sc));
    CHECK(summary["library_version"] == kLibraryVersion);
}

TEST_CASE("validate") {
    const auto sc = parse_scenario_text(kSmallRun);

    SUBCASE("budget 4 runs every check") {
        const auto s = validate(sc);
        CHECK(s.checks.size() == oracle::known_checks().size());
        CHECK(s.all_checks_passed());
        CHECK(s.exit_status() == 0);
    }
    SUBCASE("budget 1 runs the single-qubit checks") {
        const auto s = validate(sc, 1);
        REQUIRE(s.checks.size() == 2);
        for (const auto& c : s.checks) CHECK(oracle::required_budget(c.name) == 1);
        CHECK(s.all_checks_passed());
    }
    SUBCASE("budget above the cap") {
        try {
            validate(sc, 20);
            FAIL("expected CapExceeded");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::CapExceeded);
        }
    }
    SUBCASE("a tampered expected value fails") {
        auto tampered = sc;
        tampered.oracle->checks = {{"cross_cat", 1.0}};
        const auto s = validate(tampered);
        REQUIRE(s.checks.size() == 1);
        CHECK_FALSE(s.checks[0].passed);
        CHECK(s.exit_status() != 0);
    }
    SUBCASE("no budget anywhere") {
        auto bare = sc;
        bare.oracle.reset();
        CHECK_THROWS_AS(validate(bare), Error);
    }
}
