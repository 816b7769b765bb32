#include "apvq/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "apvq/error.hpp"
#include "apvq/oracle.hpp"

namespace apvq {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string join_problems(const std::vector<std::string>& problems) {
    std::string out = "invalid scenario";
    for (const auto& p : problems) out += "\n  " + p;
    return out;
}

// Collects problems while walking the document; never throws mid-walk so a
// single parse reports everything it can find.
class Reader {
  public:
    void fail(const std::string& path, const std::string& reason) {
        problems_.push_back(path + ": " + reason);
    }
    [[nodiscard]] const std::vector<std::string>& problems() const { return problems_; }

    bool object(const json& j, const std::string& path) {
        if (!j.is_object()) {
            fail(path, "expected an object");
            return false;
        }
        return true;
    }

    void only_keys(const json& j, const std::string& path, std::initializer_list<const char*> keys) {
        const std::set<std::string> allowed(keys.begin(), keys.end());
        for (const auto& [k, _] : j.items()) {
            if (!allowed.contains(k)) fail(join(path, k), "unknown key");
        }
    }

    static std::string join(const std::string& path, const std::string& key) {
        return path.empty() ? key : path + "." + key;
    }

    static std::string index(const std::string& path, std::size_t i) {
        return path + "[" + std::to_string(i) + "]";
    }

    // Numbers; "inf" is accepted where `allow_inf` is set.
    std::optional<double> number(const json& j, const std::string& path, bool allow_inf = false) {
        if (j.is_number()) return j.get<double>();
        if (allow_inf && j.is_string() && j.get<std::string>() == "inf") return kInf;
        fail(path, allow_inf ? "expected a number or \"inf\"" : "expected a number");
        return std::nullopt;
    }

    std::optional<std::int64_t> integer(const json& j, const std::string& path) {
        if (j.is_number_integer()) return j.get<std::int64_t>();
        if (j.is_number_float()) {
            const double v = j.get<double>();
            if (std::floor(v) == v && std::abs(v) < 9e15) return static_cast<std::int64_t>(v);
        }
        fail(path, "expected an integer");
        return std::nullopt;
    }

    std::optional<std::string> string(const json& j, const std::string& path) {
        if (j.is_string()) return j.get<std::string>();
        fail(path, "expected a string");
        return std::nullopt;
    }

  private:
    std::vector<std::string> problems_;
};

std::optional<GateCountModel> gate_model_from(const std::string& s) {
    if (s == "linear") return GateCountModel::Linear;
    if (s == "log_depth") return GateCountModel::LogDepth;
    return std::nullopt;
}

const char* to_string(GateCountModel m) {
    return m == GateCountModel::Linear ? "linear" : "log_depth";
}

std::optional<DfsAccounting> accounting_from(const std::string& s) {
    if (s == "per_channel") return DfsAccounting::PerChannel;
    if (s == "split_budget") return DfsAccounting::SplitBudget;
    return std::nullopt;
}

const char* to_string(DfsAccounting a) {
    return a == DfsAccounting::PerChannel ? "per_channel" : "split_budget";
}

const char* to_string(ScanAxis a) { return a == ScanAxis::AtomNumber ? "atom_number" : "time"; }

bool valid_scan_name(const std::string& name) {
    return !name.empty() && std::all_of(name.begin(), name.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
    });
}

void read_chain(Reader& r, const json& j, ChainBlock& out) {
    const std::string path = "chain";
    if (!r.object(j, path)) return;
    r.only_keys(j, path, {"isotopes", "ref_A", "sin2_theta_w"});

    if (!j.contains("isotopes")) {
        r.fail(Reader::join(path, "isotopes"), "missing required key");
    } else if (!j["isotopes"].is_array()) {
        r.fail(Reader::join(path, "isotopes"), "expected an array");
    } else {
        const auto& arr = j["isotopes"];
        if (arr.size() < 2) r.fail(Reader::join(path, "isotopes"), "need at least two isotopes");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const auto ipath = Reader::index(Reader::join(path, "isotopes"), i);
            const auto& e = arr[i];
            if (!r.object(e, ipath)) continue;
            r.only_keys(e, ipath, {"A", "Z", "atoms", "epsilon"});
            Isotope iso;
            bool ok = true;
            for (const char* key : {"A", "Z"}) {
                if (!e.contains(key)) {
                    r.fail(Reader::join(ipath, key), "missing required key");
                    ok = false;
                }
            }
            if (!ok) continue;
            if (auto a = r.integer(e["A"], Reader::join(ipath, "A"))) iso.mass_number = int(*a);
            if (auto z = r.integer(e["Z"], Reader::join(ipath, "Z"))) iso.protons = int(*z);
            if (e.contains("atoms")) {
                if (auto n = r.integer(e["atoms"], Reader::join(ipath, "atoms"))) iso.atoms = *n;
            }
            if (e.contains("epsilon")) {
                if (auto v = r.number(e["epsilon"], Reader::join(ipath, "epsilon"))) iso.epsilon = *v;
            }
            if (iso.mass_number < 1) r.fail(Reader::join(ipath, "A"), "must be >= 1");
            if (iso.protons < 1 || iso.protons > iso.mass_number) {
                r.fail(Reader::join(ipath, "Z"), "must satisfy 1 <= Z <= A");
            }
            if (iso.atoms < 0) r.fail(Reader::join(ipath, "atoms"), "must be >= 0");
            out.isotopes.push_back(iso);
        }
    }

    if (!j.contains("ref_A")) {
        r.fail(Reader::join(path, "ref_A"), "missing required key");
    } else if (auto a = r.integer(j["ref_A"], Reader::join(path, "ref_A"))) {
        out.ref_mass_number = int(*a);
        const auto hits = std::count_if(out.isotopes.begin(), out.isotopes.end(),
                                        [&](const Isotope& i) { return i.mass_number == *a; });
        if (hits != 1) {
            r.fail(Reader::join(path, "ref_A"), "must name exactly one isotope of the chain");
        }
    }

    if (j.contains("sin2_theta_w")) {
        if (auto v = r.number(j["sin2_theta_w"], Reader::join(path, "sin2_theta_w"))) {
            out.sin2_theta_w = *v;
            if (!(*v > 0.0 && *v < 0.5)) {
                r.fail(Reader::join(path, "sin2_theta_w"), "must lie in (0, 0.5)");
            }
        }
    }
}

void read_deviation(Reader& r, const json& j, DeviationBlock& out, std::size_t chain_len) {
    const std::string path = "deviation";
    if (!r.object(j, path)) return;
    r.only_keys(j, path, {"h", "preset"});
    const bool has_h = j.contains("h");
    const bool has_preset = j.contains("preset");
    if (has_h == has_preset) {
        r.fail(path, "give exactly one of 'h' or 'preset'");
        return;
    }
    if (has_preset) {
        if (auto s = r.string(j["preset"], Reader::join(path, "preset"))) {
            if (*s != "sign_split") {
                r.fail(Reader::join(path, "preset"), "unknown preset '" + *s + "'");
            }
            out.preset = *s;
        }
        return;
    }
    const auto& arr = j["h"];
    if (!arr.is_array()) {
        r.fail(Reader::join(path, "h"), "expected an array");
        return;
    }
    for (std::size_t i = 0; i < arr.size(); ++i) {
        if (auto v = r.number(arr[i], Reader::index(Reader::join(path, "h"), i))) out.h.push_back(*v);
    }
    if (chain_len > 0 && arr.size() != chain_len) {
        r.fail(Reader::join(path, "h"), "length " + std::to_string(arr.size()) +
                                            " does not match the chain length " +
                                            std::to_string(chain_len));
    }
    if (std::all_of(out.h.begin(), out.h.end(), [](double v) { return v == 0.0; })) {
        r.fail(Reader::join(path, "h"), "pattern is identically zero");
    }
}

void read_protocol(Reader& r, const json& j, Scenario& out) {
    const std::string path = "protocol";
    if (!r.object(j, path)) return;
    r.only_keys(j, path,
                {"omega", "tau", "C0", "F1", "F2", "p_surv", "T2", "T2_local", "T2_diff", "G_dB",
                 "rep_rate", "T_avg", "C_sql", "gate_counts", "dfs_accounting"});
    auto& cfg = out.protocol;
    auto key = [&](const char* k) { return Reader::join(path, k); };

    if (j.contains("omega")) {
        out.omega = r.number(j["omega"], key("omega"));
        if (out.omega && !(std::isfinite(*out.omega) && *out.omega != 0.0)) {
            r.fail(key("omega"), "must be finite and nonzero");
        }
    }
    if (j.contains("tau")) {
        out.tau = r.number(j["tau"], key("tau"));
        if (out.tau && !(std::isfinite(*out.tau) && *out.tau > 0.0)) r.fail(key("tau"), "must be > 0");
    }
    struct UnitField {
        const char* name;
        double* slot;
    };
    for (auto [name, slot] : {UnitField{"C0", &cfg.C0}, UnitField{"F1", &cfg.F1},
                              UnitField{"F2", &cfg.F2}, UnitField{"p_surv", &cfg.p_surv},
                              UnitField{"C_sql", &cfg.C_sql}}) {
        if (!j.contains(name)) continue;
        if (auto v = r.number(j[name], key(name))) {
            *slot = *v;
            if (!(*v > 0.0 && *v <= 1.0)) r.fail(key(name), "must lie in (0, 1]");
        }
    }
    for (auto [name, slot] : {UnitField{"T2", &cfg.T2}, UnitField{"T2_local", &cfg.T2_local},
                              UnitField{"T2_diff", &cfg.T2_diff}}) {
        if (!j.contains(name)) continue;
        if (auto v = r.number(j[name], key(name), true)) {
            *slot = *v;
            if (!(*v > 0.0)) r.fail(key(name), "must be > 0");
        }
    }
    if (j.contains("G_dB")) {
        if (auto v = r.number(j["G_dB"], key("G_dB"))) cfg.G_dB = *v;
    }
    if (j.contains("rep_rate")) {
        if (auto v = r.number(j["rep_rate"], key("rep_rate"))) {
            cfg.rep_rate = *v;
            if (!(*v > 0.0 && std::isfinite(*v))) r.fail(key("rep_rate"), "must be > 0");
        }
    }
    if (j.contains("T_avg")) {
        if (auto v = r.number(j["T_avg"], key("T_avg"))) {
            cfg.T_avg = *v;
            if (!(*v > 0.0 && std::isfinite(*v))) r.fail(key("T_avg"), "must be > 0");
        }
    }
    if (j.contains("gate_counts")) {
        if (auto s = r.string(j["gate_counts"], key("gate_counts"))) {
            if (auto m = gate_model_from(*s)) {
                cfg.gate_counts = *m;
            } else {
                r.fail(key("gate_counts"), "expected \"linear\" or \"log_depth\"");
            }
        }
    }
    if (j.contains("dfs_accounting")) {
        if (auto s = r.string(j["dfs_accounting"], key("dfs_accounting"))) {
            if (auto a = accounting_from(*s)) {
                cfg.dfs_accounting = *a;
            } else {
                r.fail(key("dfs_accounting"), "expected \"per_channel\" or \"split_budget\"");
            }
        }
    }
}

std::vector<double> read_grid(Reader& r, const json& j, const std::string& path, ScanAxis axis) {
    std::vector<double> grid;
    if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (auto v = r.number(j[i], Reader::index(path, i))) grid.push_back(*v);
        }
    } else if (j.is_object()) {
        r.only_keys(j, path, {"log_from", "log_to", "points"});
        bool complete = true;
        for (const char* k : {"log_from", "log_to", "points"}) {
            if (!j.contains(k)) {
                r.fail(Reader::join(path, k), "missing required key");
                complete = false;
            }
        }
        if (!complete) return grid;
        auto lo = r.number(j["log_from"], Reader::join(path, "log_from"));
        auto hi = r.number(j["log_to"], Reader::join(path, "log_to"));
        auto n = r.integer(j["points"], Reader::join(path, "points"));
        if (!lo || !hi || !n) return grid;
        if (!(*lo > 0.0 && *hi > *lo) || *n < 2) {
            r.fail(path, "log grid needs 0 < log_from < log_to and points >= 2");
            return grid;
        }
        grid = log_grid(*lo, *hi, static_cast<std::size_t>(*n));
        if (axis == ScanAxis::AtomNumber) {
            for (auto& v : grid) v = std::round(v);
            grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
        }
    } else {
        r.fail(path, "expected an array or a log-grid object");
    }
    return grid;
}

void read_scan(Reader& r, const json& j, const std::string& path, std::size_t index,
               std::size_t chain_len, ScanSpec& out) {
    if (!r.object(j, path)) return;
    r.only_keys(j, path,
                {"name", "axis", "grid", "allocation", "protocols", "sigma_sys", "N_fixed"});
    auto key = [&](const char* k) { return Reader::join(path, k); };

    out.name = "scan" + std::to_string(index);
    if (j.contains("name")) {
        if (auto s = r.string(j["name"], key("name"))) {
            out.name = *s;
            if (!valid_scan_name(*s)) r.fail(key("name"), "use letters, digits, '_' or '-'");
        }
    }

    if (!j.contains("axis")) {
        r.fail(key("axis"), "missing required key");
        return;
    }
    if (auto s = r.string(j["axis"], key("axis"))) {
        if (*s == "atom_number") {
            out.axis = ScanAxis::AtomNumber;
        } else if (*s == "time") {
            out.axis = ScanAxis::Time;
        } else {
            r.fail(key("axis"), "expected \"atom_number\" or \"time\"");
            return;
        }
    }

    if (j.contains("grid")) {
        out.grid = read_grid(r, j["grid"], key("grid"), out.axis);
    } else if (out.axis == ScanAxis::Time) {
        out.grid = default_time_grid();
    } else {
        r.fail(key("grid"), "missing required key");
    }
    for (std::size_t i = 0; i < out.grid.size(); ++i) {
        if (!(out.grid[i] > 0.0)) r.fail(Reader::index(key("grid"), i), "must be > 0");
        if (i > 0 && !(out.grid[i] > out.grid[i - 1])) {
            r.fail(Reader::index(key("grid"), i), "grid must be strictly increasing");
        }
        if (out.axis == ScanAxis::AtomNumber && out.grid[i] != std::floor(out.grid[i])) {
            r.fail(Reader::index(key("grid"), i), "atom numbers must be integers");
        }
    }

    if (j.contains("allocation")) {
        const auto& a = j["allocation"];
        if (a.is_string() && a.get<std::string>() == "equal") {
            out.allocation = AllocationRule{};
        } else if (a.is_object()) {
            r.only_keys(a, key("allocation"), {"weights"});
            if (!a.contains("weights") || !a["weights"].is_array()) {
                r.fail(Reader::join(key("allocation"), "weights"), "expected an array");
            } else {
                out.allocation.kind = AllocationRule::Kind::Weighted;
                const auto& w = a["weights"];
                for (std::size_t i = 0; i < w.size(); ++i) {
                    const auto wpath = Reader::index(Reader::join(key("allocation"), "weights"), i);
                    if (auto v = r.number(w[i], wpath)) {
                        out.allocation.weights.push_back(*v);
                        if (!(*v >= 0.0)) r.fail(wpath, "must be >= 0");
                    }
                }
                if (chain_len > 0 && w.size() != chain_len) {
                    r.fail(Reader::join(key("allocation"), "weights"),
                           "length does not match the chain");
                }
            }
        } else {
            r.fail(key("allocation"), "expected \"equal\" or {\"weights\": [...]}");
        }
    }

    if (!j.contains("protocols")) {
        out.protocols = standard_protocols();
    } else if (!j["protocols"].is_array() || j["protocols"].empty()) {
        r.fail(key("protocols"), "expected a nonempty array");
    } else {
        const auto& arr = j["protocols"];
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const auto ppath = Reader::index(key("protocols"), i);
            if (auto s = r.string(arr[i], ppath)) {
                if (auto p = protocol_from_string(*s)) {
                    if (std::find(out.protocols.begin(), out.protocols.end(), *p) !=
                        out.protocols.end()) {
                        r.fail(ppath, "duplicate protocol");
                    }
                    out.protocols.push_back(*p);
                } else {
                    r.fail(ppath, "unknown protocol '" + *s + "'");
                }
            }
        }
    }

    if (j.contains("sigma_sys")) {
        if (auto v = r.number(j["sigma_sys"], key("sigma_sys"))) {
            out.sigma_sys = *v;
            if (!(*v >= 0.0 && std::isfinite(*v))) r.fail(key("sigma_sys"), "must be >= 0");
        }
    } else if (out.axis == ScanAxis::Time) {
        r.fail(key("sigma_sys"), "required for time scans");
    }

    if (j.contains("N_fixed")) {
        if (auto n = r.integer(j["N_fixed"], key("N_fixed"))) {
            out.n_fixed = *n;
            if (*n < 1) r.fail(key("N_fixed"), "must be >= 1");
        }
    } else if (out.axis == ScanAxis::Time) {
        r.fail(key("N_fixed"), "required for time scans");
    }
}

void read_oracle(Reader& r, const json& j, OracleBlock& out) {
    const std::string path = "oracle";
    if (!r.object(j, path)) return;
    r.only_keys(j, path, {"budget", "checks"});
    if (j.contains("budget")) {
        if (auto b = r.integer(j["budget"], Reader::join(path, "budget"))) {
            if (*b < 1) {
                r.fail(Reader::join(path, "budget"), "must be >= 1");
            } else if (static_cast<std::size_t>(*b) > oracle::kDefaultQubitCap) {
                r.fail(Reader::join(path, "budget"),
                       "exceeds the qubit cap of " + std::to_string(oracle::kDefaultQubitCap));
            } else {
                out.budget = static_cast<std::size_t>(*b);
            }
        }
    }
    if (!j.contains("checks")) return;
    const auto cpath = Reader::join(path, "checks");
    if (!j["checks"].is_array()) {
        r.fail(cpath, "expected an array");
        return;
    }
    const auto& known = oracle::known_checks();
    for (std::size_t i = 0; i < j["checks"].size(); ++i) {
        const auto& e = j["checks"][i];
        const auto epath = Reader::index(cpath, i);
        oracle::CheckRequest req;
        if (e.is_string()) {
            req.name = e.get<std::string>();
        } else if (r.object(e, epath)) {
            r.only_keys(e, epath, {"name", "expected"});
            if (!e.contains("name")) {
                r.fail(Reader::join(epath, "name"), "missing required key");
                continue;
            }
            if (auto s = r.string(e["name"], Reader::join(epath, "name"))) req.name = *s;
            if (e.contains("expected")) {
                req.expected = r.number(e["expected"], Reader::join(epath, "expected"));
            }
        } else {
            continue;
        }
        if (std::find(known.begin(), known.end(), req.name) == known.end()) {
            r.fail(epath, "unknown oracle check '" + req.name + "'");
            continue;
        }
        out.checks.push_back(std::move(req));
    }
}

json number_or_inf(double v) { return std::isinf(v) ? json("inf") : json(v); }

}  // namespace

ScenarioError::ScenarioError(std::vector<std::string> problems)
    : std::runtime_error(join_problems(problems)), problems_(std::move(problems)) {}

IsotopeChain Scenario::build_chain() const {
    std::size_t ref = 0;
    for (std::size_t i = 0; i < chain.isotopes.size(); ++i) {
        if (chain.isotopes[i].mass_number == chain.ref_mass_number) ref = i;
    }
    return IsotopeChain::build(chain.isotopes, ref, chain.sin2_theta_w);
}

DeviationPattern Scenario::deviation_pattern() const {
    if (deviation.preset) return DeviationPattern::sign_split(chain.isotopes.size());
    return DeviationPattern{deviation.h};
}

ProtocolConfig Scenario::config() const {
    if (!omega || !tau) {
        throw Error(ErrorKind::InvalidArgument, "protocol.omega and protocol.tau must be given");
    }
    ProtocolConfig cfg = protocol;
    cfg.omega = *omega;
    cfg.tau = *tau;
    return cfg;
}

Scenario parse_scenario_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ScenarioError({std::string("<document>: ") + e.what()});
    }
    Reader r;
    Scenario sc;
    if (!r.object(doc, "<document>")) throw ScenarioError(r.problems());
    r.only_keys(doc, "", {"chain", "deviation", "protocol", "scans", "oracle"});

    if (doc.contains("chain")) {
        read_chain(r, doc["chain"], sc.chain);
    } else {
        r.fail("chain", "missing required key");
    }
    if (doc.contains("deviation")) {
        read_deviation(r, doc["deviation"], sc.deviation, sc.chain.isotopes.size());
    } else {
        r.fail("deviation", "missing required key");
    }
    if (doc.contains("protocol")) read_protocol(r, doc["protocol"], sc);

    if (doc.contains("scans")) {
        if (!doc["scans"].is_array()) {
            r.fail("scans", "expected an array");
        } else {
            std::set<std::string> names;
            for (std::size_t i = 0; i < doc["scans"].size(); ++i) {
                ScanSpec spec;
                const auto path = Reader::index("scans", i);
                read_scan(r, doc["scans"][i], path, i, sc.chain.isotopes.size(), spec);
                if (!names.insert(spec.name).second) {
                    r.fail(Reader::join(path, "name"), "duplicate scan name '" + spec.name + "'");
                }
                sc.scans.push_back(std::move(spec));
            }
        }
    }
    if (doc.contains("oracle")) {
        OracleBlock ob;
        read_oracle(r, doc["oracle"], ob);
        sc.oracle = std::move(ob);
    }

    if (!sc.scans.empty() || sc.oracle) {
        if (!sc.omega) r.fail("protocol.omega", "required when scans or oracle checks are present");
        if (!sc.tau) r.fail("protocol.tau", "required when scans or oracle checks are present");
    }

    if (r.problems().empty()) {
        // Cross-field invariants that need the assembled objects.
        try {
            const auto chain = sc.build_chain();
            const auto cfg = sc.omega && sc.tau ? std::optional(sc.config()) : std::nullopt;
            if (cfg) cfg->validate();
            if (sc.chain.isotopes.size() != sc.deviation_pattern().h.size()) {
                r.fail("deviation", "length does not match the chain");
            }
            (void)chain;
        } catch (const Error& e) {
            r.fail("chain/protocol", e.what());
        }
    }
    if (!r.problems().empty()) throw ScenarioError(r.problems());
    return sc;
}

Scenario parse_scenario(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ScenarioError({path.string() + ": cannot open scenario file"});
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_text(buf.str());
}

std::string serialize_scenario(const Scenario& sc) {
    json doc;
    json isotopes = json::array();
    for (const auto& iso : sc.chain.isotopes) {
        isotopes.push_back(
            {{"A", iso.mass_number}, {"Z", iso.protons}, {"atoms", iso.atoms}, {"epsilon", iso.epsilon}});
    }
    doc["chain"] = {{"isotopes", isotopes},
                    {"ref_A", sc.chain.ref_mass_number},
                    {"sin2_theta_w", sc.chain.sin2_theta_w}};

    if (sc.deviation.preset) {
        doc["deviation"] = {{"preset", *sc.deviation.preset}};
    } else {
        doc["deviation"] = {{"h", sc.deviation.h}};
    }

    const auto& p = sc.protocol;
    json proto = {{"C0", p.C0},
                  {"F1", p.F1},
                  {"F2", p.F2},
                  {"p_surv", p.p_surv},
                  {"T2", number_or_inf(p.T2)},
                  {"T2_local", number_or_inf(p.T2_local)},
                  {"T2_diff", number_or_inf(p.T2_diff)},
                  {"G_dB", p.G_dB},
                  {"T_avg", p.T_avg},
                  {"C_sql", p.C_sql},
                  {"gate_counts", to_string(p.gate_counts)},
                  {"dfs_accounting", to_string(p.dfs_accounting)}};
    if (sc.omega) proto["omega"] = *sc.omega;
    if (sc.tau) proto["tau"] = *sc.tau;
    if (p.rep_rate) proto["rep_rate"] = *p.rep_rate;
    doc["protocol"] = proto;

    if (!sc.scans.empty()) {
        json scans = json::array();
        for (const auto& s : sc.scans) {
            json protocols = json::array();
            for (auto pr : s.protocols) protocols.push_back(std::string(to_string(pr)));
            json alloc = s.allocation.kind == AllocationRule::Kind::Equal
                             ? json("equal")
                             : json{{"weights", s.allocation.weights}};
            json entry = {{"name", s.name},
                          {"axis", to_string(s.axis)},
                          {"grid", s.grid},
                          {"allocation", alloc},
                          {"protocols", protocols},
                          {"sigma_sys", s.sigma_sys},
                          {"N_fixed", s.n_fixed}};
            scans.push_back(entry);
        }
        doc["scans"] = scans;
    }

    if (sc.oracle) {
        json checks = json::array();
        for (const auto& c : sc.oracle->checks) {
            json e = {{"name", c.name}};
            if (c.expected) e["expected"] = *c.expected;
            checks.push_back(e);
        }
        doc["oracle"] = {{"budget", sc.oracle->budget}, {"checks", checks}};
    }
    return doc.dump(2) + "\n";
}

std::string scenario_hash(const Scenario& scenario) {
    const auto text = serialize_scenario(scenario);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace apvq
