// symcap command line front end.
//
// Exit codes: 0 all Confirmed/PASS, 1 Refuted/FAIL (witness printed),
// 2 BoundaryAmbiguous or hypothesis violated, 3 usage or parse error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "symcap/capacities.hpp"
#include "symcap/constructions.hpp"
#include "symcap/curves.hpp"
#include "symcap/json_io.hpp"
#include "symcap/reeb.hpp"
#include "symcap/suite.hpp"

using namespace symcap;

namespace {

enum Exit { kOk = 0, kRefuted = 1, kBoundary = 2, kUsage = 3 };

struct Globals {
    std::string format = "tsv";
    std::uint64_t seed = 20240601;
};

bool json_out(const Globals& g) { return g.format == "json"; }

/// Accepts a path or inline JSON (anything starting with '{' or '[').
Json load(const std::string& arg) {
    const auto first = arg.find_first_not_of(" \t\n");
    if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) {
        try {
            return Json::parse(arg);
        } catch (const Json::parse_error& e) {
            throw Error(ErrorCode::Parse, std::string("inline JSON: ") + e.what());
        }
    }
    return read_json_file(arg);
}

Domain load_domain(const std::string& arg) { return domain_from_json(load(arg), arg); }

int worse(int a, int b) {
    // Refuted outranks Boundary, which outranks OK
    auto rank = [](int c) { return c == kRefuted ? 2 : c == kBoundary ? 1 : 0; };
    return rank(a) >= rank(b) ? a : b;
}

int verdict_code(Verdict v) {
    switch (v) {
    case Verdict::Confirmed: return kOk;
    case Verdict::Refuted: return kRefuted;
    case Verdict::BoundaryAmbiguous: return kBoundary;
    }
    return kUsage;
}

SmoothingPolicy policy_from(const std::string& eps, const std::string& del) {
    if (eps.empty() && del.empty()) return SmoothingPolicy::infinitesimal();
    if (eps.empty() || del.empty()) throw Error(ErrorCode::InvalidArgument, "--epsilon and --delta go together");
    return SmoothingPolicy::explicit_slope(Rat::parse(eps), Rat::parse(del));
}

// ---------------------------------------------------------------- orbits

int run_orbits(const Globals& g, const std::string& file, const std::string& bound, const std::string& eps,
               const std::string& del) {
    const Domain d = load_domain(file);
    const auto pol = policy_from(eps, del);
    const auto list = enumerate_orbits(d, Rat::parse(bound), pol);
    if (json_out(g)) {
        Json a = Json::array();
        for (const auto& e : list)
            a.push_back({{"orbit", label(e.orbit)},
                         {"action", to_json(e.action)},
                         {"cz", e.cz ? to_json(e.cz->value) : Json(nullptr)},
                         {"floor_boundary", e.cz ? e.cz->floor_boundary : false},
                         {"at_bound", e.at_bound}});
        std::cout << a.dump(2) << "\n";
    } else {
        for (const auto& e : list)
            std::cout << label(e.orbit) << "\t" << e.action << "\t" << (e.cz ? e.cz->value.str() : "-") << "\n";
    }
    return kOk;
}

int run_cz(const Globals& g, const std::string& file, const std::string& orbit, const std::string& eps,
           const std::string& del) {
    const Domain d = load_domain(file);
    const auto o = parse_orbit_label(orbit);
    const auto c = cz_index(o, d, policy_from(eps, del));
    if (json_out(g))
        std::cout << Json{{"orbit", label(o)}, {"cz", to_json(c.value)}, {"floor_boundary", c.floor_boundary}}.dump(2) << "\n";
    else
        std::cout << label(o) << "\t" << c.value << (c.floor_boundary ? "\tfloor-boundary" : "") << "\n";
    return c.floor_boundary ? kBoundary : kOk;
}

// ---------------------------------------------------------------- curves

struct CurvesArgs {
    std::string domain, R, area_min = "0", area_max, index_min, constrained;
    int degree = 1;
};

int run_curves(const Globals& g, const CurvesArgs& a) {
    const Domain d = load_domain(a.domain);
    const Rat R = Rat::parse(a.R);
    EnumerationQuery q;
    q.degree = a.degree;
    q.area_min = Rat::parse(a.area_min);
    if (!a.area_max.empty()) q.area_max = Rat::parse(a.area_max);
    if (!a.index_min.empty()) q.index_min = Rat::parse(a.index_min);
    if (!a.constrained.empty()) q.constrained_end = parse_orbit_label(a.constrained);
    const auto curves = enumerate_cap_curves(d, R, q);
    auto index_str = [&](const CurveClass& c) {
        try {
            return virtual_index(c).str();
        } catch (const Error&) {
            return std::string("-");
        }
    };
    if (json_out(g)) {
        Json arr = Json::array();
        for (const auto& c : curves) {
            Json ends = Json::array();
            for (const auto& o : c.negative_ends) ends.push_back(label(o));
            arr.push_back({{"degree", c.degree}, {"negative_ends", ends}, {"area", to_json(curve_area(c))}, {"index", index_str(c)}});
        }
        std::cout << arr.dump(2) << "\n";
    } else {
        for (const auto& c : curves) {
            std::string ends;
            for (const auto& o : c.negative_ends) ends += (ends.empty() ? "" : ",") + label(o);
            std::cout << c.degree << "\t" << (ends.empty() ? "-" : ends) << "\t" << curve_area(c) << "\t" << index_str(c) << "\n";
        }
    }
    return kOk;
}

// -------------------------------------------------------------- capacity

int run_capacity(const Globals& g, const std::string& file, int k) {
    const Domain d = load_domain(file);
    std::vector<std::pair<int, Rat>> rows;
    if (const auto* e = std::get_if<Ellipsoid>(&d)) {
        for (int i = 1; i <= k; ++i) rows.emplace_back(i, eh_capacity_ellipsoid(*e, i));
    } else if (const auto* b = std::get_if<BallProduct>(&d)) {
        if (k < 2) throw Error(ErrorCode::InvalidArgument, "only the second capacity of a ball product is computed");
        rows.emplace_back(2, eh2_ball_product(*b));
    } else {
        throw Error(ErrorCode::UnsupportedPair, "capacities are computed for ellipsoids and ball products only");
    }
    if (json_out(g)) {
        Json a = Json::array();
        for (auto& [i, v] : rows) a.push_back({{"k", i}, {"value", to_json(v)}});
        std::cout << a.dump(2) << "\n";
    } else {
        for (auto& [i, v] : rows) std::cout << i << "\t" << v << "\n";
    }
    return kOk;
}

// ----------------------------------------------------------------- embed

int run_obstruct(const std::string& src, const std::string& tgt) {
    const auto obs = obstruct_embedding(load_domain(src), load_domain(tgt));
    Json a = Json::array();
    for (const auto& o : obs)
        a.push_back({{"kind", std::string(to_string(o.kind))},
                     {"k", o.k},
                     {"source", to_json(o.source)},
                     {"target", o.target.str()},
                     {"verdict", std::string(to_string(o.verdict))}});
    std::cout << a.dump(2) << "\n";
    switch (overall(obs)) {
    case Obstruction::Outcome::Obstructed: return kRefuted;
    case Obstruction::Outcome::Boundary: return kBoundary;
    default: return kOk;
    }
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

int run_derive(const std::string& src, const std::string& tgt, int depth, const std::string& no_axiom) {
    DeriveOptions o;
    o.depth = depth;
    o.disabled_axioms = split_list(no_axiom);
    const auto c = derive_embedding(load_domain(src), load_domain(tgt), o);
    if (!c) {
        std::cout << "null\n";
        std::cerr << "no derivation found within depth " << depth << " (this is not an impossibility proof)\n";
        return kRefuted;
    }
    std::cout << to_json(*c).dump(2) << "\n";
    return kOk;
}

int run_verify_cert(const std::string& file) {
    const auto c = certificate_from_json(load(file));
    const auto v = verify_certificate(c);
    if (!v.ok) {
        std::cout << "FAIL\t" << v.message << "\n";
        return kRefuted;
    }
    std::cout << "OK\t" << c.steps.size() << " steps\tslack " << c.slack << (c.interior ? "\tinterior" : "")
              << (c.axioms_used.empty() ? "" : "\taxioms") << "\n";
    return kOk;
}

// ---------------------------------------------------------- verify lemma

/// Expands {"grid": {key: [values]}} into the Cartesian product of rows;
/// a single object is one row and an array is a list of rows.
std::vector<Json> param_rows(const Json& j) {
    if (j.is_array()) return {j.begin(), j.end()};
    if (!j.is_object()) throw Error(ErrorCode::Parse, "params: expected an object, an array, or {\"grid\": ...}");
    if (!j.contains("grid")) return {j};
    const Json& grid = j.at("grid");
    if (!grid.is_object()) throw Error(ErrorCode::Parse, "params.grid: expected an object");
    std::vector<Json> rows{Json::object()};
    for (auto it = grid.begin(); it != grid.end(); ++it) {
        if (!it.value().is_array()) throw Error(ErrorCode::Parse, "params.grid." + it.key() + ": expected an array");
        std::vector<Json> next;
        for (const auto& r : rows)
            for (const auto& v : it.value()) {
                Json row = r;
                row[it.key()] = v;
                next.push_back(row);
            }
        rows = std::move(next);
    }
    return rows;
}

Json report_json(const CaseReport& r) {
    Json witnesses = Json::array();
    for (const auto& c : r.witnesses) witnesses.push_back(describe(c));
    Json enumerated = Json::array();
    for (const auto& c : r.enumerated) enumerated.push_back(describe(c));
    Json params = Json::object();
    for (const auto& [k, v] : r.parameters) params[k] = v;
    return {{"claim", r.claim},
            {"parameters", params},
            {"verdict", std::string(to_string(r.verdict))},
            {"enumerated", enumerated},
            {"witnesses", witnesses},
            {"notes", r.notes}};
}

struct RowResult {
    int code;
    Json out;
    std::string line;
};

RowResult lemma_row(const std::string& lemma, const Json& row, const std::string& where) {
    if (lemma == "con1" || lemma == "con2" || lemma == "compactness") {
        const Polylike q(rat_from_json(field(row, "b", where), where + ".b"), rats_from_json(field(row, "tail", where), where + ".tail"));
        const Rat R = rat_from_json(field(row, "R", where), where + ".R");
        const CaseReport r = lemma == "con1" ? check_lemma_con1(q, R) : lemma == "con2" ? check_lemma_con2(q, R) : compactness_exclusions(q, R);
        std::string line = std::string(to_string(r.verdict)) + "\t" + describe(Domain(q)) + " R=" + R.str();
        if (!r.witnesses.empty()) line += "\twitness " + describe(r.witnesses.front());
        return {verdict_code(r.verdict), report_json(r), line};
    }
    if (lemma == "con3") {
        const auto r = check_lemma_con3(int_from_json(field(row, "n", where), where + ".n"),
                                        int_from_json(field(row, "E", where), where + ".E"));
        return {kOk, Json{{"bound", to_json(r.bound)}, {"allowed", r.allowed}},
                "Confirmed\tbound " + r.bound.str() + "\t" + (r.allowed ? "allowed" : "excluded")};
    }
    if (lemma == "polydisk-ends") {
        const int cap = row.contains("mult_cap") ? int_from_json(row.at("mult_cap"), where + ".mult_cap") : 3;
        const auto r = polydisk_end_solver(rat_from_json(field(row, "a", where), where + ".a"),
                                           rat_from_json(field(row, "b", where), where + ".b"),
                                           rat_from_json(field(row, "eps", where), where + ".eps"),
                                           rat_from_json(field(row, "R", where), where + ".R"),
                                           int_from_json(field(row, "n", where), where + ".n"), cap);
        Json sols = Json::array();
        std::string text;
        for (const auto& m : r.solutions) {
            sols.push_back(m);
            std::string s = "(";
            for (std::size_t i = 0; i < m.size(); ++i) s += (i ? "," : "") + std::to_string(m[i]);
            text += (text.empty() ? "" : " ") + s + ")";
        }
        const Verdict v = r.boundary ? Verdict::BoundaryAmbiguous : r.claim_holds ? Verdict::Confirmed : Verdict::Refuted;
        return {verdict_code(v), Json{{"solutions", sols}, {"claim_holds", r.claim_holds}, {"boundary", r.boundary}, {"notes", r.notes}},
                std::string(to_string(v)) + "\t" + (text.empty() ? "no solutions" : text)};
    }
    if (lemma == "ellipsoid-ends") {
        const Ellipsoid e(rats_from_json(field(row, "coeffs", where), where + ".coeffs"));
        const auto r = ellipsoid_end_analysis(e);
        const Verdict v = ellipsoid_end_verdict(r);
        Json allowed = Json::array();
        std::string text;
        for (const auto& a : r.allowed) {
            allowed.push_back({{"end", label(a.end)}, {"index", to_json(a.index)}, {"action", to_json(a.action)}, {"condition", a.condition}});
            text += (text.empty() ? "" : " ") + label(a.end) + ":" + a.index.str();
        }
        return {verdict_code(v),
                Json{{"allowed", allowed},
                     {"multi_end_index_bound", to_json(r.multi_end_index_bound)},
                     {"multi_end_excluded", r.multi_end_excluded},
                     {"max_allowed_action", to_json(r.max_allowed_action)},
                     {"boundary", r.boundary},
                     {"notes", r.notes}},
                std::string(to_string(v)) + "\t" + describe(Domain(r.sorted)) + "\t" + text};
    }
    throw Error(ErrorCode::InvalidArgument, "unknown lemma '" + lemma + "'");
}

int run_verify_lemma(const Globals& g, const std::string& lemma, const std::string& params) {
    const auto rows = param_rows(load(params));
    int code = kOk;
    Json all = Json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::string where = "params[" + std::to_string(i) + "]";
        RowResult r;
        try {
            r = lemma_row(lemma, rows[i], where);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::HypothesisViolated) throw;
            r = {kBoundary, Json{{"error", e.what()}}, std::string("HypothesisViolated\t") + e.what()};
        }
        code = worse(code, r.code);
        all.push_back(r.out);
        if (!json_out(g)) std::cout << i << "\t" << r.line << "\n";
    }
    if (json_out(g)) std::cout << all.dump(2) << "\n";
    return code;
}

// ----------------------------------------------------------------- suite

int run_suite(const Globals& g, const std::string& report, const std::string& no_axiom) {
    SuiteOptions o;
    o.seed = g.seed;
    o.disabled_axioms = split_list(no_axiom);
    const auto rep = paper_suite(o);
    const Json j = to_json(rep);
    if (!report.empty()) {
        std::ofstream out(report);
        if (!out) throw Error(ErrorCode::Parse, "cannot write '" + report + "'");
        out << j.dump(2) << "\n";
    }
    if (json_out(g)) {
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& r : rep.rows)
            std::cout << r.id << "\t" << to_string(r.status) << (r.axiom ? "\tAXIOM" : "\t-") << "\t" << r.anchor << "\t" << r.title
                      << "\n";
    }
    if (rep.count(SuiteStatus::Fail)) return kRefuted;
    if (rep.count(SuiteStatus::Boundary)) return kBoundary;
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact combinatorics of Reeb orbits, finite energy curves and embedding certificates"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"tsv", "json"}));
    app.add_option("--seed", g.seed, "seed for randomized checks");

    std::function<int()> action;

    std::string file, bound, eps, del, orbit;
    auto* orbits = app.add_subcommand("orbits", "list Reeb orbits up to an action bound");
    orbits->add_option("domain", file, "domain JSON (file or inline)")->required();
    orbits->add_option("--action-bound", bound, "action bound p/q")->required();
    orbits->add_option("--epsilon", eps, "explicit smoothing slope");
    orbits->add_option("--delta", del, "explicit smoothing offset");
    orbits->callback([&] { action = [&] { return run_orbits(g, file, bound, eps, del); }; });

    auto* cz = app.add_subcommand("cz", "Conley-Zehnder index of one orbit");
    cz->add_option("domain", file)->required();
    cz->add_option("orbit", orbit, "orbit label, e.g. g^2_{1,1}")->required();
    cz->add_option("--epsilon", eps);
    cz->add_option("--delta", del);
    cz->callback([&] { action = [&] { return run_cz(g, file, orbit, eps, del); }; });

    CurvesArgs ca;
    auto* curves = app.add_subcommand("curves", "finite energy curve classes");
    curves->require_subcommand(1);
    auto* cenum = curves->add_subcommand("enumerate", "enumerate cap curves");
    cenum->add_option("domain", ca.domain)->required();
    cenum->add_option("-R", ca.R, "line area R")->required();
    cenum->add_option("--degree", ca.degree);
    cenum->add_option("--area-min", ca.area_min);
    cenum->add_option("--area-max", ca.area_max);
    cenum->add_option("--index-min", ca.index_min);
    cenum->add_option("--constrained", ca.constrained, "negative end whose orbit is fixed");
    cenum->callback([&] { action = [&] { return run_curves(g, ca); }; });

    int k = 2;
    auto* cap = app.add_subcommand("capacity", "Ekeland-Hofer capacities");
    cap->add_option("domain", file)->required();
    cap->add_option("-k", k, "largest capacity index")->check(CLI::PositiveNumber);
    cap->callback([&] { action = [&] { return run_capacity(g, file, k); }; });

    std::string src, tgt, no_axiom, cert;
    int depth = 6;
    auto* embed = app.add_subcommand("embed", "embedding obstructions and certificates");
    embed->require_subcommand(1);
    auto* check = embed->add_subcommand("check", "capacity obstructions");
    bool obstruct = false;
    check->add_flag("--obstruct", obstruct, "run the capacity comparisons")->required();
    check->add_option("source", src)->required();
    check->add_option("target", tgt)->required();
    check->callback([&] { action = [&] { return run_obstruct(src, tgt); }; });
    auto* derive = embed->add_subcommand("derive", "search for a construction certificate");
    derive->add_option("source", src)->required();
    derive->add_option("target", tgt)->required();
    derive->add_option("--depth", depth)->check(CLI::Range(0, kMaxDeriveDepth));
    derive->add_option("--no-axiom", no_axiom, "comma separated axioms to disable (E14,MS)");
    derive->callback([&] { action = [&] { return run_derive(src, tgt, depth, no_axiom); }; });
    auto* everify = embed->add_subcommand("verify", "replay a certificate");
    everify->add_option("certificate", cert)->required();
    everify->callback([&] { action = [&] { return run_verify_cert(cert); }; });

    std::string lemma, params;
    auto* verify = app.add_subcommand("verify", "machine checks of finite case analyses");
    verify->require_subcommand(1);
    auto* vl = verify->add_subcommand("lemma", "check one lemma over parameter rows");
    vl->add_option("name", lemma)
        ->required()
        ->check(CLI::IsMember({"con1", "con2", "con3", "compactness", "polydisk-ends", "ellipsoid-ends"}));
    vl->add_option("--params", params, "parameter file, inline JSON, or {\"grid\": {...}}")->required();
    vl->callback([&] { action = [&] { return run_verify_lemma(g, lemma, params); }; });

    std::string report;
    auto* suite = app.add_subcommand("suite", "claim suite");
    suite->require_subcommand(1);
    auto* paper = suite->add_subcommand("paper", "run every claim");
    paper->add_option("--report", report, "write the JSON report here");
    paper->add_option("--no-axiom", no_axiom, "comma separated axioms to disable");
    paper->callback([&] { action = [&] { return run_suite(g, report, no_axiom); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }
    try {
        return action ? action() : kUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.code()) {
        case ErrorCode::HypothesisViolated: return kBoundary;
        default: return kUsage;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
}
