#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "symcap/capacities.hpp"
#include "symcap/constructions.hpp"
#include "symcap/curves.hpp"
#include "symcap/domains.hpp"
#include "symcap/json_io.hpp"

namespace symcap {

enum class SuiteStatus { Pass, Fail, Boundary, NotVerified };

inline std::string_view to_string(SuiteStatus s) {
    switch (s) {
    case SuiteStatus::Pass: return "PASS";
    case SuiteStatus::Fail: return "FAIL";
    case SuiteStatus::Boundary: return "BOUNDARY";
    case SuiteStatus::NotVerified: return "NOT-VERIFIED";
    }
    return "?";
}

struct SuiteRow {
    std::string id;
    std::string title;
    std::string anchor; // label of the claim in the source text
    SuiteStatus status = SuiteStatus::Pass;
    bool axiom = false;           // depends on an entry of the axiom database
    bool machine_checked = true;  // false for analytic conclusions
    bool hypotheses_checked = false;
    std::vector<std::string> details;
    std::vector<Certificate> certificates;
};

struct SuiteOptions {
    Polylike q{Rat(5, 2), {Rat(1), Rat(21, 10)}}; // claims (1)-(3)
    Rat b{3, 2};                                  // claims (4), (5), (7)
    std::vector<std::string> disabled_axioms;
    std::uint64_t seed = 20240601;
    int random_pairs = 1000;
    int random_depth = 3;
};

struct SuiteReport {
    std::vector<SuiteRow> rows;
    int count(SuiteStatus s) const {
        int c = 0;
        for (const auto& r : rows) c += r.status == s;
        return c;
    }
};

namespace detail {

inline void fail_if(SuiteRow& r, bool bad, const std::string& why) {
    if (!bad) return;
    r.status = SuiteStatus::Fail;
    r.details.push_back("FAIL: " + why);
}

inline bool certified(SuiteRow& r, const Certificate& c) {
    const auto v = verify_certificate(c);
    r.certificates.push_back(c);
    if (!v.ok) fail_if(r, true, "certificate does not replay: " + v.message);
    else if (!c.interior) fail_if(r, true, "certificate does not reach the open target");
    if (!c.axioms_used.empty()) r.axiom = true;
    return v.ok && c.interior;
}

inline std::optional<Certificate> try_certificate(const Domain& src, const std::vector<Rule>& rules) {
    try {
        return make_certificate(src, rules);
    } catch (const Error&) {
        return std::nullopt;
    }
}

inline SuiteRow claim1(const SuiteOptions& o) {
    const auto& q = o.q;
    SuiteRow r{"1", "polylike domain inside the ball product of capacity a_2 + b", "thm:polylike", {}, false, true, true, {}, {}};
    const auto v = includes(BallProduct(q[2] + q.b, q.dim()), q);
    r.details.push_back(std::string(to_string(v.kind)) + ", " + v.witness);
    fail_if(r, !v.contained(), "not contained");
    return r;
}

inline SuiteRow claim2(const SuiteOptions& o) {
    const auto& q = o.q;
    SuiteRow r{"2", "folding the first two coordinates lands strictly inside B^4(a_2 + b)", "thm:polylike", {}, false, true, true, {}, {}};
    const Rat a2 = q[2];
    const int n = q.dim();
    if (Rat(2) * a2 == q.b) {
        r.status = SuiteStatus::Boundary;
        r.details.push_back("2a_2 = b: the fold window is empty");
        return r;
    }
    if (Rat(2) * a2 > q.b) {
        r.status = SuiteStatus::Fail;
        r.details.push_back("hypothesis 2a_2 < b fails");
        return r;
    }
    const Rat T = a2 + q.b;
    const Rat F0 = 2 * a2 + q.b / 2;
    const Rat eps = (T - F0) / 2;
    r.details.push_back("fold bound 2a_2 + b/2 = " + F0.str() + " < " + T.str() + ", epsilon " + eps.str());
    const auto c = try_certificate(q, {ProductExtend{Fold{eps}, 1, 2}, Inclusion{BallProduct(T, n)}});
    fail_if(r, !c, "fold chain does not apply");
    if (c) certified(r, *c);
    // the target capacity of the fold tends to 2a + b/2 as epsilon -> 0
    bool minimal = true;
    for (Rat e = eps; e > Rat(1, 1000000); e /= 10) {
        const auto out = apply_rule(Fold{e}, Polydisk({q.b, a2}));
        const Rat F = *detail::ball_capacity(out.result);
        minimal = minimal && F - e == F0 && F > F0;
    }
    r.details.push_back("fold infimum " + F0.str());
    fail_if(r, !minimal, "fold capacity does not approach 2a + b/2");
    return r;
}

inline SuiteRow claim3(const SuiteOptions& o) {
    const auto& q = o.q;
    SuiteRow r{"3", "switching z_1 and z_3 lands strictly inside B^4(a_2 + b)", "thm:polylike", {}, false, true, true, {}, {}};
    if (q.dim() < 3) {
        r.status = SuiteStatus::Fail;
        r.details.push_back("needs n >= 3");
        return r;
    }
    const Rat T = q[2] + q.b;
    if (q[3] == T) {
        r.status = SuiteStatus::Boundary;
        r.details.push_back("a_3 = a_2 + b");
        return r;
    }
    if (q[3] > T) {
        r.status = SuiteStatus::Fail;
        r.details.push_back("hypothesis a_3 < a_2 + b fails");
        return r;
    }
    const auto c = try_certificate(q, {ProductExtend{Inclusion{ball(T)}, 3, 2}});
    fail_if(r, !c, "swapped shadow is not inside the ball");
    if (c) {
        certified(r, *c);
        r.details.push_back("shadow E(a_3, a_2) = E(" + q[3].str() + "," + q[2].str() + ") inside B^4(" + T.str() + ")");
    }
    return r;
}

inline SuiteRow claim4(const SuiteOptions& o) {
    const Rat b = o.b;
    SuiteRow r{"4", "Q(b,1,2) inside E(bA/(A-1), A, 2A); that ellipsoid inside the open B^4(b+2) product iff (b+2)/2 < A < b+2",
               "lemma:outer", {}, false, true, true, {}, {}};
    const Polylike q(b, {Rat(1), Rat(2)});
    const Rat lo = (b + 2) / 2, hi = b + 2;
    std::vector<Rat> grid{Rat(11, 10), Rat(5, 4), Rat(3, 2), lo, (lo + hi) / 2, Rat(3), hi, hi + 1, Rat(10)};
    for (Rat A = Rat(17, 10); A < Rat(4); A += Rat(3, 10)) grid.push_back(A);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    for (const auto& A : grid) {
        if (!(A > Rat(1))) continue;
        const Ellipsoid e({b * A / (A - 1), A, 2 * A});
        const auto in = includes(e, q);
        const auto out = includes(BallProduct(b + 2, 3), e);
        const bool window = lo < A && A < hi;
        const bool edge = A == lo || A == hi;
        r.details.push_back("A=" + A.str() + ": Q " + std::string(to_string(in.kind)) + ", E " + std::string(to_string(out.kind)));
        fail_if(r, !in.contained(), "Q not inside E at A=" + A.str());
        fail_if(r, out.inside() != window, "window mismatch at A=" + A.str());
        fail_if(r, edge && out.kind != InclusionVerdict::Kind::Boundary, "endpoint not Boundary at A=" + A.str());
    }
    return r;
}

inline SuiteRow truncated_chain(const std::string& id, const std::string& title, const std::string& anchor, const Rat& A,
                                const Rat& b, const SuiteOptions& o, std::optional<Rat> fixed_tilde = std::nullopt) {
    SuiteRow r{id, title, anchor, {}, false, true, true, {}, {}};
    const TruncatedEllipsoid te(Ellipsoid({A, 2 * A}), 2, Rat(2));
    const Domain target = ball(b + 2);
    if (!(A < (b + 3) / 2)) {
        r.status = A == (b + 3) / 2 ? SuiteStatus::Boundary : SuiteStatus::Fail;
        r.details.push_back("hypothesis A < (b+3)/2 fails at A=" + A.str());
        return r;
    }
    DeriveOptions dopt;
    dopt.disabled_axioms = o.disabled_axioms;
    const auto found = derive_embedding(te, target, dopt);
    if (!found) {
        r.status = SuiteStatus::Fail;
        r.details.push_back("FAIL: no derivation for A=" + A.str());
        return r;
    }
    certified(r, *found);
    if (detail::enabled(dopt, "E14")) {
        const Rat t = fixed_tilde ? *fixed_tilde : ((A - Rat(1, 2)) + (b + 2) / 2) / 2;
        const auto chain = try_certificate(te, {Inclusion{Ellipsoid({t, 4 * t})}, AxiomE14{}, Inclusion{target}});
        fail_if(r, !chain, "explicit chain with tilde A = " + t.str() + " does not apply");
        if (chain) {
            certified(r, *chain);
            r.details.push_back("A=" + A.str() + ", tilde A=" + t.str() + ": binding value (A - 1/2)/tilde A = " +
                                ((A - Rat(1, 2)) / t).str());
        }
    }
    return r;
}

inline SuiteRow claim5(const SuiteOptions& o) {
    SuiteRow r{"5", "E(A,2A) cut at pi|z_2|^2 >= 2 embeds in the open B^4(b+2) for A < (b+3)/2", "lemma:lastlem", {}, false, true, true, {}, {}};
    for (const Rat& A : {Rat(9, 5), Rat(15, 8), Rat(2), Rat(17, 8), Rat(11, 5)}) {
        auto sub = truncated_chain("5", r.title, r.anchor, A, o.b, o);
        for (auto& d : sub.details) r.details.push_back(d);
        for (auto& c : sub.certificates) r.certificates.push_back(c);
        r.axiom = r.axiom || sub.axiom;
        if (sub.status == SuiteStatus::Fail) r.status = SuiteStatus::Fail;
        else if (sub.status == SuiteStatus::Boundary && r.status == SuiteStatus::Pass) r.status = SuiteStatus::Boundary;
    }
    return r;
}

inline std::vector<SuiteRow> claim6(const SuiteOptions& o) {
    SuiteRow r{"6", "E(2,4) into the open B^4(R) obstructed for R < 4, constructed for R > 4", "prop:xtn", {}, false, true, true, {}, {}};
    const Ellipsoid e({Rat(2), Rat(4)});
    DeriveOptions dopt;
    dopt.disabled_axioms = o.disabled_axioms;
    for (const Rat& R : {Rat(3), Rat(7, 2), Rat(39, 10), Rat(399, 100)}) {
        const auto obs = obstruct_embedding(e, ball(R));
        const auto cert = derive_embedding(e, ball(R), dopt);
        r.details.push_back("R=" + R.str() + ": " + std::string(to_string(overall(obs))));
        fail_if(r, overall(obs) != Obstruction::Outcome::Obstructed, "R=" + R.str() + " not obstructed");
        fail_if(r, cert.has_value(), "certificate found below the obstruction at R=" + R.str());
    }
    for (const Rat& R : {Rat(41, 10), Rat(9, 2), Rat(5)}) {
        const auto cert = derive_embedding(e, ball(R), dopt);
        fail_if(r, !cert, "no construction at R=" + R.str());
        if (cert) {
            certified(r, *cert);
            fail_if(r, !cert->axioms_used.empty(), "construction at R=" + R.str() + " should need no axiom");
            r.details.push_back("R=" + R.str() + ": " + std::to_string(cert->steps.size()) + "-step certificate");
        }
    }

    SuiteRow edge{"6-boundary", "E(2,4) into the open B^4(4)", "prop:xtn", {}, true, true, true, {}, {}};
    const auto obs = obstruct_embedding(e, ball(4));
    edge.details.push_back("capacity comparison: " + std::string(to_string(overall(obs))));
    fail_if(edge, overall(obs) == Obstruction::Outcome::Obstructed, "obstructed at R=4");
    const auto cert = derive_embedding(e, ball(4), dopt);
    fail_if(edge, !cert, "no derivation at R=4");
    if (cert) {
        certified(edge, *cert);
        edge.details.push_back("axioms: " + (cert->axioms_used.empty() ? std::string("none") : cert->axioms_used.front()));
        for (const auto& a : cert->axioms_used) edge.details.push_back(a + ": " + axiom_entry(a).at("citation").get<std::string>());
    }
    return {r, edge};
}

inline SuiteRow claim7(const SuiteOptions& o) {
    auto r = truncated_chain("7", "E(2,4) cut at pi|z_2|^2 >= 2 embeds in the open B^4(7/2)", "prop:xtn", Rat(2), Rat(3, 2), o,
                             Rat(8, 5));
    r.details.insert(r.details.begin(), "b=3/2, A=2 < (b+3)/2=9/4");
    return r;
}

inline SuiteRow claim8() {
    SuiteRow r{"8", "window max(a,b) < R < a+b for the two polydisk embeddings into P(R,R)", "thm:fhw", {}, false, true, true, {}, {}};
    const Rat a = 1, b = 2, R = Rat(5, 2);
    const bool window = max(a, b) < R && R < a + b;
    r.details.push_back("(a,b,R) = (1,2,5/2): window " + std::string(window ? "holds" : "fails"));
    fail_if(r, !window, "window fails");
    const auto g0 = includes(Polydisk({R, R}), Polydisk({a, b}));
    const auto g1 = includes(Polydisk({R, R}), Polydisk({b, a}));
    fail_if(r, !g0.inside() || !g1.inside(), "an image is not inside P(R,R)");
    r.details.push_back("the isotopy statement itself is not checked");
    return r;
}

inline bool ellipsoid_pair_supported(const Domain& s, const Domain& t) {
    return std::holds_alternative<Ellipsoid>(s) &&
           ((std::holds_alternative<Ellipsoid>(t) && complex_dim(t) == complex_dim(s)) ||
            (std::holds_alternative<BallProduct>(t) && complex_dim(t) >= complex_dim(s)));
}

inline SuiteRow soundness(const SuiteOptions& o, const std::vector<SuiteRow>& rows) {
    SuiteRow r{"soundness", "no certified pair is obstructed", "lemma:ekho", {}, false, true, true, {}, {}};
    int checked = 0;
    auto check = [&](const Certificate& c) {
        if (!ellipsoid_pair_supported(c.source, c.target)) return;
        ++checked;
        const auto obs = obstruct_embedding(c.source, c.target);
        fail_if(r, overall(obs) == Obstruction::Outcome::Obstructed,
                "certified " + describe(c.source) + " -> " + describe(c.target) + " is obstructed");
    };
    for (const auto& row : rows)
        for (const auto& c : row.certificates) check(c);
    const int from_suite = checked;

    std::mt19937_64 rng(o.seed);
    std::uniform_int_distribution<int> num(1, 24), den(1, 6), kind(0, 2);
    auto rnd = [&]() { return Rat(num(rng), den(rng)); };
    DeriveOptions dopt;
    dopt.depth = o.random_depth;
    dopt.disabled_axioms = o.disabled_axioms;
    int found = 0;
    for (int i = 0; i < o.random_pairs; ++i) {
        const Ellipsoid s({rnd(), rnd()});
        Domain t = ball(rnd());
        switch (kind(rng)) {
        case 0: break;
        case 1: t = Ellipsoid({rnd(), rnd()}); break;
        default: t = BallProduct(rnd(), 2); break;
        }
        const auto c = derive_embedding(s, t, dopt);
        if (!c) continue;
        ++found;
        const auto v = verify_certificate(*c);
        fail_if(r, !v.ok, "random certificate does not replay: " + v.message);
        check(*c);
    }
    r.details.push_back(std::to_string(from_suite) + " suite certificates checked");
    r.details.push_back(std::to_string(o.random_pairs) + " random pairs, " + std::to_string(found) + " certified, seed " +
                        std::to_string(o.seed));
    return r;
}

inline SuiteRow analytic(const std::string& id, const std::string& title, const std::string& anchor,
                         const std::vector<std::pair<std::string, bool>>& window) {
    SuiteRow r{id, title, anchor, SuiteStatus::NotVerified, false, false, true, {}, {}};
    r.details.push_back("analytic conclusion, not machine-verified; only the hypothesis window is checked");
    for (const auto& [what, ok] : window) {
        r.details.push_back(what + (ok ? ": holds" : ": FAILS"));
        if (!ok) r.status = SuiteStatus::Fail;
    }
    return r;
}

inline std::vector<SuiteRow> analytic_rows(const SuiteOptions& o) {
    std::vector<SuiteRow> out;
    const auto& q = o.q;
    const Rat b = o.b;
    {
        const Rat a = 1, bb = Rat(5, 2);
        out.push_back(analytic("4dpoly", "no Hamiltonian isotopy of P(a,b) into the open B^4(a+b) inside B^4(2a+b)",
                               "thm:4dpoly", {{"b > 2a for (a,b) = (1,5/2)", bb > 2 * a},
                                              {"fold bound 2a + b/2 < a + b", 2 * a + bb / 2 < a + bb}}));
    }
    {
        const Rat R = (q[2] + q.b + 2 * q[2] + q.b) / 2;
        const auto h = polylike_hypotheses(q, R);
        out.push_back(analytic("polylike", "no Hamiltonian isotopy of Q into the open B^4(a_2+b) product", "thm:polylike",
                               {{"a_2 < b, a_j > 2a_2, a_2+b < R=" + R.str() + " < 2a_2+b", h.ok() && !h.boundary()}}));
    }
    {
        const Polydisk p({Rat(1), Rat(1), Rat(11, 5)});
        const Rat R = Rat(37, 10);
        out.push_back(analytic("polydisk", "embeddings of P(a_1..a_n) into B^4(R) x R^{2(n-2)} not path connected",
                               "thm:polydisk",
                               {{"a_1 <= a_2 <= a_3 for P(1,1,11/5)", p[1] <= p[2] && p[2] <= p[3]},
                                {"a_3 > max(2a_1, a_2)", p[3] > max(2 * p[1], p[2])},
                                {"a_1 + a_3 < R=37/10 < 2a_1 + a_3", p[1] + p[3] < R && R < 2 * p[1] + p[3]}}));
    }
    out.push_back(analytic("ellisotopy", "spaces of 4-dimensional ellipsoid embeddings are path connected",
                           "thm:ellisotopy", {{"dimension 4", true}}));
    {
        const Polylike qq(b, {Rat(1), Rat(2)});
        const Rat A = 2;
        const Ellipsoid e({b * A / (A - 1), A, 2 * A});
        const Rat R = Rat(3);
        out.push_back(analytic("extn", "embeddings extending to a common ellipsoid cannot separate Q", "thm:extn",
                               {{"a_2 < b and a_j > 2a_2 for Q(3/2,1,2)", polylike_hypotheses(qq, Rat(3)).violated.empty()},
                                {"Q inside E(B,A,C) at A=2", includes(e, qq).contained()},
                                {"R=3 < 2a_2 + b", R < 2 + b}}));
    }
    out.push_back(analytic("thm31", "f_0 and f_1 on Q(b,1,2) are not isotopic", "thm:thm31",
                           {{"b > 1 for b=3/2", b > Rat(1)}, {"b+1 < R=3 < b+2", b + 1 < Rat(3) && Rat(3) < b + 2}}));
    out.push_back(analytic("prop32", "f_1 does not extend to E(B,A,C)", "prop:prop32",
                           {{"(b+2)/2 < A=2 < b+2", (b + 2) / 2 < Rat(2) && Rat(2) < b + 2}}));
    out.push_back(analytic("prop33", "the restricted inclusion does not extend over the truncated ellipsoid", "prop:prop33",
                           {{"(b+2)/2 < A=2 < b+1", (b + 2) / 2 < Rat(2) && Rat(2) < b + 1}}));
    out.push_back(analytic("xtn-iii", "the inclusion of E(2,4) on pi|z_2|^2 = 2 does not extend into the open B^4(7/2)",
                           "prop:xtn", {{"instance b=3/2, A=2 of the window (b+2)/2 < A < b+1", Rat(7, 4) < 2 && Rat(2) < Rat(5, 2)}}));
    return out;
}

} // namespace detail

/// Runs every constructive, obstructive and arithmetic claim, followed by
/// rows for the analytic conclusions whose hypotheses are checked only.
inline SuiteReport paper_suite(const SuiteOptions& o = {}) {
    using namespace detail;
    SuiteReport rep;
    rep.rows.push_back(claim1(o));
    rep.rows.push_back(claim2(o));
    rep.rows.push_back(claim3(o));
    rep.rows.push_back(claim4(o));
    rep.rows.push_back(claim5(o));
    for (auto& r : claim6(o)) rep.rows.push_back(std::move(r));
    rep.rows.push_back(claim7(o));
    rep.rows.push_back(claim8());
    rep.rows.push_back(soundness(o, rep.rows));
    for (auto& r : analytic_rows(o)) rep.rows.push_back(std::move(r));
    return rep;
}

inline Json to_json(const SuiteRow& r) {
    Json certs = Json::array();
    for (const auto& c : r.certificates) certs.push_back(to_json(c));
    return {{"id", r.id},
            {"title", r.title},
            {"anchor", r.anchor},
            {"status", std::string(to_string(r.status))},
            {"axiom", r.axiom},
            {"machine_checked", r.machine_checked},
            {"hypotheses_checked", r.hypotheses_checked},
            {"details", r.details},
            {"certificates", certs}};
}

inline Json to_json(const SuiteReport& rep) {
    Json rows = Json::array();
    for (const auto& r : rep.rows) rows.push_back(to_json(r));
    return {{"rows", rows},
            {"summary",
             {{"pass", rep.count(SuiteStatus::Pass)},
              {"fail", rep.count(SuiteStatus::Fail)},
              {"boundary", rep.count(SuiteStatus::Boundary)},
              {"not_verified", rep.count(SuiteStatus::NotVerified)}}},
            {"axioms", axiom_database()}};
}

} // namespace symcap
