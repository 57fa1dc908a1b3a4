#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "symcap/domains.hpp"
#include "symcap/error.hpp"
#include "symcap/rat.hpp"
#include "symcap/reeb.hpp"

namespace symcap {

// Finite energy curves are represented only by their combinatorial data:
// degree (intersection with the line at infinity) and asymptotic ends.

/// Complement of the smoothed domain inside CP^2(R) x R^{2(n-2)}.
struct CapAmbient {
    Domain domain;
    Rat R;
    friend bool operator==(const CapAmbient&, const CapAmbient&) = default;
};

/// R x (boundary of the smoothed domain).
struct SymplectizationAmbient {
    Domain domain;
    friend bool operator==(const SymplectizationAmbient&, const SymplectizationAmbient&) = default;
};

using Ambient = std::variant<CapAmbient, SymplectizationAmbient>;

struct CurveClass {
    int degree = 0;
    std::vector<ReebOrbit> negative_ends; // sorted multiset
    std::vector<ReebOrbit> positive_ends; // sorted multiset; symplectization only
    Ambient ambient;

    static CurveClass cap(Domain d, Rat R, int degree, std::vector<ReebOrbit> negative) {
        if (degree < 0) throw Error(ErrorCode::InvalidArgument, "degree must be nonnegative");
        if (R.sign() <= 0) throw Error(ErrorCode::InvalidArgument, "line area R must be positive");
        for (const auto& o : negative) detail::validate_orbit(o, d);
        std::sort(negative.begin(), negative.end());
        return {degree, std::move(negative), {}, CapAmbient{std::move(d), R}};
    }

    static CurveClass symplectization(Domain d, std::vector<ReebOrbit> positive, std::vector<ReebOrbit> negative) {
        if (positive.size() + negative.size() == 0)
            throw Error(ErrorCode::InvalidArgument, "a nonconstant symplectization curve needs an end");
        for (const auto& o : positive) detail::validate_orbit(o, d);
        for (const auto& o : negative) detail::validate_orbit(o, d);
        std::sort(positive.begin(), positive.end());
        std::sort(negative.begin(), negative.end());
        return {0, std::move(negative), std::move(positive), SymplectizationAmbient{std::move(d)}};
    }

    const Domain& domain() const {
        return std::visit([](const auto& a) -> const Domain& { return a.domain; }, ambient);
    }
    bool is_cap() const noexcept { return std::holds_alternative<CapAmbient>(ambient); }
    int end_count() const noexcept { return static_cast<int>(negative_ends.size() + positive_ends.size()); }

    friend bool operator==(const CurveClass&, const CurveClass&) = default;
};

inline std::string describe(const CurveClass& c) {
    auto ends = [](const std::vector<ReebOrbit>& v) {
        std::string s = "{";
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + label(v[i]);
        return s + "}";
    };
    if (c.is_cap()) return "d=" + std::to_string(c.degree) + " neg" + ends(c.negative_ends);
    return "pos" + ends(c.positive_ends) + " neg" + ends(c.negative_ends);
}

// --------------------------------------------------------------- area

/// d R - sum of negative end actions (exact at infinitesimal smoothing).
inline Rat curve_area(const CurveClass& c) {
    const auto* cap = std::get_if<CapAmbient>(&c.ambient);
    if (!cap) throw Error(ErrorCode::SymplectizationAmbient, "area is only defined for curves in the cap");
    Rat a = Rat(c.degree) * cap->R;
    for (const auto& o : c.negative_ends) a -= action(o, cap->domain);
    return a;
}

// -------------------------------------------------------------- index

namespace detail {

/// Contribution of one negative end to the genus 0 index:
/// -(n-3) from the (2-s) term and -(mu - dimV/2).
inline Rat negative_end_term(const ReebOrbit& o, const Domain& d, int n) {
    return Rat(3 - n) - (cz_index(o, d).value - Rat(family_dimension(o), 2));
}

inline Rat positive_end_term(const ReebOrbit& o, const Domain& d, int n) {
    return Rat(3 - n) + (cz_index(o, d).value + Rat(family_dimension(o), 2));
}

} // namespace detail

/// Virtual index of a genus 0 curve:
/// (n-3)(2-s) + 6d + sum_pos (mu + dimV/2) - sum_neg (mu - dimV/2).
/// The half-integer parts always cancel; a non-integer result is a bug.
inline Rat virtual_index(const CurveClass& c) {
    const Domain& d = c.domain();
    const int n = complex_dim(d);
    Rat idx = Rat(2 * (n - 3) + 6 * c.degree);
    for (const auto& o : c.negative_ends) idx += detail::negative_end_term(o, d, n);
    for (const auto& o : c.positive_ends) idx += detail::positive_end_term(o, d, n);
    if (!idx.is_integer()) throw std::logic_error("virtual index " + idx.str() + " is not an integer for " + describe(c));
    return idx;
}

/// True if any end's index formula hit an integral floor argument.
inline bool touches_floor_boundary(const CurveClass& c) {
    const Domain& d = c.domain();
    auto any = [&](const std::vector<ReebOrbit>& v) {
        return std::any_of(v.begin(), v.end(), [&](const ReebOrbit& o) { return cz_index(o, d).floor_boundary; });
    };
    return any(c.negative_ends) || any(c.positive_ends);
}

/// Index after fixing the asymptotic orbit of one negative end inside its family.
inline Rat constrained_index(const CurveClass& c, const ReebOrbit& fixed) {
    if (std::find(c.negative_ends.begin(), c.negative_ends.end(), fixed) == c.negative_ends.end())
        throw Error(ErrorCode::EndNotPresent, label(fixed) + " is not a negative end of " + describe(c));
    return virtual_index(c) - Rat(family_dimension(fixed));
}

// -------------------------------------------------------- enumeration

struct EnumerationQuery {
    int degree = 1;
    Rat area_min = 0;
    std::optional<Rat> area_max;  // defaults to d R
    std::optional<Rat> index_min; // no index filter when absent
    /// When set, only curves with this negative end are kept and index_min
    /// applies to the constrained index.
    std::optional<ReebOrbit> constrained_end;
};

struct EnumerationOptions {
    int max_degree = 3;
};

/// Every curve class of the given degree in the cap over d with
/// area_min <= area <= area_max, area > 0, and index >= index_min.
/// Output order is the depth-first order over action-sorted orbits.
inline std::vector<CurveClass> enumerate_cap_curves(const Domain& d, const Rat& R, const EnumerationQuery& q,
                                                    const EnumerationOptions& opt = {}) {
    if (q.degree < 1) throw Error(ErrorCode::InvalidArgument, "cap curves need degree >= 1");
    if (q.degree > opt.max_degree)
        throw Error(ErrorCode::InvalidArgument, "degree " + std::to_string(q.degree) + " exceeds the configured cap " +
                                                    std::to_string(opt.max_degree));
    if (R.sign() <= 0) throw Error(ErrorCode::InvalidArgument, "line area R must be positive");
    const Rat top = Rat(q.degree) * R;
    const Rat area_max = q.area_max ? *q.area_max : top;
    if (area_max < q.area_min) throw Error(ErrorCode::InvalidArgument, "area_min exceeds area_max");

    std::vector<CurveClass> out;
    const Rat budget = top - max(q.area_min, Rat(0)); // total action never exceeds this
    if (budget.sign() <= 0) return out;

    const int n = complex_dim(d);
    const bool need_index = q.index_min.has_value();
    const auto orbits = enumerate_orbits(d, budget);
    std::vector<Rat> terms;
    bool monotone = true;
    if (need_index) {
        for (const auto& e : orbits) {
            terms.push_back(detail::negative_end_term(e.orbit, d, n));
            monotone = monotone && terms.back().sign() < 0;
        }
    }
    const Rat base_index = Rat(2 * (n - 3) + 6 * q.degree);

    std::vector<std::size_t> chosen;
    auto emit = [&](const Rat& spent, const Rat& index) {
        const Rat area = top - spent;
        if (area.sign() <= 0 || area < q.area_min || area > area_max) return;
        std::vector<ReebOrbit> ends;
        for (auto i : chosen) ends.push_back(orbits[i].orbit);
        if (q.constrained_end && std::find(ends.begin(), ends.end(), *q.constrained_end) == ends.end()) return;
        if (need_index) {
            Rat eff = index;
            if (q.constrained_end) eff -= Rat(family_dimension(*q.constrained_end));
            if (eff < *q.index_min) return;
        }
        out.push_back(CurveClass::cap(d, R, q.degree, std::move(ends)));
    };
    auto rec = [&](auto&& self, std::size_t first, const Rat& spent, const Rat& index) -> void {
        emit(spent, index);
        for (std::size_t i = first; i < orbits.size(); ++i) {
            const Rat next = spent + orbits[i].action;
            if (next >= top || next > budget) break; // orbits are sorted by action
            const Rat next_index = need_index ? index + terms[i] : index;
            // every end lowers the index, so a subtree below the floor stays below
            if (need_index && monotone && !q.constrained_end && next_index < *q.index_min) continue;
            chosen.push_back(i);
            self(self, i, next, next_index);
            chosen.pop_back();
        }
    };
    rec(rec, 0, Rat(0), base_index);
    return out;
}

// ------------------------------------------------------ case analyses

enum class Verdict { Confirmed, Refuted, BoundaryAmbiguous };

inline std::string_view to_string(Verdict v) {
    switch (v) {
    case Verdict::Confirmed: return "Confirmed";
    case Verdict::Refuted: return "Refuted";
    case Verdict::BoundaryAmbiguous: return "BoundaryAmbiguous";
    }
    return "?";
}

struct CaseReport {
    std::string claim;
    std::vector<std::pair<std::string, std::string>> parameters;
    std::vector<CurveClass> enumerated;
    Verdict verdict = Verdict::Confirmed;
    std::vector<CurveClass> witnesses; // violating curves (Refuted) or boundary-touching ones
    std::vector<std::string> notes;
};

struct HypothesisCheck {
    std::vector<std::string> violated;   // strict failures
    std::vector<std::string> equalities; // hypotheses holding only with equality

    bool ok() const noexcept { return violated.empty(); }
    bool boundary() const noexcept { return !equalities.empty(); }
};

namespace detail {

/// Records lhs < rhs: failure if lhs > rhs, equality case if lhs == rhs.
inline void strict_less(HypothesisCheck& h, const Rat& lhs, const Rat& rhs, const std::string& what) {
    if (lhs == rhs) h.equalities.push_back(what + " (equality: " + lhs.str() + ")");
    else if (lhs > rhs) h.violated.push_back(what + " (" + lhs.str() + " > " + rhs.str() + ")");
}

inline void throw_if_violated(const HypothesisCheck& h, const std::string& claim) {
    if (h.ok()) return;
    std::string msg = claim + ":";
    for (const auto& v : h.violated) msg += " " + v + ";";
    throw Error(ErrorCode::HypothesisViolated, msg);
}

inline std::vector<std::pair<std::string, std::string>> polylike_params(const Polylike& q, const Rat& R) {
    std::vector<std::pair<std::string, std::string>> p{{"b", q.b.str()}};
    for (int j = 2; j <= q.dim(); ++j) p.emplace_back("a_" + std::to_string(j), q[j].str());
    p.emplace_back("R", R.str());
    p.emplace_back("n", std::to_string(q.dim()));
    return p;
}

inline bool all_elliptic(const CurveClass& c) {
    return std::all_of(c.negative_ends.begin(), c.negative_ends.end(),
                       [](const ReebOrbit& o) { return std::holds_alternative<Elliptic>(o); });
}

inline void finish(CaseReport& r, const HypothesisCheck& h) {
    for (const auto& e : h.equalities) r.notes.push_back("hypothesis at equality: " + e);
    if (!r.witnesses.empty() && r.verdict == Verdict::Refuted && !h.boundary()) return;
    if (h.boundary() || r.verdict == Verdict::BoundaryAmbiguous) r.verdict = Verdict::BoundaryAmbiguous;
}

} // namespace detail

/// Hypotheses shared by the polylike lemmas: n >= 3, a_2 < b,
/// a_j > 2 a_2 for j >= 3, and a_2 + b < R < 2 a_2 + b.
inline HypothesisCheck polylike_hypotheses(const Polylike& q, const Rat& R) {
    HypothesisCheck h;
    if (q.dim() < 3) h.violated.push_back("n >= 3 (n = " + std::to_string(q.dim()) + ")");
    detail::strict_less(h, q[2], q.b, "a_2 < b");
    for (int j = 3; j <= q.dim(); ++j)
        detail::strict_less(h, Rat(2) * q[2], q[j], "a_" + std::to_string(j) + " > 2 a_2");
    detail::strict_less(h, q[2] + q.b, R, "a_2 + b < R");
    detail::strict_less(h, R, Rat(2) * q[2] + q.b, "R < 2 a_2 + b");
    return h;
}

/// Degree 1 curves with area <= a_2 have a single end gamma^2_{1,1} or only
/// elliptic ends with total action strictly between b and 2 a_2 + b.
inline CaseReport check_lemma_con1(const Polylike& q, const Rat& R) {
    const auto h = polylike_hypotheses(q, R);
    detail::throw_if_violated(h, "con1");
    CaseReport r{"con1", detail::polylike_params(q, R), {}, Verdict::Confirmed, {}, {}};
    EnumerationQuery query;
    query.area_max = q[2];
    r.enumerated = enumerate_cap_curves(q, R, query);
    const Rat hi = Rat(2) * q[2] + q.b;
    for (const auto& c : r.enumerated) {
        const Rat spent = R - curve_area(c);
        const bool single_h11 = c.negative_ends.size() == 1 && c.negative_ends[0] == ReebOrbit{Hyperbolic{2, 1, 1}};
        const bool elliptic_ok = detail::all_elliptic(c) && q.b < spent && spent < hi;
        if (!single_h11 && !elliptic_ok) {
            if (detail::all_elliptic(c) && (spent == q.b || spent == hi)) {
                r.witnesses.push_back(c);
                if (r.verdict == Verdict::Confirmed) r.verdict = Verdict::BoundaryAmbiguous;
            } else {
                r.verdict = Verdict::Refuted;
                r.witnesses.insert(r.witnesses.begin(), c);
            }
        }
    }
    detail::finish(r, h);
    return r;
}

struct Con3Result {
    Rat bound;    // 2(n - (n-1)E): upper bound on the index with E elliptic ends
    bool allowed; // bound >= -1
};

/// Index bound for degree 1 curves with E elliptic ends.
inline Con3Result check_lemma_con3(int n, int elliptic_ends) {
    if (n < 3) throw Error(ErrorCode::HypothesisViolated, "con3 needs n >= 3");
    if (elliptic_ends < 0) throw Error(ErrorCode::HypothesisViolated, "end count must be nonnegative");
    const Rat bound = Rat(2 * (n - (n - 1) * elliptic_ends));
    return {bound, bound >= Rat(-1)};
}

/// The three planes allowed for degree 1, area <= a_2, index >= -1.
inline std::vector<ReebOrbit> con2_allowed_ends() {
    return {Hyperbolic{2, 1, 1}, Elliptic{1, 2}, Elliptic{2, 2}};
}

/// Every degree 1 curve with area <= a_2 and index >= -1 is a plane on
/// gamma^2_{1,1}, 2 gamma^1 or 2 gamma^2.
inline CaseReport check_lemma_con2(const Polylike& q, const Rat& R) {
    const auto h = polylike_hypotheses(q, R);
    detail::throw_if_violated(h, "con2");
    CaseReport r{"con2", detail::polylike_params(q, R), {}, Verdict::Confirmed, {}, {}};
    EnumerationQuery query;
    query.area_max = q[2];
    query.index_min = Rat(-1);
    r.enumerated = enumerate_cap_curves(q, R, query);
    const auto allowed = con2_allowed_ends();
    for (const auto& c : r.enumerated) {
        const bool ok = c.negative_ends.size() == 1 &&
                        std::find(allowed.begin(), allowed.end(), c.negative_ends[0]) != allowed.end();
        if (!ok) {
            r.verdict = Verdict::Refuted;
            r.witnesses.insert(r.witnesses.begin(), c);
        }
    }
    for (const auto& c : r.enumerated) r.notes.push_back("realized: " + describe(c));
    detail::finish(r, h);
    return r;
}

/// The three finite exclusions behind compactness of the moduli space:
/// (a) planes on 2 gamma^2 exceed the area bound R - (a_2 + b);
/// (b) if 2b < R, cylinders from 2 gamma^1 can only end on orbits with action
///     strictly between a_2 + b and 2b, all of type gamma^2_{1,1}, 3 gamma^2 or
///     gamma^j (j >= 3), are somewhere injective, and have index 1 resp. <= -2;
/// (c) if 2b < R, no orbit has action below b - a_2.
inline CaseReport compactness_exclusions(const Polylike& q, const Rat& R) {
    const auto h = polylike_hypotheses(q, R);
    detail::throw_if_violated(h, "compactness");
    CaseReport r{"compactness", detail::polylike_params(q, R), {}, Verdict::Confirmed, {}, {}};
    const int n = q.dim();
    const Rat a2 = q[2];
    auto refute = [&](CurveClass c, const std::string& why) {
        r.verdict = Verdict::Refuted;
        r.witnesses.push_back(std::move(c));
        r.notes.push_back("refuted: " + why);
    };

    // (a)
    const auto plane = CurveClass::cap(q, R, 1, {Elliptic{2, 2}});
    r.enumerated.push_back(plane);
    const Rat bound = R - (a2 + q.b);
    if (curve_area(plane) == bound) {
        r.witnesses.push_back(plane);
        r.verdict = Verdict::BoundaryAmbiguous;
        r.notes.push_back("(a) plane on 2g^2 has area exactly R - (a_2 + b)");
    } else if (curve_area(plane) < bound) {
        refute(plane, "(a) plane on 2g^2 fits under the area bound");
    } else {
        r.notes.push_back("(a) plane on 2g^2 excluded: area " + curve_area(plane).str() + " > " + bound.str());
    }

    if (!(Rat(2) * q.b < R)) {
        r.notes.push_back("(b),(c) vacuous: 2b >= R, no plane on 2g^1 has positive area");
        detail::finish(r, h);
        return r;
    }

    // (b)
    const ReebOrbit top = Elliptic{1, 2};
    const Rat lo = a2 + q.b;
    const Rat hi = Rat(2) * q.b;
    std::vector<ReebOrbit> claimed{Hyperbolic{2, 1, 1}, Elliptic{2, 3}};
    for (int j = 3; j <= n; ++j) claimed.push_back(Elliptic{j, 1});
    for (const auto& e : enumerate_orbits(q, hi)) {
        if (e.action == lo || e.action == hi) {
            r.notes.push_back("(b) window endpoint hit by " + label(e.orbit) + " (action " + e.action.str() + ")");
            continue;
        }
        if (e.action < lo) continue;
        if (std::find(claimed.begin(), claimed.end(), e.orbit) == claimed.end())
            refute(CurveClass::symplectization(q, {top}, {e.orbit}),
                   "(b) unexpected orbit " + label(e.orbit) + " in window");
        else
            r.notes.push_back("(b) orbit in window: " + label(e.orbit));
    }
    for (const auto& o : claimed) {
        auto cyl = CurveClass::symplectization(q, {top}, {o});
        const Rat idx = virtual_index(cyl);
        const int g = std::gcd(covering_degree(top), covering_degree(o));
        r.enumerated.push_back(cyl);
        const bool hyperbolic = std::holds_alternative<Hyperbolic>(o);
        const bool index_ok = hyperbolic ? idx == Rat(1) : idx <= Rat(-2);
        r.notes.push_back("(b) cylinder " + describe(cyl) + ": index " + idx.str() + ", gcd " + std::to_string(g));
        if (!index_ok) refute(cyl, "(b) cylinder index " + idx.str());
        if (g != 1) refute(cyl, "(b) cylinder multiply covered");
    }

    // (c)
    const Rat small = q.b - a2;
    if (small.sign() > 0) {
        for (const auto& e : enumerate_orbits(q, small)) {
            if (e.action == small) {
                r.notes.push_back("(c) orbit at action exactly b - a_2: " + label(e.orbit));
                continue;
            }
            refute(CurveClass::symplectization(q, {top}, {Hyperbolic{2, 1, 1}, e.orbit}),
                   "(c) orbit " + label(e.orbit) + " has action below b - a_2");
        }
    }
    if (r.verdict != Verdict::Refuted) r.notes.push_back("(c) no orbit with action below " + small.str());
    detail::finish(r, h);
    return r;
}

// ----------------------------------------------------- polydisk ends

struct PolydiskEndResult {
    std::vector<std::vector<int>> solutions;
    bool claim_holds = false; // solutions == { e_1 + e_3 }
    bool boundary = false;    // some hypothesis holds only with equality
    std::vector<std::string> notes;
};

/// Nonnegative integer vectors m with sum m_i <= mult_cap and
/// a + b <= m_1 a + m_3 b + (a - eps) sum_{i != 1,3} m_i <= R.
inline PolydiskEndResult polydisk_end_solver(const Rat& a, const Rat& b, const Rat& eps, const Rat& R, int n,
                                             int mult_cap = 3) {
    HypothesisCheck h;
    if (n < 3) h.violated.push_back("n >= 3");
    if (mult_cap < 0) h.violated.push_back("mult_cap >= 0");
    if (!(a.sign() > 0)) h.violated.push_back("a > 0");
    if (!(eps.sign() > 0 && eps < a)) h.violated.push_back("0 < eps < a");
    detail::strict_less(h, Rat(2) * a, b, "b > 2a");
    detail::strict_less(h, Rat(2) * eps, Rat(2) * a + b - R, "2 eps < 2a + b - R");
    detail::strict_less(h, a + b, R, "a + b < R");
    detail::strict_less(h, R, Rat(2) * a + b, "R < 2a + b");
    detail::throw_if_violated(h, "polydisk-ends");

    PolydiskEndResult out;
    out.boundary = h.boundary();
    out.notes = h.equalities;
    std::vector<int> m(static_cast<std::size_t>(n), 0);
    const Rat weak = a - eps;
    auto rec = [&](auto&& self, std::size_t i, int left) -> void {
        if (i == m.size()) {
            Rat s = 0;
            for (std::size_t k = 0; k < m.size(); ++k) {
                const Rat w = k == 0 ? a : k == 2 ? b : weak;
                s += Rat(m[k]) * w;
            }
            if (a + b <= s && s <= R) out.solutions.push_back(m);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            m[i] = v;
            self(self, i + 1, left - v);
        }
        m[i] = 0;
    };
    rec(rec, 0, mult_cap);
    std::vector<int> expected(static_cast<std::size_t>(n), 0);
    expected[0] = expected[2] = 1;
    out.claim_holds = out.solutions.size() == 1 && out.solutions[0] == expected;
    return out;
}

// ---------------------------------------------------- ellipsoid ends

struct EndEntry {
    ReebOrbit end;
    Rat action;
    Rat index;
    bool floor_boundary = false;
    std::string condition;
};

struct EllipsoidEndReport {
    Ellipsoid sorted;
    std::vector<EndEntry> allowed;  // single ends with index >= -1
    std::vector<EndEntry> excluded; // single-end candidates with index < -1
    /// Upper bound on the index of any configuration with s >= 2 ends,
    /// from mu >= n + 1 for every end: 2n - s(2n - 2) at s = 2.
    Rat multi_end_index_bound;
    bool multi_end_excluded = false;
    /// Largest action among allowed ends; min(2 c_1, c_2) for generic c.
    Rat max_allowed_action;
    bool boundary = false;
    std::vector<std::string> notes;
};

/// Degree 1 components in the complement of ellipsoid E with index >= -1:
/// a single end on d^1, 2d^1 (iff 2c_1 < c_2) or d^2 (iff c_2 < 2c_1).
inline EllipsoidEndReport ellipsoid_end_analysis(const Ellipsoid& e) {
    EllipsoidEndReport rep;
    auto c = e.coeffs;
    std::sort(c.begin(), c.end());
    rep.sorted = Ellipsoid(c);
    const Domain d = rep.sorted;
    const int n = rep.sorted.dim();
    const auto gen = genericity_check(d);
    for (const auto& v : gen.violations) rep.notes.push_back("genericity: " + v.description);

    // index = n + 3 - mu for one end and mu >= 2r + n - 1, so r <= 2 suffices
    for (int k = 1; k <= n; ++k) {
        for (int r = 1; r <= 2; ++r) {
            const ReebOrbit o = EllipsoidClosed{k, r};
            const auto plane = CurveClass::cap(d, c.back(), 1, {o});
            EndEntry entry{o, action(o, d), virtual_index(plane), cz_index(o, d).floor_boundary, ""};
            if (k == 1 && r == 1) entry.condition = "always";
            else if (k == 1 && r == 2) entry.condition = "2c_1 < c_2";
            else if (k == 2 && r == 1) entry.condition = "c_2 < 2c_1";
            // an integral floor moves the index by 2 under perturbation; only
            // ends that could cross the -1 threshold make the analysis ambiguous
            if (entry.floor_boundary && entry.index >= Rat(-3)) {
                rep.boundary = true;
                rep.notes.push_back("floor boundary at " + label(o) + " (index " + entry.index.str() + ")");
            }
            (entry.index >= Rat(-1) ? rep.allowed : rep.excluded).push_back(std::move(entry));
        }
    }
    rep.multi_end_index_bound = Rat(2 * n - 2 * (2 * n - 2));
    rep.multi_end_excluded = rep.multi_end_index_bound < Rat(-1);
    rep.max_allowed_action = rep.allowed.empty() ? Rat(0) : rep.allowed.front().action;
    for (const auto& a : rep.allowed) rep.max_allowed_action = max(rep.max_allowed_action, a.action);
    if (Rat(2) * c[0] == c[1]) {
        rep.boundary = true;
        rep.notes.push_back("2c_1 = c_2: floor boundary");
    }
    return rep;
}

/// Confirms the single-end classification against its report.
inline Verdict ellipsoid_end_verdict(const EllipsoidEndReport& rep) {
    if (rep.boundary) return Verdict::BoundaryAmbiguous;
    const auto& c = rep.sorted.coeffs;
    auto has = [&](const ReebOrbit& o) {
        return std::any_of(rep.allowed.begin(), rep.allowed.end(), [&](const EndEntry& e) { return e.end == o; });
    };
    const bool subset = std::all_of(rep.allowed.begin(), rep.allowed.end(), [](const EndEntry& e) {
        return e.end == ReebOrbit{EllipsoidClosed{1, 1}} || e.end == ReebOrbit{EllipsoidClosed{1, 2}} ||
               e.end == ReebOrbit{EllipsoidClosed{2, 1}};
    });
    const bool ok = subset && has(EllipsoidClosed{1, 1}) && has(EllipsoidClosed{1, 2}) == (Rat(2) * c[0] < c[1]) &&
                    has(EllipsoidClosed{2, 1}) == (c[1] < Rat(2) * c[0]) && rep.multi_end_excluded &&
                    rep.max_allowed_action == min(Rat(2) * c[0], c[1]);
    return ok ? Verdict::Confirmed : Verdict::Refuted;
}

} // namespace symcap
