#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "symcap/domains.hpp"
#include "symcap/error.hpp"
#include "symcap/json_io.hpp"
#include "symcap/rat.hpp"

namespace symcap {

// ---------------------------------------------------------------- rules

/// inner ⊆ target, checked by includes().
struct Inclusion {
    Domain target;
    friend bool operator==(const Inclusion&, const Inclusion&) = default;
};

/// d ⊆ lambda d for lambda >= 1 (all star-shaped domains here except TE).
struct Scale {
    Rat lambda;
    friend bool operator==(const Scale&, const Scale&) = default;
};

/// Coordinate i of the result is coordinate perm[i-1] of the input.
struct CoordSwap {
    std::vector<int> perm;
    friend bool operator==(const CoordSwap&, const CoordSwap&) = default;
};

/// Symplectic folding P(a,b) -> B^4(2a + b/2 + eps), a <= b, on the first
/// two coordinates; identity on the rest.
struct Fold {
    Rat epsilon;
    friend bool operator==(const Fold&, const Fold&) = default;
};

/// E(x,4x) -> B^4(2x), into the closed ball.
struct AxiomE14 {
    friend bool operator==(const AxiomE14&, const AxiomE14&) = default;
};

/// E(x,2x) -> open B^4(2x).
struct AxiomMS {
    friend bool operator==(const AxiomMS&, const AxiomMS&) = default;
};

using FactorRule = std::variant<Inclusion, Fold, AxiomE14, AxiomMS>;

/// Project onto coordinates (i, j), apply a 4-dimensional rule ending in a
/// ball B^4(F), and keep the other coordinates: result B^4(F) x R^{2(n-2)}.
struct ProductExtend {
    FactorRule inner;
    int i = 1;
    int j = 2;
    friend bool operator==(const ProductExtend&, const ProductExtend&) = default;
};

using Rule = std::variant<Inclusion, Scale, CoordSwap, Fold, ProductExtend, AxiomE14, AxiomMS>;

// ------------------------------------------------------- axiom database

inline constexpr const char* kAxiomDatabase = R"json([
  {
    "name": "E14",
    "statement": "E(x,4x) embeds symplectically into the closed ball B^4(2x)",
    "strict": false,
    "citation": "D. McDuff and F. Schlenk, The embedding capacity of 4-dimensional symplectic ellipsoids, Ann. of Math. 175 (2012)"
  },
  {
    "name": "MS",
    "statement": "E(x,2x) embeds symplectically into the open ball B^4(2x)",
    "strict": true,
    "citation": "D. McDuff and F. Schlenk, The embedding capacity of 4-dimensional symplectic ellipsoids, Ann. of Math. 175 (2012)"
  }
])json";

inline const Json& axiom_database() {
    static const Json db = Json::parse(kAxiomDatabase);
    return db;
}

inline const Json& axiom_entry(const std::string& name) {
    for (const auto& a : axiom_database())
        if (a.at("name") == name) return a;
    throw Error(ErrorCode::InvalidArgument, "unknown axiom '" + name + "'");
}

// -------------------------------------------------------- rule results

struct RuleOutcome {
    Domain result;
    std::optional<Rat> margin; // slack of the step's verification, if it has one
    bool strict = false;       // image lies in the interior of result
};

namespace detail {

inline Error not_applicable(const std::string& rule, const Domain& d, const std::string& why) {
    return Error(ErrorCode::NotApplicable, rule + " on " + describe(d) + ": " + why);
}

/// (smaller, larger) of a 2-dimensional ellipsoid, or nullopt.
inline std::optional<std::pair<Rat, Rat>> ellipsoid_pair(const Domain& d) {
    const auto* e = std::get_if<Ellipsoid>(&d);
    if (!e || e->dim() != 2) return std::nullopt;
    return std::pair{min(e->coeffs[0], e->coeffs[1]), max(e->coeffs[0], e->coeffs[1])};
}

/// Capacity of a round 4-ball, or nullopt.
inline std::optional<Rat> ball_capacity(const Domain& d) {
    const auto p = ellipsoid_pair(d);
    if (p && p->first == p->second) return p->first;
    return std::nullopt;
}

/// The two widths folded by Fold: P(a_1,a_2) for polydisks, P(b,a_2) for Q.
inline std::optional<std::pair<Rat, Rat>> fold_factor(const Domain& d) {
    if (const auto* p = std::get_if<Polydisk>(&d)) return std::pair{p->widths[0], p->widths[1]};
    if (const auto* q = std::get_if<Polylike>(&d)) return std::pair{q->b, q->tail[0]};
    return std::nullopt;
}

/// 2a + b/2 with a <= b: the folding bound before epsilon.
inline Rat fold_base(const std::pair<Rat, Rat>& w) {
    const Rat a = min(w.first, w.second);
    const Rat b = max(w.first, w.second);
    return Rat(2) * a + b / Rat(2);
}

/// Projection of d onto the coordinate plane (i, j).
inline Domain shadow(const Domain& d, int i, int j) {
    const int n = complex_dim(d);
    if (i < 1 || j < 1 || i > n || j > n || i == j)
        throw Error(ErrorCode::InvalidArgument, "bad coordinate pair for " + describe(d));
    if (const auto* e = std::get_if<Ellipsoid>(&d)) return Ellipsoid({(*e)[i], (*e)[j]});
    if (const auto* p = std::get_if<Polydisk>(&d)) return Polydisk({(*p)[i], (*p)[j]});
    if (const auto* q = std::get_if<Polylike>(&d)) {
        if (i == 1 || j == 1) return Polydisk({(*q)[i], (*q)[j]});
        return Ellipsoid({(*q)[i], (*q)[j]});
    }
    if (const auto* b = std::get_if<BallProduct>(&d)) {
        if ((i == 1 && j == 2) || (i == 2 && j == 1)) return ball(b->radius);
        throw not_applicable("shadow", d, "only the ball factor of a ball product has a bounded shadow");
    }
    throw not_applicable("shadow", d, "no product structure");
}

inline void check_permutation(const std::vector<int>& perm, int n) {
    if (static_cast<int>(perm.size()) != n) throw Error(ErrorCode::InvalidArgument, "permutation length mismatch");
    std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
    for (int p : perm) {
        if (p < 1 || p > n || seen[static_cast<std::size_t>(p)])
            throw Error(ErrorCode::InvalidArgument, "not a permutation of 1.." + std::to_string(n));
        seen[static_cast<std::size_t>(p)] = true;
    }
}

inline std::vector<Rat> permuted(const std::vector<Rat>& v, const std::vector<int>& perm) {
    std::vector<Rat> out;
    for (int p : perm) out.push_back(v[static_cast<std::size_t>(p - 1)]);
    return out;
}

inline RuleOutcome apply_factor(const FactorRule& r, const Domain& d);

inline RuleOutcome apply_inclusion(const Inclusion& r, const Domain& d) {
    InclusionVerdict v;
    try {
        v = includes(r.target, d);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::UnsupportedPair) throw;
        throw not_applicable("Inclusion", d, e.what());
    }
    if (!v.contained()) throw not_applicable("Inclusion", d, "not contained in " + describe(r.target) + " (" + v.witness + ")");
    return {r.target, v.margin, v.inside()};
}

inline RuleOutcome apply_fold(const Fold& r, const Domain& d) {
    if (r.epsilon.sign() <= 0) throw Error(ErrorCode::InvalidArgument, "fold epsilon must be positive");
    const auto w = fold_factor(d);
    if (!w) throw not_applicable("Fold", d, "needs a disk x disk factor in coordinates (1,2)");
    const Rat F = fold_base(*w) + r.epsilon;
    const int n = complex_dim(d);
    if (n == 2) return {ball(F), r.epsilon, true};
    return {BallProduct(F, n), r.epsilon, true};
}

inline RuleOutcome apply_axiom(bool strict, const Rat& ratio, const char* name, const Domain& d) {
    const auto p = ellipsoid_pair(d);
    if (!p || p->second != ratio * p->first)
        throw not_applicable(name, d, "needs E(x," + ratio.str() + "x)");
    return {ball(Rat(2) * p->first), std::nullopt, strict};
}

inline RuleOutcome apply_factor(const FactorRule& r, const Domain& d) {
    return std::visit(
        [&](const auto& x) -> RuleOutcome {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Inclusion>) return apply_inclusion(x, d);
            else if constexpr (std::is_same_v<T, Fold>) return apply_fold(x, d);
            else if constexpr (std::is_same_v<T, AxiomE14>) return apply_axiom(false, Rat(4), "AxiomE14", d);
            else return apply_axiom(true, Rat(2), "AxiomMS", d);
        },
        r);
}

} // namespace detail

/// Exact image bound of one rule application.
inline RuleOutcome apply_rule(const Rule& r, const Domain& d) {
    using namespace detail;
    return std::visit(
        [&](const auto& x) -> RuleOutcome {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Inclusion>) return apply_inclusion(x, d);
            else if constexpr (std::is_same_v<T, Fold>) return apply_fold(x, d);
            else if constexpr (std::is_same_v<T, AxiomE14>) return apply_axiom(false, Rat(4), "AxiomE14", d);
            else if constexpr (std::is_same_v<T, AxiomMS>) return apply_axiom(true, Rat(2), "AxiomMS", d);
            else if constexpr (std::is_same_v<T, Scale>) {
                if (x.lambda < Rat(1)) throw Error(ErrorCode::InvalidArgument, "scale factor must be >= 1");
                if (std::holds_alternative<TruncatedEllipsoid>(d))
                    throw not_applicable("Scale", d, "a truncated ellipsoid is not contained in its dilates");
                return {scale(d, x.lambda), x.lambda - Rat(1), x.lambda > Rat(1)};
            } else if constexpr (std::is_same_v<T, CoordSwap>) {
                const int n = complex_dim(d);
                check_permutation(x.perm, n);
                if (const auto* e = std::get_if<Ellipsoid>(&d)) return {Ellipsoid(permuted(e->coeffs, x.perm)), std::nullopt, false};
                if (const auto* p = std::get_if<Polydisk>(&d)) return {Polydisk(permuted(p->widths, x.perm)), std::nullopt, false};
                if (const auto* q = std::get_if<Polylike>(&d)) {
                    if (x.perm[0] != 1) throw not_applicable("CoordSwap", d, "the disk coordinate 1 must stay fixed");
                    std::vector<Rat> all{q->b};
                    all.insert(all.end(), q->tail.begin(), q->tail.end());
                    auto moved = permuted(all, x.perm);
                    return {Polylike(moved[0], {moved.begin() + 1, moved.end()}), std::nullopt, false};
                }
                if (const auto* t = std::get_if<TruncatedEllipsoid>(&d)) {
                    if (x.perm[0] == 1) return {d, std::nullopt, false};
                    return {TruncatedEllipsoid(Ellipsoid({t->base[2], t->base[1]}), 3 - t->axis, t->cut), std::nullopt, false};
                }
                const bool keeps_ball = (x.perm[0] == 1 || x.perm[0] == 2) && (x.perm[1] == 1 || x.perm[1] == 2);
                if (!keeps_ball) throw not_applicable("CoordSwap", d, "must preserve the ball coordinates {1,2}");
                return {d, std::nullopt, false};
            } else {
                const int n = complex_dim(d);
                if (n < 3) throw not_applicable("ProductExtend", d, "needs n >= 3");
                const Domain sh = shadow(d, x.i, x.j);
                const auto out = apply_factor(x.inner, sh);
                const auto cap = ball_capacity(out.result);
                if (!cap) throw not_applicable("ProductExtend", d, "inner rule must end in a 4-ball, got " + describe(out.result));
                return {BallProduct(*cap, n), out.margin, out.strict};
            }
        },
        r);
}

inline std::string rule_name(const Rule& r) {
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Inclusion>) return "Inclusion";
            else if constexpr (std::is_same_v<T, Scale>) return "Scale";
            else if constexpr (std::is_same_v<T, CoordSwap>) return "CoordSwap";
            else if constexpr (std::is_same_v<T, Fold>) return "Fold";
            else if constexpr (std::is_same_v<T, ProductExtend>) return "ProductExtend";
            else if constexpr (std::is_same_v<T, AxiomE14>) return "AxiomE14";
            else return "AxiomMS";
        },
        r);
}

/// Axiom names consumed by a rule (including inside ProductExtend).
inline std::vector<std::string> axioms_of(const Rule& r) {
    if (std::holds_alternative<AxiomE14>(r)) return {"E14"};
    if (std::holds_alternative<AxiomMS>(r)) return {"MS"};
    if (const auto* pe = std::get_if<ProductExtend>(&r)) {
        if (std::holds_alternative<AxiomE14>(pe->inner)) return {"E14"};
        if (std::holds_alternative<AxiomMS>(pe->inner)) return {"MS"};
    }
    return {};
}

// ---------------------------------------------------------- certificates

struct Step {
    Rule rule;
    Domain result;
    std::optional<Rat> margin;
    bool strict = false;
    friend bool operator==(const Step&, const Step&) = default;
};

struct Certificate {
    Domain source;
    Domain target;
    std::vector<Step> steps;
    Rat slack;                            // least recorded margin, 0 if none
    std::vector<std::string> axioms_used; // sorted, unique
    bool interior = false;                // image in the interior of target
    bool boundary = false;                // some step has margin exactly 0
};

/// Builds a certificate by applying rules in order from source.
inline Certificate make_certificate(const Domain& source, const std::vector<Rule>& rules) {
    Certificate c{source, source, {}, Rat(0), {}, false, false};
    Domain cur = source;
    std::optional<Rat> least;
    for (const auto& r : rules) {
        auto out = apply_rule(r, cur);
        c.steps.push_back({r, out.result, out.margin, out.strict});
        if (out.margin) least = least ? min(*least, *out.margin) : *out.margin;
        c.boundary = c.boundary || (out.margin && out.margin->is_zero());
        c.interior = c.interior || out.strict;
        for (auto& a : axioms_of(r)) c.axioms_used.push_back(a);
        cur = out.result;
    }
    c.target = cur;
    c.slack = least.value_or(Rat(0));
    std::sort(c.axioms_used.begin(), c.axioms_used.end());
    c.axioms_used.erase(std::unique(c.axioms_used.begin(), c.axioms_used.end()), c.axioms_used.end());
    return c;
}

struct VerifyResult {
    bool ok = true;
    std::optional<std::size_t> failing_step; // 0-based
    std::string message;
};

/// Replays every step from the source and compares against the record.
inline VerifyResult verify_certificate(const Certificate& c) {
    Domain cur = c.source;
    std::optional<Rat> least;
    bool interior = false;
    bool boundary = false;
    std::vector<std::string> axioms;
    for (std::size_t k = 0; k < c.steps.size(); ++k) {
        const auto& s = c.steps[k];
        auto fail = [&](const std::string& why) {
            return VerifyResult{false, k, "step " + std::to_string(k + 1) + " (" + rule_name(s.rule) + "): " + why};
        };
        RuleOutcome out{cur, std::nullopt, false};
        try {
            out = apply_rule(s.rule, cur);
        } catch (const Error& e) {
            return fail(e.what());
        }
        if (!(out.result == s.result))
            return fail("replay gives " + describe(out.result) + ", recorded " + describe(s.result));
        if (out.margin != s.margin) return fail("margin mismatch");
        if (out.strict != s.strict) return fail("strictness mismatch");
        if (out.margin) least = least ? min(*least, *out.margin) : *out.margin;
        boundary = boundary || (out.margin && out.margin->is_zero());
        interior = interior || out.strict;
        for (auto& a : axioms_of(s.rule)) axioms.push_back(a);
        cur = out.result;
    }
    const std::size_t last = c.steps.empty() ? 0 : c.steps.size() - 1;
    auto fail_end = [&](const std::string& why) { return VerifyResult{false, last, why}; };
    if (!(cur == c.target)) return fail_end("chain ends at " + describe(cur) + ", not at the target " + describe(c.target));
    if (least.value_or(Rat(0)) != c.slack) return fail_end("recorded slack " + c.slack.str() + " does not match");
    if (interior != c.interior) return fail_end("interior flag does not match");
    if (boundary != c.boundary) return fail_end("boundary flag does not match");
    std::sort(axioms.begin(), axioms.end());
    axioms.erase(std::unique(axioms.begin(), axioms.end()), axioms.end());
    if (axioms != c.axioms_used) return fail_end("axiom list does not match");
    return {};
}

// --------------------------------------------------------------- search

struct DeriveOptions {
    int depth = 6;
    std::vector<std::string> disabled_axioms; // "E14", "MS"
    bool require_interior = true;             // target is read as open
};

inline constexpr int kMaxDeriveDepth = 6;

namespace detail {

struct TargetBall {
    Rat capacity;
    int n; // 2 for a round 4-ball, otherwise a ball product
};

inline std::optional<TargetBall> target_ball(const Domain& t) {
    if (auto c = ball_capacity(t)) return TargetBall{*c, 2};
    if (const auto* b = std::get_if<BallProduct>(&t)) return TargetBall{b->radius, b->n};
    return std::nullopt;
}

inline bool enabled(const DeriveOptions& o, const char* name) {
    return std::find(o.disabled_axioms.begin(), o.disabled_axioms.end(), name) == o.disabled_axioms.end();
}

/// 4-dimensional rules that turn a 2-dimensional domain d into a ball of
/// capacity at most T, in preference order.
inline std::vector<FactorRule> ball_rules(const Domain& d, const Rat& T, const DeriveOptions& o) {
    std::vector<FactorRule> out;
    out.push_back(Inclusion{ball(T)});
    if (const auto p = ellipsoid_pair(d)) {
        if (enabled(o, "MS") && p->second == Rat(2) * p->first && Rat(2) * p->first <= T) out.push_back(AxiomMS{});
        if (enabled(o, "E14") && p->second == Rat(4) * p->first && Rat(2) * p->first <= T) out.push_back(AxiomE14{});
    }
    if (const auto w = fold_factor(d); w && complex_dim(d) == 2) {
        const Rat F0 = fold_base(*w);
        if (F0 < T) out.push_back(Fold{(T - F0) / Rat(2)});
    }
    return out;
}

/// Inclusions of a 2-dimensional d into E(x, kx) or E(kx, x) sized so the
/// matching axiom lands inside the ball of capacity T.
inline std::vector<Rule> axiom_targets(const Domain& d, const Rat& T, const DeriveOptions& o) {
    std::vector<Rule> out;
    const auto verts = moment_vertices_2d(d);
    if (!verts) return out;
    auto add = [&](const Rat& k, bool strict_axiom) {
        for (int orient = 0; orient < 2; ++orient) {
            // d ⊆ E(x, kx) iff x >= R_1 + R_2/k at every vertex
            const Rat w1 = orient == 0 ? Rat(1) : Rat(1) / k;
            const Rat w2 = orient == 0 ? Rat(1) / k : Rat(1);
            const Rat xmin = sup_linear(*verts, w1, w2);
            if (xmin.sign() <= 0) continue;
            const Rat half = T / Rat(2);
            Rat x;
            if (xmin < half) x = (xmin + half) / Rat(2);
            else if (xmin == half && strict_axiom) x = xmin;
            else continue;
            Domain e = orient == 0 ? Domain(Ellipsoid({x, k * x})) : Domain(Ellipsoid({k * x, x}));
            if (e == d) continue;
            out.push_back(Inclusion{e});
        }
    };
    if (enabled(o, "E14")) add(Rat(4), false);
    if (enabled(o, "MS")) add(Rat(2), true);
    return out;
}

inline std::vector<Rule> candidates(const Domain& d, const Domain& target, const DeriveOptions& o) {
    std::vector<Rule> out;
    const int n = complex_dim(d);
    out.push_back(Inclusion{target});
    if (const auto p = ellipsoid_pair(d)) {
        if (enabled(o, "E14") && p->second == Rat(4) * p->first) out.push_back(AxiomE14{});
        if (enabled(o, "MS") && p->second == Rat(2) * p->first) out.push_back(AxiomMS{});
    }
    const auto tb = target_ball(target);
    if (tb && tb->n == n) {
        if (const auto w = fold_factor(d)) {
            const Rat F0 = fold_base(*w);
            if (F0 < tb->capacity && (n == 2 || std::holds_alternative<BallProduct>(target)))
                out.push_back(Fold{(tb->capacity - F0) / Rat(2)});
        }
        if (n >= 3 && std::holds_alternative<BallProduct>(target) && !std::holds_alternative<BallProduct>(d)) {
            for (int i = 1; i <= n; ++i)
                for (int j = i + 1; j <= n; ++j) {
                    Domain sh = d;
                    try {
                        sh = shadow(d, i, j);
                    } catch (const Error&) {
                        continue;
                    }
                    for (auto& f : ball_rules(sh, tb->capacity, o)) out.push_back(ProductExtend{f, i, j});
                }
        }
        if (n == 2) {
            auto extra = axiom_targets(d, tb->capacity, o);
            out.insert(out.end(), extra.begin(), extra.end());
        }
    }
    if (std::holds_alternative<Ellipsoid>(d) || std::holds_alternative<Polydisk>(d)) {
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) {
                std::vector<int> perm(static_cast<std::size_t>(n));
                for (int k = 0; k < n; ++k) perm[static_cast<std::size_t>(k)] = k + 1;
                std::swap(perm[static_cast<std::size_t>(i - 1)], perm[static_cast<std::size_t>(j - 1)]);
                out.push_back(CoordSwap{perm});
            }
    }
    return out;
}

} // namespace detail

/// Bounded iterative-deepening search for a certificate source -> target.
/// Absence is not an impossibility proof.
inline std::optional<Certificate> derive_embedding(const Domain& source, const Domain& target,
                                                   const DeriveOptions& opt = {}) {
    if (opt.depth < 0 || opt.depth > kMaxDeriveDepth)
        throw Error(ErrorCode::InvalidArgument, "depth must lie in 0.." + std::to_string(kMaxDeriveDepth));
    for (const auto& a : opt.disabled_axioms) axiom_entry(a);
    if (source == target && !opt.require_interior) return make_certificate(source, {});

    // failed[key] = largest remaining depth already searched without success
    std::map<std::string, int> failed;
    std::vector<Rule> path;
    auto key = [](const Domain& d, bool interior) { return canonical(d) + (interior ? "|i" : "|c"); };

    auto dfs = [&](auto&& self, const Domain& cur, bool interior, int left) -> bool {
        if (left == 0) return false;
        const auto k = key(cur, interior);
        if (auto it = failed.find(k); it != failed.end() && it->second >= left) return false;
        for (const auto& r : detail::candidates(cur, target, opt)) {
            RuleOutcome out{cur, std::nullopt, false};
            try {
                out = apply_rule(r, cur);
            } catch (const Error& e) {
                if (e.code() == ErrorCode::NotApplicable || e.code() == ErrorCode::UnsupportedPair) continue;
                throw;
            }
            if (out.result == cur && !(out.strict && !interior)) continue;
            const bool now = interior || out.strict;
            path.push_back(r);
            if (out.result == target && (now || !opt.require_interior)) return true;
            if (self(self, out.result, now, left - 1)) return true;
            path.pop_back();
        }
        auto& f = failed[k];
        f = std::max(f, left);
        return false;
    };
    for (int d = 1; d <= opt.depth; ++d) {
        path.clear();
        if (dfs(dfs, source, false, d)) return make_certificate(source, path);
    }
    return std::nullopt;
}

// ------------------------------------------------------------------ json

inline Json to_json(const FactorRule& r);

inline Json to_json(const Rule& r) {
    return std::visit(
        [](const auto& x) -> Json {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Inclusion>) return {{"rule", "inclusion"}, {"target", to_json(x.target)}};
            else if constexpr (std::is_same_v<T, Scale>) return {{"rule", "scale"}, {"lambda", to_json(x.lambda)}};
            else if constexpr (std::is_same_v<T, CoordSwap>) return {{"rule", "coord_swap"}, {"perm", x.perm}};
            else if constexpr (std::is_same_v<T, Fold>) return {{"rule", "fold"}, {"epsilon", to_json(x.epsilon)}};
            else if constexpr (std::is_same_v<T, ProductExtend>)
                return {{"rule", "product_extend"}, {"inner", to_json(x.inner)}, {"coords", {x.i, x.j}}};
            else if constexpr (std::is_same_v<T, AxiomE14>) return {{"rule", "axiom"}, {"name", "E14"}};
            else return {{"rule", "axiom"}, {"name", "MS"}};
        },
        r);
}

inline Json to_json(const FactorRule& r) {
    return std::visit([](const auto& x) { return to_json(Rule{x}); }, r);
}

inline Rule rule_from_json(const Json& j, const std::string& where) {
    const Json& kind = field(j, "rule", where);
    if (!kind.is_string()) throw Error(ErrorCode::Parse, where + ".rule: expected a string");
    const std::string k = kind.get<std::string>();
    if (k == "inclusion") return Inclusion{domain_from_json(field(j, "target", where), where + ".target")};
    if (k == "scale") return Scale{rat_from_json(field(j, "lambda", where), where + ".lambda")};
    if (k == "fold") return Fold{rat_from_json(field(j, "epsilon", where), where + ".epsilon")};
    if (k == "coord_swap") {
        const Json& p = field(j, "perm", where);
        if (!p.is_array()) throw Error(ErrorCode::Parse, where + ".perm: expected an array");
        std::vector<int> perm;
        for (std::size_t i = 0; i < p.size(); ++i) perm.push_back(int_from_json(p[i], where + ".perm"));
        return CoordSwap{perm};
    }
    if (k == "axiom") {
        const Json& n = field(j, "name", where);
        if (n == "E14") return AxiomE14{};
        if (n == "MS") return AxiomMS{};
        throw Error(ErrorCode::Parse, where + ".name: unknown axiom");
    }
    if (k == "product_extend") {
        const Rule inner = rule_from_json(field(j, "inner", where), where + ".inner");
        const Json& c = field(j, "coords", where);
        if (!c.is_array() || c.size() != 2) throw Error(ErrorCode::Parse, where + ".coords: expected [i, j]");
        FactorRule f = AxiomMS{};
        if (const auto* x = std::get_if<Inclusion>(&inner)) f = *x;
        else if (const auto* x = std::get_if<Fold>(&inner)) f = *x;
        else if (std::holds_alternative<AxiomE14>(inner)) f = AxiomE14{};
        else if (!std::holds_alternative<AxiomMS>(inner)) throw Error(ErrorCode::Parse, where + ".inner: not a factor rule");
        return ProductExtend{f, int_from_json(c[0], where + ".coords"), int_from_json(c[1], where + ".coords")};
    }
    throw Error(ErrorCode::Parse, where + ".rule: unknown rule '" + k + "'");
}

inline Json to_json(const Certificate& c) {
    Json steps = Json::array();
    for (const auto& s : c.steps)
        steps.push_back({{"rule", to_json(s.rule)},
                         {"result", to_json(s.result)},
                         {"margin", s.margin ? to_json(*s.margin) : Json(nullptr)},
                         {"strict", s.strict}});
    return {{"source", to_json(c.source)}, {"target", to_json(c.target)},   {"steps", steps},
            {"slack", to_json(c.slack)},   {"axioms_used", c.axioms_used},  {"interior", c.interior},
            {"boundary", c.boundary}};
}

inline Certificate certificate_from_json(const Json& j) {
    const std::string w = "certificate";
    Certificate c{domain_from_json(field(j, "source", w), w + ".source"),
                  domain_from_json(field(j, "target", w), w + ".target"),
                  {},
                  rat_from_json(field(j, "slack", w), w + ".slack"),
                  {},
                  false,
                  false};
    const Json& steps = field(j, "steps", w);
    if (!steps.is_array()) throw Error(ErrorCode::Parse, w + ".steps: expected an array");
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const std::string sw = w + ".steps[" + std::to_string(i) + "]";
        const Json& s = steps[i];
        const Json& m = field(s, "margin", sw);
        const Json& st = field(s, "strict", sw);
        if (!st.is_boolean()) throw Error(ErrorCode::Parse, sw + ".strict: expected a boolean");
        c.steps.push_back({rule_from_json(field(s, "rule", sw), sw + ".rule"),
                           domain_from_json(field(s, "result", sw), sw + ".result"),
                           m.is_null() ? std::nullopt : std::optional<Rat>(rat_from_json(m, sw + ".margin")),
                           st.get<bool>()});
    }
    const Json& ax = field(j, "axioms_used", w);
    if (!ax.is_array()) throw Error(ErrorCode::Parse, w + ".axioms_used: expected an array");
    for (const auto& a : ax) {
        if (!a.is_string()) throw Error(ErrorCode::Parse, w + ".axioms_used: expected strings");
        c.axioms_used.push_back(a.get<std::string>());
    }
    const Json& in = field(j, "interior", w);
    const Json& bd = field(j, "boundary", w);
    if (!in.is_boolean() || !bd.is_boolean()) throw Error(ErrorCode::Parse, w + ": interior/boundary must be booleans");
    c.interior = in.get<bool>();
    c.boundary = bd.get<bool>();
    return c;
}

} // namespace symcap
