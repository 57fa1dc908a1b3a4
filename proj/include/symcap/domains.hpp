#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "symcap/error.hpp"
#include "symcap/rat.hpp"

namespace symcap {

// All domains are toric: membership depends only on the moment coordinates
// R_j = pi |z_j|^2, so every inequality below is written in those.

namespace detail {
inline void require_positive(const std::vector<Rat>& v, const char* what, std::size_t min_len) {
    if (v.size() < min_len)
        throw Error(ErrorCode::InvalidArgument,
                    std::string(what) + " needs at least " + std::to_string(min_len) + " entries");
    for (const auto& x : v)
        if (x.sign() <= 0) throw Error(ErrorCode::InvalidArgument, std::string(what) + " entries must be positive");
}
} // namespace detail

/// E(a_1..a_n) = { sum_j R_j / a_j <= 1 }.
struct Ellipsoid {
    std::vector<Rat> coeffs;

    Ellipsoid() = default;
    explicit Ellipsoid(std::vector<Rat> c) : coeffs(std::move(c)) { detail::require_positive(coeffs, "ellipsoid", 2); }
    int dim() const noexcept { return static_cast<int>(coeffs.size()); }
    const Rat& operator[](int k) const { return coeffs.at(static_cast<std::size_t>(k - 1)); } // 1-based
    friend auto operator<=>(const Ellipsoid&, const Ellipsoid&) = default;
};

/// P(a_1..a_n) = { R_j <= a_j for all j }.
struct Polydisk {
    std::vector<Rat> widths;

    Polydisk() = default;
    explicit Polydisk(std::vector<Rat> w) : widths(std::move(w)) { detail::require_positive(widths, "polydisk", 2); }
    int dim() const noexcept { return static_cast<int>(widths.size()); }
    const Rat& operator[](int k) const { return widths.at(static_cast<std::size_t>(k - 1)); }
    friend auto operator<=>(const Polydisk&, const Polydisk&) = default;
};

/// Q(b, a_2..a_n) = { R_1 <= b, sum_{j>=2} R_j / a_j <= 1 }.
/// Coordinate k (1-based) has coefficient b for k = 1 and tail[k-2] otherwise.
struct Polylike {
    Rat b;
    std::vector<Rat> tail;

    Polylike() = default;
    Polylike(Rat b_, std::vector<Rat> t) : b(b_), tail(std::move(t)) {
        if (b.sign() <= 0) throw Error(ErrorCode::InvalidArgument, "polylike disk factor must be positive");
        detail::require_positive(tail, "polylike tail", 1);
    }
    int dim() const noexcept { return static_cast<int>(tail.size()) + 1; }
    const Rat& operator[](int k) const { return k == 1 ? b : tail.at(static_cast<std::size_t>(k - 2)); }
    friend auto operator<=>(const Polylike&, const Polylike&) = default;
};

/// base ∩ { R_axis >= cut } for a 4-dimensional ellipsoid base.
struct TruncatedEllipsoid {
    Ellipsoid base;
    int axis = 2;
    Rat cut;

    TruncatedEllipsoid() = default;
    TruncatedEllipsoid(Ellipsoid e, int ax, Rat c) : base(std::move(e)), axis(ax), cut(c) {
        if (base.dim() != 2) throw Error(ErrorCode::InvalidArgument, "truncated ellipsoid base must be 2-dimensional");
        if (axis != 1 && axis != 2) throw Error(ErrorCode::InvalidArgument, "truncation axis must be 1 or 2");
        if (cut.sign() < 0) throw Error(ErrorCode::InvalidArgument, "truncation level must be nonnegative");
        if (!(cut < base[axis])) throw Error(ErrorCode::InvalidArgument, "truncation leaves an empty region");
    }
    int dim() const noexcept { return 2; }
    friend auto operator<=>(const TruncatedEllipsoid&, const TruncatedEllipsoid&) = default;
};

/// B^4(R) x R^{2(n-2)}: { R_1 + R_2 <= R }, other coordinates free.
struct BallProduct {
    Rat radius;
    int n = 2;

    BallProduct() = default;
    BallProduct(Rat r, int n_) : radius(r), n(n_) {
        if (radius.sign() <= 0) throw Error(ErrorCode::InvalidArgument, "ball capacity must be positive");
        if (n < 2) throw Error(ErrorCode::InvalidArgument, "ball product needs n >= 2");
    }
    int dim() const noexcept { return n; }
    friend auto operator<=>(const BallProduct&, const BallProduct&) = default;
};

using Domain = std::variant<Ellipsoid, Polydisk, Polylike, TruncatedEllipsoid, BallProduct>;

inline Ellipsoid ball(Rat capacity, int n = 2) { return Ellipsoid(std::vector<Rat>(static_cast<std::size_t>(n), capacity)); }

inline int complex_dim(const Domain& d) {
    return std::visit([](const auto& x) { return x.dim(); }, d);
}

inline std::string_view kind_name(const Domain& d) {
    static constexpr std::array<std::string_view, 5> names{"ellipsoid", "polydisk", "polylike", "truncated_ellipsoid",
                                                           "ball_product"};
    return names[d.index()];
}

inline std::string describe(const Domain& d) {
    auto list = [](const std::vector<Rat>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].str();
        return s;
    };
    return std::visit(
        [&](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Ellipsoid>) return "E(" + list(x.coeffs) + ")";
            else if constexpr (std::is_same_v<T, Polydisk>) return "P(" + list(x.widths) + ")";
            else if constexpr (std::is_same_v<T, Polylike>) return "Q(" + x.b.str() + ";" + list(x.tail) + ")";
            else if constexpr (std::is_same_v<T, TruncatedEllipsoid>)
                return "E(" + list(x.base.coeffs) + ")&{R" + std::to_string(x.axis) + ">=" + x.cut.str() + "}";
            else return "B4(" + x.radius.str() + ")xR^" + std::to_string(2 * (x.n - 2));
        },
        d);
}

// ---------------------------------------------------------------- volume

/// Euclidean volume of the 2n-dimensional domain (normalized so that a disk
/// of capacity a has area a).
inline Extended volume(const Domain& d) {
    auto product = [](const std::vector<Rat>& v) {
        Rat p = 1;
        for (const auto& x : v) p *= x;
        return p;
    };
    return std::visit(
        [&](const auto& x) -> Extended {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Ellipsoid>) return {product(x.coeffs) / factorial(x.dim())};
            else if constexpr (std::is_same_v<T, Polydisk>) return {product(x.widths)};
            else if constexpr (std::is_same_v<T, Polylike>) return {x.b * product(x.tail) / factorial(x.dim() - 1)};
            else if constexpr (std::is_same_v<T, TruncatedEllipsoid>) {
                // area of { R_o/c_o + R_a/c_a <= 1, R_a >= t } = c_o (c_a - t)^2 / (2 c_a)
                const Rat& ca = x.base[x.axis];
                const Rat& co = x.base[3 - x.axis];
                const Rat gap = ca - x.cut;
                return {co * gap * gap / (Rat(2) * ca)};
            } else return Extended::infinite();
        },
        d);
}

// -------------------------------------------------------------- scaling

inline Domain scale(const Domain& d, const Rat& lambda) {
    if (lambda.sign() <= 0) throw Error(ErrorCode::InvalidArgument, "scale factor must be positive");
    auto mul = [&](std::vector<Rat> v) {
        for (auto& x : v) x *= lambda;
        return v;
    };
    return std::visit(
        [&](const auto& x) -> Domain {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Ellipsoid>) return Ellipsoid(mul(x.coeffs));
            else if constexpr (std::is_same_v<T, Polydisk>) return Polydisk(mul(x.widths));
            else if constexpr (std::is_same_v<T, Polylike>) return Polylike(x.b * lambda, mul(x.tail));
            else if constexpr (std::is_same_v<T, TruncatedEllipsoid>)
                return TruncatedEllipsoid(Ellipsoid(mul(x.base.coeffs)), x.axis, x.cut * lambda);
            else return BallProduct(x.radius * lambda, x.n);
        },
        d);
}

// ------------------------------------------------------------ inclusion

struct InclusionVerdict {
    enum class Kind { Inside, Boundary, Outside };
    Kind kind = Kind::Outside;
    /// Slack of the binding inequality (negative when Outside).
    Rat margin;
    /// The binding inequality, e.g. "sum R_j/c_j: 15/16 <= 1".
    std::string witness;

    bool inside() const noexcept { return kind == Kind::Inside; }
    bool contained() const noexcept { return kind != Kind::Outside; }
};

inline std::string_view to_string(InclusionVerdict::Kind k) {
    switch (k) {
    case InclusionVerdict::Kind::Inside: return "Inside";
    case InclusionVerdict::Kind::Boundary: return "Boundary";
    case InclusionVerdict::Kind::Outside: return "Outside";
    }
    return "?";
}

namespace detail {

inline InclusionVerdict verdict_from_slack(Rat slack, std::string witness) {
    using K = InclusionVerdict::Kind;
    const K kind = slack.sign() > 0 ? K::Inside : slack.is_zero() ? K::Boundary : K::Outside;
    return {kind, slack, std::move(witness)};
}

/// Coordinatewise test inner_i <= outer_i; the binding coordinate is the one
/// with the least slack.
inline InclusionVerdict coordinatewise(const std::vector<Rat>& outer, const std::vector<Rat>& inner) {
    std::size_t worst = 0;
    for (std::size_t i = 1; i < outer.size(); ++i)
        if (outer[i] - inner[i] < outer[worst] - inner[worst]) worst = i;
    return verdict_from_slack(outer[worst] - inner[worst], "axis " + std::to_string(worst + 1) + ": " +
                                                                inner[worst].str() + " <= " + outer[worst].str());
}

/// Vertices of the moment polygon of a truncated ellipsoid, as (R_1, R_2).
inline std::vector<std::array<Rat, 2>> moment_vertices(const TruncatedEllipsoid& t) {
    const int a = t.axis;
    const int o = 3 - a;
    const Rat& ca = t.base[a];
    const Rat& co = t.base[o];
    const Rat width = co * (Rat(1) - t.cut / ca); // extent along the other axis at the cut
    std::vector<std::array<Rat, 2>> pts;
    auto push = [&](Rat along_axis, Rat along_other) {
        std::array<Rat, 2> p;
        p[static_cast<std::size_t>(a - 1)] = along_axis;
        p[static_cast<std::size_t>(o - 1)] = along_other;
        pts.push_back(p);
    };
    push(t.cut, 0);
    push(t.cut, width);
    push(ca, 0);
    return pts;
}

/// Moment polygon vertices of any 2-dimensional domain (E, P, TE, Q with a
/// single tail entry). Returns nullopt for other shapes.
inline std::optional<std::vector<std::array<Rat, 2>>> moment_vertices_2d(const Domain& d) {
    using V = std::vector<std::array<Rat, 2>>;
    if (complex_dim(d) != 2) return std::nullopt;
    if (const auto* e = std::get_if<Ellipsoid>(&d)) return V{{Rat(0), Rat(0)}, {e->coeffs[0], Rat(0)}, {Rat(0), e->coeffs[1]}};
    if (const auto* p = std::get_if<Polydisk>(&d))
        return V{{Rat(0), Rat(0)}, {p->widths[0], Rat(0)}, {Rat(0), p->widths[1]}, {p->widths[0], p->widths[1]}};
    if (const auto* q = std::get_if<Polylike>(&d))
        return V{{Rat(0), Rat(0)}, {q->b, Rat(0)}, {Rat(0), q->tail[0]}, {q->b, q->tail[0]}};
    if (const auto* t = std::get_if<TruncatedEllipsoid>(&d)) return moment_vertices(*t);
    return std::nullopt;
}

inline Rat sup_linear(const std::vector<std::array<Rat, 2>>& verts, const Rat& w1, const Rat& w2) {
    Rat best = verts.front()[0] * w1 + verts.front()[1] * w2;
    for (const auto& v : verts) best = max(best, v[0] * w1 + v[1] * w2);
    return best;
}

inline void require_same_dim(int a, int b) {
    if (a != b) throw Error(ErrorCode::UnsupportedPair, "dimension mismatch " + std::to_string(a) + " vs " + std::to_string(b));
}

} // namespace detail

/// Exact inclusion test inner ⊆ outer for the supported pairs:
/// E⊆E, P⊆E, Q⊆E, TE⊆E (2-dimensional), Q⊆P, P⊆P, {E,P,Q}⊆B^4×R, and
/// B^4×R ⊆ B^4×R. Equality in the binding inequality gives Boundary.
inline InclusionVerdict includes(const Domain& outer, const Domain& inner) {
    using namespace detail;
    auto unsupported = [&]() {
        return Error(ErrorCode::UnsupportedPair,
                     std::string(kind_name(inner)) + " inside " + std::string(kind_name(outer)));
    };
    require_same_dim(complex_dim(outer), complex_dim(inner));

    if (const auto* eo = std::get_if<Ellipsoid>(&outer)) {
        const auto& c = eo->coeffs;
        if (const auto* e = std::get_if<Ellipsoid>(&inner)) return coordinatewise(c, e->coeffs);
        if (const auto* p = std::get_if<Polydisk>(&inner)) {
            Rat s = 0;
            for (std::size_t j = 0; j < c.size(); ++j) s += p->widths[j] / c[j];
            return verdict_from_slack(Rat(1) - s, "sum a_j/c_j: " + s.str() + " <= 1");
        }
        if (const auto* q = std::get_if<Polylike>(&inner)) {
            Rat m = 0;
            for (std::size_t j = 0; j < q->tail.size(); ++j) m = max(m, q->tail[j] / c[j + 1]);
            const Rat s = q->b / c[0] + m;
            return verdict_from_slack(Rat(1) - s, "b/c_1 + max a_j/c_j: " + s.str() + " <= 1");
        }
        if (const auto* t = std::get_if<TruncatedEllipsoid>(&inner)) {
            const Rat s = sup_linear(moment_vertices(*t), Rat(1) / c[0], Rat(1) / c[1]);
            return verdict_from_slack(Rat(1) - s, "sup R_1/c_1 + R_2/c_2: " + s.str() + " <= 1");
        }
        throw unsupported();
    }
    if (const auto* po = std::get_if<Polydisk>(&outer)) {
        if (const auto* q = std::get_if<Polylike>(&inner)) {
            std::vector<Rat> in{q->b};
            in.insert(in.end(), q->tail.begin(), q->tail.end());
            return coordinatewise(po->widths, in);
        }
        if (const auto* p = std::get_if<Polydisk>(&inner)) return coordinatewise(po->widths, p->widths);
        throw unsupported();
    }
    if (const auto* bo = std::get_if<BallProduct>(&outer)) {
        std::optional<Rat> sup;
        if (const auto* e = std::get_if<Ellipsoid>(&inner)) sup = max(e->coeffs[0], e->coeffs[1]);
        else if (const auto* p = std::get_if<Polydisk>(&inner)) sup = p->widths[0] + p->widths[1];
        else if (const auto* q = std::get_if<Polylike>(&inner)) sup = q->b + q->tail[0];
        else if (const auto* b = std::get_if<BallProduct>(&inner)) sup = b->radius;
        if (!sup) throw unsupported();
        return verdict_from_slack(bo->radius - *sup, "sup R_1+R_2: " + sup->str() + " <= " + bo->radius.str());
    }
    throw unsupported();
}

/// Moment-coordinate membership test, used by sampling oracles.
inline bool contains_point(const Domain& d, const std::vector<Rat>& moment) {
    if (static_cast<int>(moment.size()) != complex_dim(d))
        throw Error(ErrorCode::InvalidArgument, "point dimension mismatch");
    for (const auto& x : moment)
        if (x.sign() < 0) return false;
    return std::visit(
        [&](const auto& x) -> bool {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Ellipsoid>) {
                Rat s = 0;
                for (std::size_t j = 0; j < moment.size(); ++j) s += moment[j] / x.coeffs[j];
                return s <= Rat(1);
            } else if constexpr (std::is_same_v<T, Polydisk>) {
                for (std::size_t j = 0; j < moment.size(); ++j)
                    if (moment[j] > x.widths[j]) return false;
                return true;
            } else if constexpr (std::is_same_v<T, Polylike>) {
                if (moment[0] > x.b) return false;
                Rat s = 0;
                for (std::size_t j = 1; j < moment.size(); ++j) s += moment[j] / x.tail[j - 1];
                return s <= Rat(1);
            } else if constexpr (std::is_same_v<T, TruncatedEllipsoid>) {
                if (moment[static_cast<std::size_t>(x.axis - 1)] < x.cut) return false;
                return moment[0] / x.base.coeffs[0] + moment[1] / x.base.coeffs[1] <= Rat(1);
            } else {
                return moment[0] + moment[1] <= x.radius;
            }
        },
        d);
}

// ----------------------------------------------------------- genericity

struct GenericityViolation {
    std::string description;
    std::pair<int, int> witness; // 1-based coordinate indices
    friend bool operator==(const GenericityViolation&, const GenericityViolation&) = default;
};

struct GenericityReport {
    std::vector<GenericityViolation> violations;
    Rat action_bound;
    bool empty() const noexcept { return violations.empty(); }
};

namespace detail {

/// Coefficients whose ratios enter the index floors, keyed by coordinate.
inline std::vector<std::pair<int, Rat>> floor_coefficients(const Domain& d) {
    std::vector<std::pair<int, Rat>> out;
    if (const auto* e = std::get_if<Ellipsoid>(&d))
        for (int k = 1; k <= e->dim(); ++k) out.emplace_back(k, (*e)[k]);
    else if (const auto* p = std::get_if<Polydisk>(&d))
        for (int k = 1; k <= p->dim(); ++k) out.emplace_back(k, (*p)[k]);
    else if (const auto* q = std::get_if<Polylike>(&d))
        for (int k = 2; k <= q->dim(); ++k) out.emplace_back(k, (*q)[k]);
    return out;
}

inline Rat default_genericity_bound(const Domain& d) {
    Rat s = 0;
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Ellipsoid>) for (const auto& c : x.coeffs) s += c;
            else if constexpr (std::is_same_v<T, Polydisk>) for (const auto& c : x.widths) s += c;
            else if constexpr (std::is_same_v<T, Polylike>) {
                s = x.b;
                for (const auto& c : x.tail) s += c;
            }
        },
        d);
    return s;
}

} // namespace detail

/// Flags exact rational coincidences that put an index floor term
/// floor(r a_k / a_j) on an integer, for every cover r with r a_k <= bound,
/// plus equality cases of the strict parameter hypotheses. Advisory only.
/// The default bound is the sum of the domain's coefficients.
inline GenericityReport genericity_check(const Domain& d, std::optional<Rat> action_bound = std::nullopt) {
    GenericityReport report;
    report.action_bound = action_bound ? *action_bound : detail::default_genericity_bound(d);
    auto& out = report.violations;

    if (const auto* q = std::get_if<Polylike>(&d)) {
        if ((*q)[2] == q->b) out.push_back({"a_2 = b (boundary of a_2 < b)", {2, 1}});
        for (int j = 3; j <= q->dim(); ++j)
            if ((*q)[j] == Rat(2) * (*q)[2])
                out.push_back({"a_" + std::to_string(j) + " = 2 a_2 (boundary of a_j > 2 a_2)", {j, 2}});
    }
    if (const auto* p = std::get_if<Polydisk>(&d); p && p->dim() >= 3) {
        const Rat m = max(Rat(2) * (*p)[1], (*p)[2]);
        if ((*p)[3] == m) out.push_back({"a_3 = max(2 a_1, a_2) (boundary of a_3 > max(2 a_1, a_2))", {3, 1}});
    }

    const auto coeffs = detail::floor_coefficients(d);
    const std::string sym = std::holds_alternative<Ellipsoid>(d) ? "c_" : "a_";
    std::set<std::pair<int, int>> seen;
    for (const auto& [k, ak] : coeffs) {
        for (const auto& [j, aj] : coeffs) {
            if (j == k) continue;
            const auto key = std::minmax(j, k);
            if (seen.count(key)) continue;
            const Rat ratio = ak / aj;
            // r * ratio is an integer exactly when r is a multiple of ratio.den()
            const std::int64_t r = ratio.den();
            if (Rat(r) * ak <= report.action_bound) {
                seen.insert(key);
                const std::string rs = r == 1 ? "" : std::to_string(r) + " ";
                out.push_back({rs + sym + std::to_string(k) + " / " + sym + std::to_string(j) + " = " +
                                   (Rat(r) * ratio).str() + " (integral floor argument)",
                               {k, j}});
            }
        }
    }
    return report;
}

} // namespace symcap
