#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "symcap/domains.hpp"
#include "symcap/error.hpp"
#include "symcap/rat.hpp"

namespace symcap {

// Closed Reeb orbits on the smoothed boundaries. Axes are 1-based and refer
// to the coordinates of the domain the orbit lives on.

/// r-fold cover of the elliptic orbit in the z_axis plane of a smoothed polylike boundary.
struct Elliptic {
    int axis = 1;
    int mult = 1;
    friend auto operator<=>(const Elliptic&, const Elliptic&) = default;
};

/// Member of the circle family in the (z_1, z_axis) plane with homology class
/// (m, q). Covers scale both entries, so (m, q) need not be coprime.
struct Hyperbolic {
    int axis = 2;
    int m = 1;
    int q = 1;
    friend auto operator<=>(const Hyperbolic&, const Hyperbolic&) = default;
};

/// (|coords|-1)-dimensional torus family on a smoothed polydisk boundary.
struct PolydiskToric {
    std::vector<int> coords; // strictly increasing
    std::vector<int> mults;  // same length, each >= 1
    friend auto operator<=>(const PolydiskToric&, const PolydiskToric&) = default;
};

/// r-fold cover of the closed orbit on the z_axis axis of an ellipsoid.
struct EllipsoidClosed {
    int axis = 1;
    int mult = 1;
    friend auto operator<=>(const EllipsoidClosed&, const EllipsoidClosed&) = default;
};

using ReebOrbit = std::variant<Elliptic, Hyperbolic, PolydiskToric, EllipsoidClosed>;

inline int family_dimension(const ReebOrbit& o) {
    if (std::holds_alternative<Hyperbolic>(o)) return 1;
    if (const auto* t = std::get_if<PolydiskToric>(&o)) return static_cast<int>(t->coords.size()) - 1;
    return 0;
}

/// Number of times the orbit covers its underlying simple orbit.
inline int covering_degree(const ReebOrbit& o) {
    return std::visit(
        [](const auto& x) -> int {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Hyperbolic>) return std::gcd(x.m, x.q);
            else if constexpr (std::is_same_v<T, PolydiskToric>) {
                int g = 0;
                for (int m : x.mults) g = std::gcd(g, m);
                return g;
            } else return x.mult;
        },
        o);
}

// ---------------------------------------------------------------- labels

inline std::string label(const ReebOrbit& o) {
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Elliptic>) return "g^" + std::to_string(x.axis) + "*" + std::to_string(x.mult);
            else if constexpr (std::is_same_v<T, Hyperbolic>)
                return "g^" + std::to_string(x.axis) + "_{" + std::to_string(x.m) + "," + std::to_string(x.q) + "}";
            else if constexpr (std::is_same_v<T, PolydiskToric>) {
                std::string s = "g{";
                for (std::size_t i = 0; i < x.coords.size(); ++i) s += (i ? "," : "") + std::to_string(x.coords[i]);
                s += "}_{";
                for (std::size_t i = 0; i < x.mults.size(); ++i) s += (i ? "," : "") + std::to_string(x.mults[i]);
                return s + "}";
            } else return "d^" + std::to_string(x.axis) + "*" + std::to_string(x.mult);
        },
        o);
}

namespace detail {

inline std::vector<int> parse_int_list(const std::string& s, const std::string& whole) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        const auto comma = s.find(',', pos);
        const std::string part = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
            throw Error(ErrorCode::Parse, "malformed orbit label '" + whole + "'");
        out.push_back(std::stoi(part));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

} // namespace detail

/// Inverse of label(): g^k*r, g^k_{m,q}, g{i,j,..}_{m_i,m_j,..}, d^k*r.
inline ReebOrbit parse_orbit_label(const std::string& s) {
    auto bad = [&]() { return Error(ErrorCode::Parse, "malformed orbit label '" + s + "'"); };
    auto ints = [&](const std::string& part) { return detail::parse_int_list(part, s); };
    if (s.size() < 4) throw bad();
    if (s.rfind("g{", 0) == 0) {
        const auto close = s.find("}_{");
        if (close == std::string::npos || s.back() != '}') throw bad();
        PolydiskToric t{ints(s.substr(2, close - 2)), ints(s.substr(close + 3, s.size() - close - 4))};
        if (t.coords.size() != t.mults.size()) throw bad();
        return t;
    }
    if ((s[0] != 'g' && s[0] != 'd') || s[1] != '^') throw bad();
    const auto star = s.find('*');
    const auto sub = s.find("_{");
    if (star != std::string::npos) {
        const auto axis = ints(s.substr(2, star - 2));
        const auto mult = ints(s.substr(star + 1));
        if (axis.size() != 1 || mult.size() != 1) throw bad();
        if (s[0] == 'g') return Elliptic{axis[0], mult[0]};
        return EllipsoidClosed{axis[0], mult[0]};
    }
    if (s[0] == 'g' && sub != std::string::npos && s.back() == '}') {
        const auto axis = ints(s.substr(2, sub - 2));
        const auto mq = ints(s.substr(sub + 2, s.size() - sub - 3));
        if (axis.size() != 1 || mq.size() != 2) throw bad();
        return Hyperbolic{axis[0], mq[0], mq[1]};
    }
    throw bad();
}

// ------------------------------------------------------------- smoothing

/// How the corner of the boundary is smoothed. Infinitesimal treats the
/// smoothing slope as a formal positive infinitesimal: every floor of
/// epsilon times a finite quantity is 0 and no action correction survives.
struct SmoothingPolicy {
    std::optional<Rat> epsilon;
    std::optional<Rat> delta;

    static SmoothingPolicy infinitesimal() { return {}; }
    static SmoothingPolicy explicit_slope(Rat eps, Rat del) {
        if (!(Rat(0) < del && del < eps && eps < Rat(1)))
            throw Error(ErrorCode::InvalidArgument, "explicit smoothing needs 0 < delta < epsilon < 1");
        return {eps, del};
    }
    bool is_infinitesimal() const noexcept { return !epsilon.has_value(); }
};

// ---------------------------------------------------------------- checks

namespace detail {

inline Error mismatch(const ReebOrbit& o, const Domain& d) {
    return Error(ErrorCode::SpeciesMismatch, label(o) + " is not an orbit of " + std::string(kind_name(d)));
}

inline void validate_orbit(const ReebOrbit& o, const Domain& d) {
    const int n = complex_dim(d);
    auto bad = [&](const std::string& why) { return Error(ErrorCode::InvalidArgument, label(o) + ": " + why); };
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Elliptic>) {
                if (!std::holds_alternative<Polylike>(d)) throw mismatch(o, d);
                if (x.axis < 1 || x.axis > n) throw bad("axis out of range");
                if (x.mult < 1) throw bad("multiplicity must be positive");
            } else if constexpr (std::is_same_v<T, Hyperbolic>) {
                if (!std::holds_alternative<Polylike>(d)) throw mismatch(o, d);
                if (x.axis < 2 || x.axis > n) throw bad("axis out of range");
                if (x.m < 1 || x.q < 1) throw bad("multiplicities must be positive");
            } else if constexpr (std::is_same_v<T, PolydiskToric>) {
                if (!std::holds_alternative<Polydisk>(d)) throw mismatch(o, d);
                if (x.coords.empty() || x.coords.size() != x.mults.size()) throw bad("malformed index set");
                for (std::size_t i = 0; i < x.coords.size(); ++i) {
                    if (x.coords[i] < 1 || x.coords[i] > n) throw bad("coordinate out of range");
                    if (i && x.coords[i] <= x.coords[i - 1]) throw bad("coordinates must increase");
                    if (x.mults[i] < 1) throw bad("multiplicities must be positive");
                }
            } else {
                if (!std::holds_alternative<Ellipsoid>(d)) throw mismatch(o, d);
                if (x.axis < 1 || x.axis > n) throw bad("axis out of range");
                if (x.mult < 1) throw bad("multiplicity must be positive");
            }
        },
        o);
}

/// Coefficient of coordinate k for the three orbit-carrying species.
inline Rat coefficient(const Domain& d, int k) {
    if (const auto* q = std::get_if<Polylike>(&d)) return (*q)[k];
    if (const auto* p = std::get_if<Polydisk>(&d)) return (*p)[k];
    if (const auto* e = std::get_if<Ellipsoid>(&d)) return (*e)[k];
    throw Error(ErrorCode::SpeciesMismatch, std::string(kind_name(d)) + " carries no orbit model");
}

struct FloorSum {
    std::int64_t value = 0;
    bool boundary = false;
    void add(const Rat& x) {
        value += x.floor();
        boundary = boundary || x.is_integer();
    }
};

} // namespace detail

// ---------------------------------------------------------------- action

inline Rat action(const ReebOrbit& o, const Domain& d) {
    detail::validate_orbit(o, d);
    return std::visit(
        [&](const auto& x) -> Rat {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Elliptic>) return Rat(x.mult) * detail::coefficient(d, x.axis);
            else if constexpr (std::is_same_v<T, Hyperbolic>) {
                const auto& q = std::get<Polylike>(d);
                return Rat(x.m) * q.b + Rat(x.q) * q[x.axis];
            } else if constexpr (std::is_same_v<T, PolydiskToric>) {
                Rat s = 0;
                for (std::size_t i = 0; i < x.coords.size(); ++i) s += Rat(x.mults[i]) * detail::coefficient(d, x.coords[i]);
                return s;
            } else return Rat(x.mult) * detail::coefficient(d, x.axis);
        },
        o);
}

struct ActionBounds {
    Rat lower;
    Rat value;
    Rat upper;
};

/// Action with its smoothing error band. The band is value * (1 -+ epsilon)
/// in explicit mode and collapses to the value in infinitesimal mode.
inline ActionBounds action_bounds(const ReebOrbit& o, const Domain& d, const SmoothingPolicy& policy) {
    const Rat v = action(o, d);
    if (policy.is_infinitesimal()) return {v, v, v};
    const Rat spread = v * *policy.epsilon;
    return {v - spread, v, v + spread};
}

// ------------------------------------------------------ Conley-Zehnder

struct CzIndex {
    Rat value;
    /// Some floor argument was an exact integer, i.e. the coefficients are
    /// not generic for this orbit. The value is still the exact floor.
    bool floor_boundary = false;
    friend bool operator==(const CzIndex&, const CzIndex&) = default;
};

inline CzIndex cz_index(const ReebOrbit& o, const Domain& d,
                        const SmoothingPolicy& policy = SmoothingPolicy::infinitesimal()) {
    detail::validate_orbit(o, d);
    const int n = complex_dim(d);
    const bool inf = policy.is_infinitesimal();
    return std::visit(
        [&](const auto& x) -> CzIndex {
            using T = std::decay_t<decltype(x)>;
            detail::FloorSum floors;
            if constexpr (std::is_same_v<T, Elliptic>) {
                const auto& q = std::get<Polylike>(d);
                const Rat r = x.mult;
                if (x.axis == 1) {
                    if (!inf)
                        for (int j = 2; j <= n; ++j) floors.add(*policy.epsilon * r / q[j]);
                } else {
                    if (!inf) floors.add(*policy.epsilon * r * q[x.axis]);
                    for (int j = 2; j <= n; ++j)
                        if (j != x.axis) floors.add(r * q[x.axis] / q[j]);
                }
                return {Rat(2 * x.mult + n - 1 + 2 * floors.value), floors.boundary};
            } else if constexpr (std::is_same_v<T, Hyperbolic>) {
                const auto& q = std::get<Polylike>(d);
                for (int j = 2; j <= n; ++j)
                    if (j != x.axis) floors.add(Rat(x.q) * q[x.axis] / q[j]);
                return {Rat(2 * (x.m + x.q) + (n - 2) + 2 * floors.value) + Rat(1, 2), floors.boundary};
            } else if constexpr (std::is_same_v<T, PolydiskToric>) {
                throw Error(ErrorCode::IndexUnspecified, "no Conley-Zehnder formula for polydisk torus families (" +
                                                             label(o) + ")");
            } else {
                const auto& e = std::get<Ellipsoid>(d);
                const Rat r = x.mult;
                for (int j = 1; j <= n; ++j)
                    if (j != x.axis) floors.add(r * e[x.axis] / e[j]);
                return {Rat(2 * x.mult + n - 1 + 2 * floors.value), floors.boundary};
            }
        },
        o);
}

// ----------------------------------------------------------- enumeration

struct OrbitEntry {
    ReebOrbit orbit;
    Rat action;
    std::optional<CzIndex> cz; // absent for polydisk families
    bool at_bound = false;     // action equals the bound exactly
};

/// Every orbit of the domain's species with action <= bound, sorted by
/// action and then by orbit data.
inline std::vector<OrbitEntry> enumerate_orbits(const Domain& d, const Rat& bound,
                                                const SmoothingPolicy& policy = SmoothingPolicy::infinitesimal()) {
    if (bound.sign() <= 0) throw Error(ErrorCode::InvalidArgument, "action bound must be positive");
    std::vector<ReebOrbit> found;
    const int n = complex_dim(d);
    auto covers = [&](auto make, const Rat& unit) {
        for (int r = 1; Rat(r) * unit <= bound; ++r) found.push_back(make(r));
    };

    if (const auto* q = std::get_if<Polylike>(&d)) {
        for (int k = 1; k <= n; ++k) covers([&](int r) { return Elliptic{k, r}; }, (*q)[k]);
        for (int k = 2; k <= n; ++k) {
            for (int m = 1; Rat(m) * q->b + (*q)[k] <= bound; ++m) {
                for (int qq = 1; Rat(m) * q->b + Rat(qq) * (*q)[k] <= bound; ++qq) {
                    if (!policy.is_infinitesimal()) {
                        // the family exists only where the profile slope m/(q a_k) is attained
                        const Rat slope = Rat(m) / (Rat(qq) * (*q)[k]);
                        const Rat& eps = *policy.epsilon;
                        if (!(eps < slope && slope < Rat(1) / eps)) continue;
                    }
                    found.push_back(Hyperbolic{k, m, qq});
                }
            }
        }
    } else if (const auto* e = std::get_if<Ellipsoid>(&d)) {
        for (int k = 1; k <= n; ++k) covers([&](int r) { return EllipsoidClosed{k, r}; }, (*e)[k]);
    } else if (const auto* p = std::get_if<Polydisk>(&d)) {
        PolydiskToric cur;
        // depth-first over increasing coordinate sets, accumulating action
        auto rec = [&](auto&& self, int next, const Rat& acc) -> void {
            for (int i = next; i <= n; ++i) {
                for (int m = 1; acc + Rat(m) * (*p)[i] <= bound; ++m) {
                    cur.coords.push_back(i);
                    cur.mults.push_back(m);
                    found.push_back(cur);
                    self(self, i + 1, acc + Rat(m) * (*p)[i]);
                    cur.coords.pop_back();
                    cur.mults.pop_back();
                }
            }
        };
        rec(rec, 1, Rat(0));
    } else {
        throw Error(ErrorCode::SpeciesMismatch, std::string(kind_name(d)) + " has no smoothing model");
    }

    std::vector<OrbitEntry> out;
    out.reserve(found.size());
    for (auto& o : found) {
        OrbitEntry e{o, action(o, d), std::nullopt, false};
        if (!std::holds_alternative<PolydiskToric>(o)) e.cz = cz_index(o, d, policy);
        e.at_bound = e.action == bound;
        out.push_back(std::move(e));
    }
    std::sort(out.begin(), out.end(), [](const OrbitEntry& a, const OrbitEntry& b) {
        if (a.action != b.action) return a.action < b.action;
        return a.orbit < b.orbit;
    });
    return out;
}

} // namespace symcap
