#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "symcap/domains.hpp"
#include "symcap/error.hpp"
#include "symcap/rat.hpp"

namespace symcap {

/// k-th Ekeland-Hofer capacity of an ellipsoid: the k-th smallest entry of
/// the multiset { r c_i : r >= 1 }, counted with multiplicity.
inline Rat eh_capacity_ellipsoid(const Ellipsoid& e, int k) {
    if (k < 1) throw Error(ErrorCode::InvalidArgument, "capacity index k must be >= 1");
    // the k smallest entries use multiples r <= k of each coefficient
    std::vector<Rat> all;
    all.reserve(static_cast<std::size_t>(k) * e.coeffs.size());
    for (const auto& c : e.coeffs)
        for (int r = 1; r <= k; ++r) all.push_back(Rat(r) * c);
    std::nth_element(all.begin(), all.begin() + (k - 1), all.end());
    return all[static_cast<std::size_t>(k - 1)];
}

/// Second capacity of B^4(R) x R^{2(n-2)}.
inline Rat eh2_ball_product(const BallProduct& t) { return t.radius; }

struct Obstruction {
    enum class Kind { EH2, EHk, Volume };
    enum class Outcome { Obstructed, NoObstruction, Boundary };

    Kind kind;
    int k = 0; // capacity index, 0 for volume
    Rat source;
    Extended target;
    Outcome verdict;
};

inline std::string_view to_string(Obstruction::Kind k) {
    switch (k) {
    case Obstruction::Kind::EH2: return "EH2";
    case Obstruction::Kind::EHk: return "EHk";
    case Obstruction::Kind::Volume: return "Volume";
    }
    return "?";
}

inline std::string_view to_string(Obstruction::Outcome o) {
    switch (o) {
    case Obstruction::Outcome::Obstructed: return "Obstructed";
    case Obstruction::Outcome::NoObstruction: return "NoObstruction";
    case Obstruction::Outcome::Boundary: return "Boundary";
    }
    return "?";
}

namespace detail {

inline Obstruction::Outcome compare_capacity(const Rat& src, const Extended& tgt) {
    if (tgt.is_infinite() || src < *tgt.value) return Obstruction::Outcome::NoObstruction;
    if (src == *tgt.value) return Obstruction::Outcome::Boundary;
    return Obstruction::Outcome::Obstructed;
}

} // namespace detail

struct ObstructionOptions {
    int max_k = 8; // EHk bound for ellipsoid targets
};

/// Capacity comparisons for an ellipsoid source against an ellipsoid or
/// ball-product target.
inline std::vector<Obstruction> obstruct_embedding(const Domain& source, const Domain& target,
                                                   const ObstructionOptions& opt = {}) {
    const auto* src = std::get_if<Ellipsoid>(&source);
    if (!src) throw Error(ErrorCode::UnsupportedPair, "obstructions need an ellipsoid source, got " + describe(source));
    std::vector<Obstruction> out;
    auto push = [&](Obstruction::Kind kind, int k, const Rat& s, const Extended& t) {
        out.push_back({kind, k, s, t, detail::compare_capacity(s, t)});
    };
    if (const auto* bp = std::get_if<BallProduct>(&target)) {
        if (src->dim() > bp->n)
            throw Error(ErrorCode::UnsupportedPair, "source dimension exceeds target dimension");
        push(Obstruction::Kind::EH2, 2, eh_capacity_ellipsoid(*src, 2), Extended{eh2_ball_product(*bp)});
        return out;
    }
    const auto* tgt = std::get_if<Ellipsoid>(&target);
    if (!tgt) throw Error(ErrorCode::UnsupportedPair, "obstructions need an ellipsoid or ball-product target");
    if (src->dim() != tgt->dim()) throw Error(ErrorCode::UnsupportedPair, "ellipsoid dimensions differ");
    for (int k = 1; k <= opt.max_k; ++k)
        push(k == 2 ? Obstruction::Kind::EH2 : Obstruction::Kind::EHk, k, eh_capacity_ellipsoid(*src, k),
             Extended{eh_capacity_ellipsoid(*tgt, k)});
    push(Obstruction::Kind::Volume, 0, *volume(source).value, volume(target));
    return out;
}

/// Obstructed if any entry is, else Boundary if any entry ties, else NoObstruction.
inline Obstruction::Outcome overall(const std::vector<Obstruction>& obs) {
    auto any = [&](Obstruction::Outcome o) {
        return std::any_of(obs.begin(), obs.end(), [&](const Obstruction& x) { return x.verdict == o; });
    };
    if (any(Obstruction::Outcome::Obstructed)) return Obstruction::Outcome::Obstructed;
    if (any(Obstruction::Outcome::Boundary)) return Obstruction::Outcome::Boundary;
    return Obstruction::Outcome::NoObstruction;
}

} // namespace symcap
