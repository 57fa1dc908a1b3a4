#include <gtest/gtest.h>

#include <random>

#include "symcap/domains.hpp"
#include "symcap/json_io.hpp"

using namespace symcap;
using namespace symcap::literals;
using K = InclusionVerdict::Kind;

namespace {

Polylike q(const char* b, std::vector<Rat> tail) { return Polylike(Rat::parse(b), std::move(tail)); }

// bounding box of the moment image, used to draw sample points
std::vector<Rat> box(const Domain& d) {
    if (const auto* e = std::get_if<Ellipsoid>(&d)) return e->coeffs;
    if (const auto* p = std::get_if<Polydisk>(&d)) return p->widths;
    if (const auto* x = std::get_if<Polylike>(&d)) {
        std::vector<Rat> v{x->b};
        v.insert(v.end(), x->tail.begin(), x->tail.end());
        return v;
    }
    if (const auto* t = std::get_if<TruncatedEllipsoid>(&d)) return t->base.coeffs;
    const auto& b = std::get<BallProduct>(d);
    return std::vector<Rat>(static_cast<std::size_t>(b.n), b.radius);
}

struct Sampled {
    int inner_hits = 0;
    int escaped = 0; // inner points outside outer
};

Sampled sample(const Domain& outer, const Domain& inner, int n = 10000, unsigned seed = 1234) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> u(0, 1000);
    const auto hi = box(inner);
    Sampled s;
    for (int i = 0; i < n; ++i) {
        std::vector<Rat> pt;
        for (const auto& h : hi) pt.push_back(h * Rat(u(rng), 1000));
        if (!contains_point(inner, pt)) continue;
        ++s.inner_hits;
        if (!contains_point(outer, pt)) ++s.escaped;
    }
    return s;
}

} // namespace

TEST(Domains, ConstructorsValidate) {
    EXPECT_THROW(Ellipsoid({1_q}), Error);
    EXPECT_THROW(Ellipsoid({1_q, 0_q}), Error);
    EXPECT_THROW(Polydisk({1_q, -1_q}), Error);
    EXPECT_THROW(Polylike(0_q, {1_q}), Error);
    EXPECT_THROW(TruncatedEllipsoid(Ellipsoid({2_q, 4_q}), 2, 4_q), Error);
    EXPECT_THROW(TruncatedEllipsoid(Ellipsoid({2_q, 4_q, 5_q}), 2, 1_q), Error);
    EXPECT_THROW(BallProduct(1_q, 1), Error);
}

TEST(Domains, Volume) {
    EXPECT_EQ(volume(Ellipsoid({2_q, 4_q})).value, 4_q);
    EXPECT_EQ(volume(Polydisk({1_q, 2_q})).value, 2_q);
    EXPECT_EQ(volume(Polylike("3/2"_q, {1_q, 2_q})).value, "3/2"_q);
    // E(2,4) minus the region below R_2 = 2 keeps a quarter of the triangle
    EXPECT_EQ(volume(TruncatedEllipsoid(Ellipsoid({2_q, 4_q}), 2, 2_q)).value, 1_q);
    EXPECT_TRUE(volume(BallProduct(3_q, 3)).is_infinite());
}

TEST(Domains, VolumeOfTruncationMatchesSampling) {
    const TruncatedEllipsoid t(Ellipsoid({"5/2"_q, 5_q}), 2, "3/2"_q);
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int hits = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double r1 = 2.5 * u(rng), r2 = 5.0 * u(rng);
        if (r2 >= 1.5 && r1 / 2.5 + r2 / 5.0 <= 1.0) ++hits;
    }
    const double est = 12.5 * hits / n;
    EXPECT_NEAR(volume(t).value->to_double(), est, 0.05);
}

TEST(Domains, Scale) {
    EXPECT_EQ(scale(Ellipsoid({2_q, 4_q}), "1/2"_q), Domain(Ellipsoid({1_q, 2_q})));
    EXPECT_EQ(scale(Polylike("3/2"_q, {1_q, 2_q}), 2_q), Domain(Polylike(3_q, {2_q, 4_q})));
    EXPECT_EQ(scale(BallProduct("7/2"_q, 3), 2_q), Domain(BallProduct(7_q, 3)));
    EXPECT_EQ(scale(TruncatedEllipsoid(Ellipsoid({2_q, 4_q}), 2, 2_q), "3/2"_q),
              Domain(TruncatedEllipsoid(Ellipsoid({3_q, 6_q}), 2, 3_q)));
    EXPECT_THROW(scale(Ellipsoid({2_q, 4_q}), 0_q), Error);
}

TEST(Domains, IncludesExamples) {
    const auto v1 = includes(Ellipsoid({3_q, 2_q, 4_q}), q("3/2", {1_q, 2_q}));
    EXPECT_EQ(v1.kind, K::Boundary);
    EXPECT_EQ(v1.margin, 0_q);

    const auto v2 = includes(Ellipsoid({"8/5"_q, "32/5"_q}), TruncatedEllipsoid(Ellipsoid({2_q, 4_q}), 2, 2_q));
    EXPECT_EQ(v2.kind, K::Inside);
    EXPECT_EQ(v2.margin, "1/16"_q);
    EXPECT_NE(v2.witness.find("15/16"), std::string::npos);

    EXPECT_EQ(includes(BallProduct("7/2"_q, 3), q("3/2", {1_q, 2_q})).kind, K::Inside);
    EXPECT_EQ(includes(BallProduct("5/2"_q, 3), q("3/2", {1_q, 2_q})).kind, K::Boundary);
    EXPECT_EQ(includes(Ellipsoid({4_q, 4_q}), Ellipsoid({2_q, 4_q})).kind, K::Boundary);
    EXPECT_EQ(includes(Ellipsoid({"41/10"_q, "41/10"_q}), Ellipsoid({2_q, 4_q})).kind, K::Inside);
    EXPECT_EQ(includes(Ellipsoid({"39/10"_q, "39/10"_q}), Ellipsoid({2_q, 4_q})).kind, K::Outside);
}

TEST(Domains, IncludesRejectsUnsupported) {
    try {
        includes(Ellipsoid({1_q, 1_q}), Ellipsoid({1_q, 1_q, 1_q}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UnsupportedPair);
    }
    EXPECT_THROW(includes(Polylike(1_q, {1_q}), Ellipsoid({1_q, 1_q})), Error);
    EXPECT_THROW(includes(Polydisk({1_q, 1_q}), Ellipsoid({1_q, 1_q})), Error);
}

// sampled points of the inner domain must stay in the outer one whenever the
// exact test reports containment
TEST(Domains, IncludesAgreesWithSampling) {
    struct Case {
        Domain outer, inner;
    };
    const std::vector<Case> cases{
        {Ellipsoid({3_q, 2_q, 4_q}), q("3/2", {1_q, 2_q})},
        {Ellipsoid({"8/5"_q, "32/5"_q}), TruncatedEllipsoid(Ellipsoid({2_q, 4_q}), 2, 2_q)},
        {Ellipsoid({"3/2"_q, 6_q}), TruncatedEllipsoid(Ellipsoid({2_q, 4_q}), 2, 2_q)},
        {BallProduct("7/2"_q, 3), q("3/2", {1_q, 2_q})},
        {BallProduct(3_q, 3), q("3/2", {"21/10"_q, 3_q})},
        {Ellipsoid({3_q, 5_q}), Polydisk({1_q, 2_q})},
        {Ellipsoid({2_q, 3_q}), Polydisk({1_q, 2_q})},
        {Polydisk({2_q, 1_q, 3_q}), q("3/2", {1_q, 2_q})},
        {Polydisk({1_q, 1_q, 3_q}), q("3/2", {1_q, 2_q})},
        {Ellipsoid({4_q, 4_q}), Ellipsoid({2_q, 4_q})},
        {Ellipsoid({3_q, 3_q}), Ellipsoid({2_q, 4_q})},
        {BallProduct(4_q, 2), Ellipsoid({2_q, 4_q})},
        {BallProduct(3_q, 2), Polydisk({1_q, 2_q})},
        {BallProduct("5/2"_q, 2), Polydisk({1_q, 2_q})},
    };
    for (const auto& c : cases) {
        const auto v = includes(c.outer, c.inner);
        const auto s = sample(c.outer, c.inner);
        ASSERT_GT(s.inner_hits, 500) << describe(c.inner);
        if (v.contained()) EXPECT_EQ(s.escaped, 0) << describe(c.outer) << " " << describe(c.inner);
        else EXPECT_GT(s.escaped, 0) << describe(c.outer) << " " << describe(c.inner);
    }
}

TEST(Domains, ContainsPoint) {
    const TruncatedEllipsoid t(Ellipsoid({2_q, 4_q}), 2, 2_q);
    EXPECT_TRUE(contains_point(t, {0_q, 2_q}));
    EXPECT_FALSE(contains_point(t, {0_q, "19/10"_q}));
    EXPECT_TRUE(contains_point(BallProduct(3_q, 3), {1_q, 2_q, 100_q}));
    EXPECT_FALSE(contains_point(Ellipsoid({1_q, 1_q}), {-1_q, 0_q}));
    EXPECT_THROW(contains_point(Ellipsoid({1_q, 1_q}), {0_q}), Error);
}

TEST(Domains, Genericity) {
    const auto r1 = genericity_check(q("3/2", {1_q, 2_q}));
    ASSERT_FALSE(r1.empty());
    bool saw = false;
    for (const auto& v : r1.violations) saw = saw || v.witness == std::pair{3, 2};
    EXPECT_TRUE(saw);

    EXPECT_TRUE(genericity_check(q("3/2", {1_q, "11/5"_q}), 5_q).empty());
    EXPECT_TRUE(genericity_check(q("3/2", {1_q, "11/5"_q})).empty());
    EXPECT_FALSE(genericity_check(Ellipsoid({2_q, 4_q})).empty());
    // 2 * 5/2 = 5 would be integral but lies above a small bound
    EXPECT_TRUE(genericity_check(Ellipsoid({1_q, "5/2"_q}), 3_q).empty());
    EXPECT_FALSE(genericity_check(Ellipsoid({1_q, "5/2"_q}), 5_q).empty());
}

TEST(Domains, JsonRoundTrip) {
    const std::vector<Domain> ds{Ellipsoid({2_q, 4_q}), Polydisk({1_q, 2_q, 3_q}), q("3/2", {1_q, "11/5"_q}),
                                 TruncatedEllipsoid(Ellipsoid({2_q, 4_q}), 2, 2_q), BallProduct("7/2"_q, 3)};
    for (const auto& d : ds) {
        EXPECT_EQ(domain_from_json(to_json(d)), d) << describe(d);
        EXPECT_EQ(domain_from_json(Json::parse(canonical(d))), d);
    }
    EXPECT_THROW(domain_from_json(Json::parse(R"({"type":"cube"})")), Error);
    EXPECT_THROW(domain_from_json(Json::parse(R"({"type":"ellipsoid","coeffs":["1","x"]})")), Error);
}
