#include <gtest/gtest.h>

#include <random>

#include "symcap/capacities.hpp"

using namespace symcap;
using namespace symcap::literals;
using O = Obstruction::Outcome;

TEST(Capacities, EllipsoidExamples) {
    EXPECT_EQ(eh_capacity_ellipsoid(Ellipsoid({2_q, 4_q}), 2), 4_q);
    EXPECT_EQ(eh_capacity_ellipsoid(Ellipsoid({1_q, 5_q, 7_q}), 2), 2_q);
    EXPECT_EQ(eh_capacity_ellipsoid(Ellipsoid({1_q, 5_q, 7_q}), 5), 5_q);
    EXPECT_EQ(eh_capacity_ellipsoid(Ellipsoid({1_q, 5_q, 7_q}), 6), 5_q);
    EXPECT_EQ(eh_capacity_ellipsoid(Ellipsoid({1_q, 5_q, 7_q}), 7), 6_q);
    const Ellipsoid round({"3/2"_q, "3/2"_q, "3/2"_q});
    for (int k = 1; k <= 3; ++k) EXPECT_EQ(eh_capacity_ellipsoid(round, k), "3/2"_q);
    EXPECT_EQ(eh_capacity_ellipsoid(round, 4), 3_q);
    EXPECT_THROW(eh_capacity_ellipsoid(round, 0), Error);
}

TEST(Capacities, BallProduct) {
    EXPECT_EQ(eh2_ball_product(BallProduct("7/2"_q, 3)), "7/2"_q);
    EXPECT_EQ(eh2_ball_product(BallProduct(4_q, 5)), 4_q);
    EXPECT_EQ(eh2_ball_product(std::get<BallProduct>(scale(BallProduct("7/4"_q, 3), 2_q))), "7/2"_q);
}

// sorted-merge oracle: walk the multiples of every coefficient in order
TEST(Capacities, MatchesMergedSpectrum) {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> num(1, 60), dim(2, 4);
    for (int t = 0; t < 300; ++t) {
        std::vector<Rat> c;
        const int n = dim(rng);
        for (int i = 0; i < n; ++i) c.push_back(Rat(num(rng), 7));
        const Ellipsoid e(c);
        std::vector<int> r(static_cast<std::size_t>(n), 1);
        for (int k = 1; k <= 10; ++k) {
            std::size_t best = 0;
            for (std::size_t i = 1; i < c.size(); ++i)
                if (Rat(r[i]) * c[i] < Rat(r[best]) * c[best]) best = i;
            EXPECT_EQ(eh_capacity_ellipsoid(e, k), Rat(r[best]) * c[best]);
            ++r[best];
        }
    }
}

TEST(Capacities, SecondCapacityRule) {
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> num(1, 200), dim(2, 5);
    for (int t = 0; t < 1000; ++t) {
        std::vector<Rat> c;
        for (int i = 0, n = dim(rng); i < n; ++i) c.push_back(Rat(num(rng), 13));
        auto s = c;
        std::sort(s.begin(), s.end());
        EXPECT_EQ(eh_capacity_ellipsoid(Ellipsoid(c), 2), min(Rat(2) * s[0], s[1]));
    }
}

TEST(Capacities, Obstructions) {
    const Ellipsoid e24({2_q, 4_q});
    EXPECT_EQ(overall(obstruct_embedding(e24, BallProduct("39/10"_q, 3))), O::Obstructed);
    EXPECT_EQ(overall(obstruct_embedding(e24, BallProduct(4_q, 3))), O::Boundary);
    EXPECT_EQ(overall(obstruct_embedding(e24, BallProduct("41/10"_q, 3))), O::NoObstruction);
    const auto rows = obstruct_embedding(Ellipsoid({1_q, 1_q}), Ellipsoid({2_q, 2_q}));
    EXPECT_EQ(overall(rows), O::NoObstruction);
    EXPECT_EQ(rows.back().kind, Obstruction::Kind::Volume);
    EXPECT_EQ(rows.size(), 9u);
    // volume obstructs where the first capacities do not
    const auto vol = obstruct_embedding(Ellipsoid({1_q, 8_q}), Ellipsoid({"5/2"_q, "5/2"_q}));
    EXPECT_EQ(overall(vol), O::Obstructed);
    for (const auto& o : vol) EXPECT_EQ(o.verdict == O::Obstructed, o.kind == Obstruction::Kind::Volume);

    EXPECT_THROW(obstruct_embedding(Polydisk({1_q, 1_q}), BallProduct(3_q, 2)), Error);
    EXPECT_THROW(obstruct_embedding(Ellipsoid({1_q, 1_q, 1_q}), BallProduct(3_q, 2)), Error);
    EXPECT_THROW(obstruct_embedding(e24, Polydisk({3_q, 3_q})), Error);
    EXPECT_THROW(obstruct_embedding(e24, Ellipsoid({3_q, 3_q, 3_q})), Error);
}

TEST(Capacities, BallProductThreshold) {
    const Ellipsoid e24({2_q, 4_q});
    for (int i = 1; i < 400; ++i) {
        const Rat R(i, 100);
        EXPECT_EQ(overall(obstruct_embedding(e24, BallProduct(R, 3))), O::Obstructed) << R;
    }
}
