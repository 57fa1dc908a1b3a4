#include <gtest/gtest.h>

#include "oracles.hpp"
#include "symcap/curves.hpp"

using namespace symcap;
using namespace symcap::literals;

namespace {

const Polylike kQ("3/2"_q, {1_q, "11/5"_q});
const ReebOrbit kH11 = Hyperbolic{2, 1, 1};

std::set<std::string> keys(const std::vector<CurveClass>& v) {
    std::set<std::string> s;
    for (const auto& c : v) s.insert(oracle::key(c));
    return s;
}

} // namespace

TEST(Curves, Area) {
    EXPECT_EQ(curve_area(CurveClass::cap(kQ, "31/10"_q, 1, {kH11})), "3/5"_q);
    EXPECT_EQ(curve_area(CurveClass::cap(kQ, "31/10"_q, 1, {})), "31/10"_q);
    EXPECT_EQ(curve_area(CurveClass::cap(kQ, "31/10"_q, 0, {Elliptic{1, 1}})), "-3/2"_q);
    try {
        curve_area(CurveClass::symplectization(kQ, {Elliptic{1, 2}}, {kH11}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::SymplectizationAmbient);
    }
}

TEST(Curves, ConstructionValidates) {
    EXPECT_THROW(CurveClass::cap(kQ, 0_q, 1, {}), Error);
    EXPECT_THROW(CurveClass::cap(kQ, 1_q, -1, {}), Error);
    EXPECT_THROW(CurveClass::cap(kQ, 1_q, 1, {EllipsoidClosed{1, 1}}), Error);
    EXPECT_THROW(CurveClass::symplectization(kQ, {}, {}), Error);
    // ends are stored sorted, so order of input does not matter
    EXPECT_EQ(CurveClass::cap(kQ, 3_q, 1, {Elliptic{2, 1}, Elliptic{1, 1}}),
              CurveClass::cap(kQ, 3_q, 1, {Elliptic{1, 1}, Elliptic{2, 1}}));
}

TEST(Curves, IndexCalibration) {
    const Rat R = "31/10"_q;
    const auto plane_h = CurveClass::cap(kQ, R, 1, {kH11});
    EXPECT_EQ(virtual_index(plane_h), 1_q);
    EXPECT_EQ(constrained_index(plane_h, kH11), 0_q);
    const auto plane_2g1 = CurveClass::cap(kQ, R, 1, {Elliptic{1, 2}});
    EXPECT_EQ(virtual_index(plane_2g1), 0_q);
    EXPECT_EQ(constrained_index(plane_2g1, Elliptic{1, 2}), 0_q);

    const auto cyl = CurveClass::symplectization(kQ, {Elliptic{1, 2}}, {kH11});
    EXPECT_EQ(virtual_index(cyl), 1_q);
    EXPECT_EQ(constrained_index(cyl, kH11), 0_q);
    EXPECT_EQ(virtual_index(CurveClass::symplectization(kQ, {Elliptic{1, 2}}, {Elliptic{2, 3}})), -4_q);

    try {
        constrained_index(plane_h, Elliptic{1, 2});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::EndNotPresent);
    }
}

TEST(Curves, CylinderIndicesOnGrid) {
    for (const auto& t : oracle::hypothesis_tuples(10)) {
        const auto& q = t.q;
        EXPECT_EQ(virtual_index(CurveClass::symplectization(q, {Elliptic{1, 2}}, {kH11})), 1_q) << describe(q);
        EXPECT_LE(virtual_index(CurveClass::symplectization(q, {Elliptic{1, 2}}, {Elliptic{2, 3}})), -2_q);
        for (int j = 3; j <= q.dim(); ++j)
            EXPECT_LE(virtual_index(CurveClass::symplectization(q, {Elliptic{1, 2}}, {Elliptic{j, 1}})), -2_q);
    }
}

TEST(Curves, EnumerationExamples) {
    EnumerationQuery query;
    query.area_max = 1_q;
    query.index_min = -1_q;
    EXPECT_EQ(keys(enumerate_cap_curves(kQ, "31/10"_q, query)), (std::set<std::string>{"g^2_{1,1};", "g^1*2;"}));
    EXPECT_EQ(keys(enumerate_cap_curves(kQ, "29/10"_q, query)), (std::set<std::string>{"g^2_{1,1};", "g^2*2;"}));

    EnumerationQuery tiny;
    tiny.area_min = "29/10"_q;
    tiny.area_max = 4_q;
    // only the curve without ends has area above 29/10
    EXPECT_EQ(keys(enumerate_cap_curves(kQ, "31/10"_q, tiny)), (std::set<std::string>{""}));
    tiny.area_min = "31/10"_q + 1_q;
    tiny.area_max = 5_q;
    EXPECT_TRUE(enumerate_cap_curves(kQ, "31/10"_q, tiny).empty());

    EnumerationQuery bad;
    bad.degree = 4;
    EXPECT_THROW(enumerate_cap_curves(kQ, 3_q, bad), Error);
}

TEST(Curves, ConstrainedEnumeration) {
    EnumerationQuery query;
    query.area_max = 1_q;
    query.index_min = 0_q;
    query.constrained_end = kH11;
    const auto got = enumerate_cap_curves(kQ, "31/10"_q, query);
    ASSERT_EQ(got.size(), 1u);
    EXPECT_EQ(oracle::key(got[0]), "g^2_{1,1};");
}

TEST(Curves, EnumerationMatchesBruteForce) {
    for (const auto& t : oracle::hypothesis_tuples()) {
        for (const Rat idx : {-1_q, -5_q}) {
            EnumerationQuery query;
            query.area_max = t.q[2];
            query.index_min = idx;
            const auto lib = keys(enumerate_cap_curves(t.q, t.R, query));
            const auto brute = oracle::brute_force_curves(t.q, t.R, 1, t.q[2], idx);
            EXPECT_EQ(lib, brute) << describe(t.q) << " R=" << t.R;
        }
    }
}

TEST(Curves, Con1) {
    EXPECT_EQ(check_lemma_con1(kQ, "31/10"_q).verdict, Verdict::Confirmed);
    EXPECT_EQ(check_lemma_con1(kQ, "29/10"_q).verdict, Verdict::Confirmed);
    const auto amb = check_lemma_con1(Polylike("3/2"_q, {1_q, 2_q}), "31/10"_q);
    EXPECT_EQ(amb.verdict, Verdict::BoundaryAmbiguous);
    try {
        check_lemma_con1(kQ, 4_q);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::HypothesisViolated);
    }
    for (const auto& t : oracle::hypothesis_tuples()) EXPECT_EQ(check_lemma_con1(t.q, t.R).verdict, Verdict::Confirmed);
}

TEST(Curves, Con2) {
    const auto r1 = check_lemma_con2(kQ, "31/10"_q);
    EXPECT_EQ(r1.verdict, Verdict::Confirmed);
    EXPECT_EQ(keys(r1.enumerated), (std::set<std::string>{"g^2_{1,1};", "g^1*2;"}));
    const auto r2 = check_lemma_con2(kQ, "29/10"_q);
    EXPECT_EQ(r2.verdict, Verdict::Confirmed);
    EXPECT_EQ(keys(r2.enumerated), (std::set<std::string>{"g^2_{1,1};", "g^2*2;"}));
    for (const auto& t : oracle::hypothesis_tuples()) {
        const auto r = check_lemma_con2(t.q, t.R);
        EXPECT_EQ(r.verdict, Verdict::Confirmed) << describe(t.q) << " R=" << t.R;
        for (const auto& c : r.enumerated) EXPECT_EQ(c.negative_ends.size(), 1u);
    }
    EXPECT_THROW(check_lemma_con2(Polylike(1_q, {"3/2"_q, 4_q}), 3_q), Error);
}

TEST(Curves, Con3) {
    EXPECT_EQ(check_lemma_con3(3, 2).bound, -2_q);
    EXPECT_FALSE(check_lemma_con3(3, 2).allowed);
    EXPECT_EQ(check_lemma_con3(3, 1).bound, 2_q);
    EXPECT_TRUE(check_lemma_con3(3, 1).allowed);
    EXPECT_EQ(check_lemma_con3(5, 2).bound, -6_q);
    EXPECT_THROW(check_lemma_con3(2, 1), Error);
    // the bound is an upper bound for the actual index of all-elliptic curves
    for (const auto& t : oracle::hypothesis_tuples(6)) {
        EnumerationQuery query;
        query.area_max = t.q[2];
        for (const auto& c : enumerate_cap_curves(t.q, t.R, query)) {
            if (!std::all_of(c.negative_ends.begin(), c.negative_ends.end(),
                             [](const ReebOrbit& o) { return std::holds_alternative<Elliptic>(o); }))
                continue;
            EXPECT_LE(virtual_index(c), check_lemma_con3(t.q.dim(), c.end_count()).bound) << describe(c);
        }
    }
}

TEST(Curves, Compactness) {
    const auto r = compactness_exclusions(kQ, "31/10"_q);
    EXPECT_EQ(r.verdict, Verdict::Confirmed);
    EXPECT_EQ(compactness_exclusions(kQ, "29/10"_q).verdict, Verdict::Confirmed);
    EXPECT_EQ(compactness_exclusions(Polylike(1_q, {"4/5"_q, "9/5"_q}), "12/5"_q).verdict, Verdict::Confirmed);
    EXPECT_THROW(compactness_exclusions(Polylike(1_q, {"4/5"_q, "9/5"_q}), "14/5"_q), Error);
    for (const auto& t : oracle::hypothesis_tuples()) {
        const auto rep = compactness_exclusions(t.q, t.R);
        EXPECT_NE(rep.verdict, Verdict::Refuted) << describe(t.q) << " R=" << t.R;
    }
}

TEST(Curves, PolydiskEnds) {
    for (int n : {4, 5, 6}) {
        const auto r = polydisk_end_solver(1_q, "11/5"_q, "1/20"_q, "33/10"_q, n);
        ASSERT_EQ(r.solutions.size(), 1u);
        std::vector<int> want(static_cast<std::size_t>(n), 0);
        want[0] = want[2] = 1;
        EXPECT_EQ(r.solutions[0], want);
        EXPECT_TRUE(r.claim_holds);
    }
    try {
        polydisk_end_solver(1_q, "21/10"_q, "1/20"_q, "41/10"_q, 4);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::HypothesisViolated);
    }
}

// exhaustive cross-check of the polydisk solver against a nested scan
TEST(Curves, PolydiskEndsMatchScan) {
    const Rat a = 1_q, b = "11/5"_q, eps = "1/20"_q, R = "33/10"_q;
    for (int cap : {2, 3, 4}) {
        const auto r = polydisk_end_solver(a, b, eps, R, 4, cap);
        std::set<std::vector<int>> want;
        for (int m1 = 0; m1 <= cap; ++m1)
            for (int m2 = 0; m2 <= cap; ++m2)
                for (int m3 = 0; m3 <= cap; ++m3)
                    for (int m4 = 0; m4 <= cap; ++m4) {
                        if (m1 + m2 + m3 + m4 > cap) continue;
                        const Rat s = Rat(m1) * a + Rat(m3) * b + Rat(m2 + m4) * (a - eps);
                        if (a + b <= s && s <= R) want.insert({m1, m2, m3, m4});
                    }
        EXPECT_EQ(std::set<std::vector<int>>(r.solutions.begin(), r.solutions.end()), want);
    }
}

TEST(Curves, EllipsoidEnds) {
    auto ends = [](const EllipsoidEndReport& r) {
        std::set<std::string> s;
        for (const auto& e : r.allowed) s.insert(label(e.end));
        return s;
    };
    const auto r1 = ellipsoid_end_analysis(Ellipsoid({2_q, 5_q, 13_q}));
    EXPECT_EQ(ends(r1), (std::set<std::string>{"d^1*1", "d^1*2"}));
    for (const auto& e : r1.allowed) EXPECT_EQ(e.index, (e.end == ReebOrbit{EllipsoidClosed{1, 1}}) ? 2_q : 0_q);
    EXPECT_EQ(r1.max_allowed_action, 4_q);
    EXPECT_TRUE(r1.multi_end_excluded);
    EXPECT_EQ(ellipsoid_end_verdict(r1), Verdict::Confirmed);

    const auto r2 = ellipsoid_end_analysis(Ellipsoid({2_q, 3_q, 13_q}));
    EXPECT_EQ(ends(r2), (std::set<std::string>{"d^1*1", "d^2*1"}));
    EXPECT_EQ(r2.max_allowed_action, 3_q);
    EXPECT_EQ(ellipsoid_end_verdict(r2), Verdict::Confirmed);

    const auto r3 = ellipsoid_end_analysis(Ellipsoid({2_q, 4_q, 13_q}));
    EXPECT_TRUE(r3.boundary);
    EXPECT_EQ(ellipsoid_end_verdict(r3), Verdict::BoundaryAmbiguous);

    // input order is irrelevant
    EXPECT_EQ(ends(ellipsoid_end_analysis(Ellipsoid({13_q, 5_q, 2_q}))), ends(r1));
}
