#include <gtest/gtest.h>

#include <random>

#include "symcap/rat.hpp"

using namespace symcap;
using namespace symcap::literals;

TEST(Rat, NormalizesSignAndGcd) {
    const Rat r(6, -4);
    EXPECT_EQ(r.num(), -3);
    EXPECT_EQ(r.den(), 2);
    EXPECT_EQ(Rat(0, 7), Rat(0));
    EXPECT_EQ(Rat(0, 7).den(), 1);
}

TEST(Rat, Arithmetic) {
    EXPECT_EQ("1/2"_q + "1/3"_q, "5/6"_q);
    EXPECT_EQ("1/2"_q - "1/3"_q, "1/6"_q);
    EXPECT_EQ("2/3"_q * "9/4"_q, "3/2"_q);
    EXPECT_EQ("2/3"_q / "4/9"_q, "3/2"_q);
    EXPECT_EQ(-"2/3"_q, Rat(-2, 3));
    EXPECT_THROW("1/2"_q / Rat(0), Error);
}

TEST(Rat, FloorCeilNegative) {
    EXPECT_EQ(Rat(7, 2).floor(), 3);
    EXPECT_EQ(Rat(-7, 2).floor(), -4);
    EXPECT_EQ(Rat(-7, 2).ceil(), -3);
    EXPECT_EQ(Rat(4).floor(), 4);
}

TEST(Rat, Ordering) {
    EXPECT_LT("21/10"_q, "11/5"_q);
    EXPECT_GT("-1/3"_q, "-1/2"_q);
    EXPECT_EQ(max("3/2"_q, "7/5"_q), "3/2"_q);
}

TEST(Rat, ParseAndPrint) {
    EXPECT_EQ(Rat::parse("31/10").str(), "31/10");
    EXPECT_EQ(Rat::parse("-4/2").str(), "-2");
    EXPECT_EQ(Rat::parse("+5").str(), "5");
    for (const char* bad : {"", "1/", "/2", "1.5", "1/0", "a", "1/-2", "--1", "99999999999999999999"}) {
        try {
            Rat::parse(bad);
            ADD_FAILURE() << bad;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::Parse) << bad;
        }
    }
}

TEST(Rat, OverflowIsReported) {
    const Rat big(std::numeric_limits<std::int64_t>::max());
    try {
        (void)(big * big);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Overflow);
    }
}

TEST(Rat, FieldLawsOnSamples) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> num(-50, 50), den(1, 30);
    for (int i = 0; i < 2000; ++i) {
        const Rat a(num(rng), den(rng)), b(num(rng), den(rng)), c(num(rng), den(rng));
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ(a * (b + c), a * b + a * c);
        const Rat n(a.num(), a.den());
        EXPECT_EQ(n, a); // normalization is idempotent
    }
}

TEST(Rat, Factorial) { EXPECT_EQ(factorial(5), Rat(120)); }
