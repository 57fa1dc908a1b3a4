#include <gtest/gtest.h>

#include "properties.hpp"

namespace {

void report(const props::Tally& t) {
    for (const auto& f : t.failures) ADD_FAILURE() << f;
}

} // namespace

TEST(Properties, ActionLinearity) {
    props::Gen g(1);
    props::Tally t;
    props::action_linearity(g, t, 250);
    report(t);
    EXPECT_GE(t.checks, 250);
}

TEST(Properties, CzScaleInvariance) {
    props::Gen g(2);
    props::Tally t;
    props::cz_scale_invariance(g, t, 250);
    report(t);
    EXPECT_GE(t.checks, 250);
}

TEST(Properties, IncludesScaleEquivariance) {
    props::Gen g(3);
    props::Tally t;
    props::includes_equivariance(g, t, 250);
    report(t);
    EXPECT_GE(t.checks, 250);
}

TEST(Properties, RelabelingSymmetry) {
    props::Gen g(4);
    props::Tally t;
    props::relabeling_symmetry(g, t, 250);
    report(t);
    EXPECT_GE(t.checks, 250);
}
