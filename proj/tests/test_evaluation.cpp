#include "rulecp/error.hpp"
#include "rulecp/evaluation.hpp"
#include "rulecp/inducer.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <thread>

using namespace rulecp;
using namespace rulecp::testing;

namespace {

PredictionSet set_of(bool neg, bool pos) {
    PredictionSet p;
    p.labels = {neg, pos};
    p.in_ccs = pos && !neg;
    return p;
}

} // namespace

TEST(EvaluateSets, ThreeCaseEnumeration) {
    const std::vector<PredictionSet> sets{set_of(false, true), set_of(true, true), set_of(false, false)};
    const std::vector<Label> y{1, 0, 1};
    const auto m = evaluate_sets(sets, y);
    EXPECT_DOUBLE_EQ(m.avg_err, 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(m.avg_empty, 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(m.avg_single, 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(m.avg_double, 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(*m.avg_err0, 0.0);
    EXPECT_DOUBLE_EQ(*m.avg_err1, 0.5);
    EXPECT_DOUBLE_EQ(m.avg_single1, 1.0 / 3.0);
    EXPECT_EQ(m.avg_single0, 0.0);
}

TEST(EvaluateSets, FullSetsNeverErr) {
    const std::vector<PredictionSet> sets(5, set_of(true, true));
    const std::vector<Label> y{0, 1, 1, 0, 1};
    const auto m = evaluate_sets(sets, y);
    EXPECT_EQ(m.avg_err, 0.0);
    EXPECT_EQ(m.avg_double, 1.0);
}

TEST(EvaluateSets, AbsentClassIsUndefined) {
    const std::vector<PredictionSet> sets(2, set_of(true, false));
    const std::vector<Label> y{0, 0};
    const auto m = evaluate_sets(sets, y);
    EXPECT_TRUE(m.avg_err0.has_value());
    EXPECT_FALSE(m.avg_err1.has_value());
}

TEST(EvaluateSets, Errors) {
    const std::vector<PredictionSet> sets(2);
    const std::vector<Label> y{0};
    EXPECT_THROW(evaluate_sets(sets, y), InvalidInput);
    EXPECT_THROW(evaluate_sets({}, {}), InvalidInput);
}

TEST(CcsMetrics, CountArithmetic) {
    const auto m = ccs_metrics_from_counts(3, 1, 1);
    EXPECT_DOUBLE_EQ(*m.tpr, 0.75);
    EXPECT_DOUBLE_EQ(*m.ppv, 0.75);
    EXPECT_DOUBLE_EQ(*m.f1, 0.75);
}

TEST(CcsMetrics, PublishedRowCrossCheck) {
    // TPR 1.00, PPV 0.93 -> F1 2 * 0.93 / 1.93.
    const auto m = ccs_metrics_from_counts(93, 7, 0);
    EXPECT_DOUBLE_EQ(*m.tpr, 1.0);
    EXPECT_NEAR(*m.ppv, 0.93, 1e-12);
    EXPECT_NEAR(*m.f1, 0.9637, 1e-4);
}

TEST(CcsMetrics, UndefinedMarkers) {
    const auto none = ccs_metrics_from_counts(0, 4, 0);
    EXPECT_FALSE(none.tpr.has_value());
    EXPECT_FALSE(none.f1.has_value());
    EXPECT_DOUBLE_EQ(*none.ppv, 0.0);
    const auto silent = ccs_metrics_from_counts(0, 0, 3);
    EXPECT_DOUBLE_EQ(*silent.tpr, 0.0);
    EXPECT_FALSE(silent.ppv.has_value());
}

TEST(CcsRules, PerfectRulesOnSeparableData) {
    // 1D, truth 1 for x > 0.5; rules on the {-1, +1} classes.
    const Ruleset rs({make_rule("c", kCritical, {closed(0.5, 1.0)}, 0.9), make_rule("n", kNotCritical, {closed(0.0, 0.5)}, 0.9)},
                     FeatureBounds({0.0}, {1.0}), {"x"}, {kNotCritical, kCritical});
    const Dataset test({"x"}, {0.1, 0.2, 0.7, 0.9}, {0, 0, 1, 1});
    const auto m = evaluate_ccs_rules(rs, test);
    EXPECT_DOUBLE_EQ(*m.tpr, 1.0);
    EXPECT_DOUBLE_EQ(*m.ppv, 1.0);
    EXPECT_DOUBLE_EQ(*m.f1, 1.0);
}

TEST(CcsRules, NoPositivesGivesUndefinedTpr) {
    const Ruleset rs({make_rule("c", kCritical, {closed(0.5, 1.0)}, 0.9)}, FeatureBounds({0.0}, {1.0}), {"x"},
                     {kNotCritical, kCritical});
    const Dataset test({"x"}, {0.1, 0.7}, {0, 0});
    const auto m = evaluate_ccs_rules(rs, test);
    EXPECT_FALSE(m.tpr.has_value());
    EXPECT_EQ(m.fp, 1u);
}

TEST(Audit, SortedByRelevanceWithPrecision) {
    const Ruleset rs({make_rule("lo", 1, {closed(0.0, 0.5)}, 0.2), make_rule("hi", 1, {closed(0.5, 1.0)}, 0.6),
                      make_rule("z", 0, {closed(0.0, 1.0)}, 0.1), make_rule("none", 1, {closed(0.3, 0.35)}, 0.4)},
                     FeatureBounds({0.0}, {1.0}), {"x"});
    const Dataset d({"x"}, {0.1, 0.2, 0.7, 0.8, 0.9}, {0, 1, 1, 1, 0});
    const auto a = audit_rules(rs, 1, d, 1);
    ASSERT_EQ(a.size(), 3u);
    EXPECT_EQ(a[0].id, "hi");
    EXPECT_EQ(a[1].id, "none");
    EXPECT_EQ(a[2].id, "lo");
    EXPECT_DOUBLE_EQ(*a[0].precision, 2.0 / 3.0);
    EXPECT_DOUBLE_EQ(a[0].covering, 2.0 / 3.0);
    EXPECT_DOUBLE_EQ(a[0].error, 0.5);
    EXPECT_FALSE(a[1].precision.has_value());
    EXPECT_DOUBLE_EQ(*union_precision(rs, 1, d, 1), 3.0 / 5.0);
}

TEST(Timing, NullRequestIsUnmeasured) {
    const auto t = time_calibration(std::function<void()>{});
    EXPECT_FALSE(t.measured);
    EXPECT_EQ(t.seconds, 0.0);
}

TEST(Timing, MeasuresWallClock) {
    const auto t = time_calibration([] { std::this_thread::sleep_for(std::chrono::milliseconds(5)); }, 3);
    EXPECT_TRUE(t.measured);
    EXPECT_GE(t.seconds, 0.004);
    EXPECT_EQ(t.repeats, 3u);
}

TEST(Timing, CalibrationScoringScalesWithRules) {
    const auto data = make_blobs(10000, 2, 3.0, 1.0, 30);
    std::mt19937_64 rng(30);
    std::vector<Rule> rules;
    for (int k = 0; k < 12; ++k) {
        Rule r = random_box(rng, 2, "r" + std::to_string(k), k % 2);
        for (auto& iv : r.intervals) {
            iv.low = -4.0 + 6.0 * iv.low;
            iv.high = -1.0 + 8.0 * iv.high;
            if (iv.high <= iv.low) {
                iv.high = iv.low + 1.0;
            }
        }
        rules.push_back(std::move(r));
    }
    const FeatureBounds bounds({-10.0, -10.0}, {10.0, 10.0});
    const Ruleset six(std::vector<Rule>(rules.begin(), rules.begin() + 6), bounds, {"x1", "x2"});
    const Ruleset twelve(rules, bounds, {"x1", "x2"});
    const auto t6 = time_calibration(six, {}, data, 5);
    const auto t12 = time_calibration(twelve, {}, data, 5);
    EXPECT_GT(t6.seconds, 0.0);
    EXPECT_LT(t6.seconds, 60.0);
    EXPECT_GT(t12.seconds, t6.seconds);
}

TEST(Table, UndefinedCellsAndColumns) {
    EvaluationReport r;
    r.epsilon = 0.05;
    r.sets.avg_err = 0.04;
    r.sets.avg_err0 = 0.03;
    const std::vector<EvaluationReport> rows{r};
    const auto text = format_table(rows);
    EXPECT_NE(text.find("avgErr0"), std::string::npos);
    EXPECT_NE(text.find("avgDouble"), std::string::npos);
    EXPECT_NE(text.find("undef"), std::string::npos);
    EXPECT_NE(text.find("0.040"), std::string::npos);
}
