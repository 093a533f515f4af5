#include "rulecp/error.hpp"
#include "rulecp/inducer.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace rulecp;
using namespace rulecp::testing;

namespace {

Rule weighted(std::string id, Label y, double low, double high, double relevance) {
    return make_rule(std::move(id), y, {closed(low, high)}, relevance);
}

Ruleset one_d(std::vector<Rule> rules) {
    return Ruleset(std::move(rules), FeatureBounds({0.0}, {1.0}), {"x"});
}

std::size_t count_label(const Ruleset& rs, Label y) {
    std::size_t n = 0;
    for (const auto& r : rs.rules()) {
        n += r.label == y;
    }
    return n;
}

} // namespace

TEST(AssignClass, RelevanceWeightedRatio) {
    // Class 1: 0.8 fires out of 1.0. Class 0: 0.3 fires out of 0.6.
    const auto rs = one_d({weighted("a", 1, 0.0, 0.5, 0.8), weighted("b", 1, 0.9, 1.0, 0.2),
                           weighted("c", 0, 0.0, 0.5, 0.3), weighted("d", 0, 0.9, 1.0, 0.3)});
    const auto a = assign_class(rs, std::vector<double>{0.25});
    EXPECT_EQ(a.label, 1);
    EXPECT_FALSE(a.no_rule_fired);
}

TEST(AssignClass, OnlyOneClassFires) {
    const auto rs = one_d({weighted("a", 1, 0.0, 0.2, 0.8), weighted("c", 0, 0.5, 1.0, 0.3)});
    EXPECT_EQ(assign_class(rs, std::vector<double>{0.7}).label, 0);
    EXPECT_EQ(assign_class(rs, std::vector<double>{0.1}).label, 1);
}

TEST(AssignClass, TiesAndSilenceGoToFirstClass) {
    const auto rs = one_d({weighted("a", 1, 0.0, 0.6, 0.5), weighted("c", 0, 0.4, 1.0, 0.5)});
    EXPECT_EQ(assign_class(rs, std::vector<double>{0.5}).label, 0);
    const auto none = assign_class(one_d({weighted("a", 1, 0.0, 0.2, 0.5)}), std::vector<double>{0.9});
    EXPECT_EQ(none.label, 0);
    EXPECT_TRUE(none.no_rule_fired);
    // Zero total relevance gives ratio 0 for that class.
    const auto zero = one_d({weighted("a", 1, 0.0, 1.0, 0.0), weighted("c", 0, 0.0, 1.0, 0.4)});
    EXPECT_EQ(assign_class(zero, std::vector<double>{0.5}).label, 0);
}

TEST(Inducer, SeparatedBlobs) {
    const auto data = make_blobs(2000, 2, 4.0, 1.0, 3);
    const auto rs = induce_rules(data, {});
    EXPECT_GE(count_label(rs, 0), 1u);
    EXPECT_GE(count_label(rs, 1), 1u);
    for (const auto& r : rs.rules()) {
        const auto s = rule_stats(r, data);
        EXPECT_GE(s.covering, 0.8) << r.id;
        EXPECT_LE(s.error, 0.1) << r.id;
        EXPECT_DOUBLE_EQ(r.relevance, s.relevance);
    }
}

TEST(Inducer, XorNeedsSeveralPositiveRules) {
    const auto data = make_xor(2000, 6);
    InducerConfig c;
    c.grid_resolution = 4;
    const auto rs = induce_rules(data, c);
    EXPECT_GE(count_label(rs, 1), 2u);
}

TEST(Inducer, RecoversKnownBox) {
    // Positives fill [0.2, 0.6] x [0.3, 0.7]; negatives fill the rest of the unit square.
    std::mt19937_64 rng(10);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> values;
    std::vector<Label> labels;
    const auto inside = [](double a, double b) { return a >= 0.2 && a <= 0.6 && b >= 0.3 && b <= 0.7; };
    while (labels.size() < 4000) {
        const double a = u(rng), b = u(rng);
        values.push_back(a);
        values.push_back(b);
        labels.push_back(inside(a, b) ? 1 : 0);
    }
    const Dataset data({"a", "b"}, values, labels);
    InducerConfig c;
    c.max_error = 0.02;
    const auto rs = induce_rules(data, c);
    const Rule* best = nullptr;
    for (const auto& r : rs.rules()) {
        if (r.label == 1 && (!best || r.covering > best->covering)) {
            best = &r;
        }
    }
    ASSERT_NE(best, nullptr);
    const double cell = 1.0 / static_cast<double>(c.grid_resolution) + 1e-3;
    EXPECT_NEAR(best->intervals[0].low, 0.2, cell);
    EXPECT_NEAR(best->intervals[0].high, 0.6, cell);
    EXPECT_NEAR(best->intervals[1].low, 0.3, cell);
    EXPECT_NEAR(best->intervals[1].high, 0.7, cell);
}

TEST(Inducer, SeededAndDeterministic) {
    const auto data = make_blobs(1000, 3, 2.0, 1.0, 12);
    const auto a = induce_rules(data, {});
    const auto b = induce_rules(data, {});
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        EXPECT_EQ(a.rule(k).id, b.rule(k).id);
        EXPECT_EQ(a.rule(k).intervals, b.rule(k).intervals);
    }
}

TEST(Inducer, RejectsDegenerateInput) {
    const Dataset single({"x"}, {0.1, 0.2, 0.3}, {1, 1, 1});
    try {
        induce_rules(single, {});
        FAIL();
    } catch (const InvalidInput& e) {
        EXPECT_NE(std::string(e.what()).find("single-class data"), std::string::npos);
    }
    EXPECT_THROW(induce_rules(Dataset({"x"}, {0.1, 0.2}, {0, 2}), {}), InvalidInput);
    InducerConfig bad;
    bad.grid_resolution = 1;
    EXPECT_THROW(induce_rules(make_blobs(100, 2, 3.0, 1.0, 1), bad), InvalidInput);
}

TEST(Inducer, ConstantFeatureIsHandled) {
    std::vector<double> values;
    std::vector<Label> labels;
    for (int i = 0; i < 40; ++i) {
        values.push_back(i < 20 ? 0.1 * i : 5.0 + 0.1 * i);
        values.push_back(3.0);
        labels.push_back(i < 20 ? 0 : 1);
    }
    const auto rs = induce_rules(Dataset({"a", "b"}, values, labels), {});
    EXPECT_GE(rs.size(), 2u);
    EXPECT_LT(rs.bounds().lower()[1], 3.0);
    EXPECT_GT(rs.bounds().upper()[1], 3.0);
}

TEST(RetrainOnCcs, InfiniteThresholdMeansEmptyCcs) {
    const auto data = make_blobs(600, 2, 3.0, 1.0, 2);
    const auto rs = induce_rules(data, {});
    const auto p = CalibratedPredictor::restore(rs, {}, 0.05, kInfiniteThreshold, 10);
    EXPECT_THROW(retrain_on_ccs(data, p, {}), EmptyCcsError);
}

TEST(RetrainOnCcs, ProducesCriticalClassRules) {
    const auto data = make_blobs(3000, 2, 3.0, 1.0, 2);
    const auto split = stratified_split(data, {0.5, 0.25, 0.25}, 2);
    const auto rs = induce_rules(split.train, {});
    const auto p = calibrate(rs, {}, split.calib, 0.05);
    const auto ccs = retrain_on_ccs(split.train, p, {});
    EXPECT_EQ(ccs.classes(), (std::array<Label, 2>{kNotCritical, kCritical}));
    EXPECT_GE(count_label(ccs, kCritical), 1u);
    for (const auto& r : ccs.rules()) {
        EXPECT_TRUE(r.label == kCritical || r.label == kNotCritical);
    }
}
