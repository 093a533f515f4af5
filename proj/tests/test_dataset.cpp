#include "rulecp/dataset.hpp"
#include "rulecp/error.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <string>

using namespace rulecp;

namespace {

template <typename Fn>
std::string error_message(Fn&& fn) {
    try {
        fn();
    } catch (const InvalidInput& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST(Csv, ParsesHeaderValuesAndLabels) {
    const auto d = parse_csv("a,b,label\n1.5,-2,0\n\n3e-1,4,1\n");
    ASSERT_EQ(d.size(), 2u);
    ASSERT_EQ(d.dims(), 2u);
    EXPECT_EQ(d.feature_names(), (std::vector<std::string>{"a", "b"}));
    EXPECT_DOUBLE_EQ(d.row(0)[0], 1.5);
    EXPECT_DOUBLE_EQ(d.row(1)[0], 0.3);
    EXPECT_EQ(d.label(0), 0);
    EXPECT_EQ(d.label(1), 1);
    EXPECT_EQ(d.count(1), 1u);
}

TEST(Csv, NanCellNamesLineAndColumn) {
    const auto msg = error_message([] { parse_csv("x1,x2,label\n1,2,0\n3,nan,1\n", "bad.csv"); });
    EXPECT_NE(msg.find("bad.csv"), std::string::npos);
    EXPECT_NE(msg.find("line 3"), std::string::npos);
    EXPECT_NE(msg.find("x2"), std::string::npos);
}

TEST(Csv, RejectsInfinityGarbageAndRaggedRows) {
    EXPECT_THROW(parse_csv("x,label\ninf,0\n"), InvalidInput);
    EXPECT_THROW(parse_csv("x,label\n1.0abc,0\n"), InvalidInput);
    const auto msg = error_message([] { parse_csv("x,y,label\n1,2,0\n1,0\n"); });
    EXPECT_NE(msg.find("line 3"), std::string::npos);
}

TEST(Csv, NonBinaryLabelIsExplicit) {
    const auto msg = error_message([] { parse_csv("x,label\n1,0\n2,2\n"); });
    EXPECT_NE(msg.find("non-binary label"), std::string::npos);
    const std::vector<Label> any;
    EXPECT_EQ(parse_csv("x,label\n1,-1\n2,7\n", "m", any).label(1), 7);
}

TEST(Csv, FormatRoundTripsExactly) {
    const Dataset d({"u", "v"}, {0.1, 1.0 / 3.0, -2.5e-17, 123456789.123456789}, {1, 0});
    const auto back = parse_csv(format_csv(d));
    EXPECT_EQ(back.values(), d.values());
    EXPECT_EQ(back.labels(), d.labels());
    EXPECT_EQ(format_csv(back), format_csv(d));
}

TEST(Dataset, ConstructorValidatesShape) {
    EXPECT_THROW(Dataset({"a"}, {1.0, 2.0}, {0}), InvalidInput);
    EXPECT_THROW(Dataset({}, {}, {}), InvalidInput);
}

TEST(Split, StratifiedAndSeeded) {
    const auto data = make_blobs(900, 2, 3.0, 1.0, 5);
    const auto a = stratified_split(data, {0.6, 0.2, 0.2}, 11);
    const auto b = stratified_split(data, {0.6, 0.2, 0.2}, 11);
    const auto c = stratified_split(data, {0.6, 0.2, 0.2}, 12);
    EXPECT_EQ(a.train.values(), b.train.values());
    EXPECT_NE(a.train.values(), c.train.values());
    EXPECT_EQ(a.train.size() + a.calib.size() + a.test.size(), data.size());
    EXPECT_EQ(a.train.count(0), 270u);
    EXPECT_EQ(a.calib.count(1), 90u);
    EXPECT_EQ(a.test.count(0), 90u);
}

TEST(Split, PartsAreDisjointAndCoverTheData) {
    const auto data = make_blobs(301, 2, 3.0, 1.0, 5);
    const auto s = stratified_split(data, {0.5, 0.25, 0.25}, 3);
    std::vector<double> all;
    for (const auto* part : {&s.train, &s.calib, &s.test}) {
        all.insert(all.end(), part->values().begin(), part->values().end());
    }
    auto expected = data.values();
    std::sort(all.begin(), all.end());
    std::sort(expected.begin(), expected.end());
    EXPECT_EQ(all, expected);
}

TEST(Split, RejectsBadFractions) {
    const auto data = make_blobs(20, 2, 3.0, 1.0, 5);
    EXPECT_THROW(stratified_split(data, {0.5, 0.5, 0.5}, 1), InvalidInput);
    EXPECT_THROW(stratified_split(data, {1.0, 0.0, 0.0}, 1), InvalidInput);
}

TEST(Generators, BlobsAreSeededAndBalanced) {
    const auto a = make_blobs(1000, 3, 4.0, 1.0, 9);
    EXPECT_EQ(a.values(), make_blobs(1000, 3, 4.0, 1.0, 9).values());
    EXPECT_EQ(a.dims(), 3u);
    EXPECT_EQ(a.count(0), 500u);
    double mean1 = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a.label(i) == 1) {
            mean1 += a.row(i)[2];
        }
    }
    EXPECT_NEAR(mean1 / 500.0, 4.0, 0.2);
}

TEST(Generators, XorLabelsFollowQuadrants) {
    const auto d = make_xor(500, 4);
    for (std::size_t i = 0; i < d.size(); ++i) {
        const bool a = d.row(i)[0] > 0.5, b = d.row(i)[1] > 0.5;
        EXPECT_EQ(d.label(i), (a != b) ? 1 : 0);
    }
}
