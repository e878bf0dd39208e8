#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "blockmodel/inconsistency.hpp"
#include "support.hpp"

using namespace blockmodel;
using testsupport::block;

namespace {
constexpr auto kSS = HomogeneityVariant::ss;
constexpr auto kAD = HomogeneityVariant::ad;
const std::vector<double> kSample = {1, 2, 3, 6};
}  // namespace

TEST(Parts, PositiveAndNegative) {
    EXPECT_EQ(pos_part(3), 3);
    EXPECT_EQ(neg_part(3), 0);
    EXPECT_EQ(pos_part(-2), 0);
    EXPECT_EQ(neg_part(-2), -2);
    EXPECT_EQ(pos_part(0), 0);
    EXPECT_EQ(neg_part(0), 0);
}

TEST(Deviation, HandValues) {
    EXPECT_DOUBLE_EQ(ss(kSample), 14.0);
    EXPECT_DOUBLE_EQ(ad(kSample), 6.0);
    EXPECT_DOUBLE_EQ(median(kSample), 2.5);
    EXPECT_DOUBLE_EQ(ss(kSample, CenterSpec::prespecified(0)), 50.0);
    EXPECT_DOUBLE_EQ(ad(kSample, CenterSpec::prespecified(0)), 12.0);
    const std::vector<double> flat = {4, 4, 4};
    EXPECT_EQ(ss(flat), 0.0);
    EXPECT_EQ(ad(flat), 0.0);
    EXPECT_THROW(ss(std::vector<double>{}), std::invalid_argument);
}

TEST(Binary, HandValues) {
    EXPECT_EQ(binary_block_inconsistency(block({{1, 0}, {1, 1}}), BlockType::null), 3);
    EXPECT_EQ(binary_block_inconsistency(block({{1, 0}, {1, 1}}), BlockType::com), 1);
    EXPECT_EQ(binary_block_inconsistency(block({{1, 0}, {0, 0}}), BlockType::reg), 3);
    EXPECT_EQ(binary_block_inconsistency(block({{1, 1, 1}, {0, 1, 0}}), BlockType::rdo), 0);
    EXPECT_THROW(binary_block_inconsistency(block({{2}}), BlockType::null), std::invalid_argument);
}

TEST(Binary, DiagonalVariantNullAndCom) {
    // Loops all 1, rest 0: a null block off the diagonal with a complete diagonal.
    const auto b = block({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, true, DiagonalPolicy::table_variant);
    EXPECT_EQ(binary_block_inconsistency(b, BlockType::null), 0);
    const auto c = block({{0, 1}, {1, 0}}, true, DiagonalPolicy::table_variant);
    EXPECT_EQ(binary_block_inconsistency(c, BlockType::com), 0);
    const auto d = block({{0, 1}, {1, 0}}, true, DiagonalPolicy::ordinary);
    EXPECT_EQ(binary_block_inconsistency(d, BlockType::com), 2);
    const auto e = block({{0, 1}, {1, 0}}, true, DiagonalPolicy::ignore);
    EXPECT_EQ(binary_block_inconsistency(e, BlockType::com), 0);
}

TEST(Valued, HandValues) {
    const auto b = block({{5, 3}, {0, 7}});
    EXPECT_EQ(valued_block_inconsistency(b, BlockType::null, 5, RowColFunction::max), 15);
    EXPECT_EQ(valued_block_inconsistency(b, BlockType::com, 5, RowColFunction::max), 7);
    EXPECT_EQ(valued_block_inconsistency(b, BlockType::reg, 5, RowColFunction::max), 0);
    EXPECT_EQ(valued_block_inconsistency(b, BlockType::rre, 10, RowColFunction::sum), 10);
    EXPECT_THROW(valued_block_inconsistency(b, BlockType::null, 0, RowColFunction::max), std::invalid_argument);
    EXPECT_THROW(valued_block_inconsistency(block({{-1}}), BlockType::null, 1, RowColFunction::max),
                 std::invalid_argument);
}

TEST(Homogeneity, HandValues) {
    const auto b = block({{1, 2}, {3, 6}});
    EXPECT_DOUBLE_EQ(homogeneity_block_inconsistency(b, BlockType::com, kSS, RowColFunction::mean), 14);
    EXPECT_DOUBLE_EQ(homogeneity_block_inconsistency(b, BlockType::com, kAD, RowColFunction::mean), 6);
    EXPECT_DOUBLE_EQ(homogeneity_block_inconsistency(b, BlockType::null, kSS, RowColFunction::mean), 50);
    const auto r = block({{2, 2}, {4, 4}});
    EXPECT_DOUBLE_EQ(homogeneity_block_inconsistency(r, BlockType::reg, kSS, RowColFunction::mean), 4);
    const auto flat = block({{3, 3}, {3, 3}});
    EXPECT_EQ(homogeneity_block_inconsistency(flat, BlockType::com, kSS, RowColFunction::mean), 0);
    EXPECT_EQ(homogeneity_block_inconsistency(flat, BlockType::com, kAD, RowColFunction::mean), 0);
    EXPECT_THROW(homogeneity_block_inconsistency(b, BlockType::rdo, kSS, RowColFunction::mean),
                 std::invalid_argument);
}

TEST(Normalize, Values) {
    EXPECT_DOUBLE_EQ(normalize(14, block({{1, 2}, {3, 6}})), 3.5);
    EXPECT_EQ(normalize(0, block({{1, 2}, {3, 6}})), 0);
    const auto d = block({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}, true, DiagonalPolicy::ignore);
    EXPECT_DOUBLE_EQ(normalize(12, d), 2.0);
}

// m = 1, f = max on {0,1} blocks reproduces binary counts for every type.
TEST(Properties, BinarySpecialization) {
    std::mt19937_64 rng(20240601);
    const DiagonalPolicy policies[] = {DiagonalPolicy::ignore, DiagonalPolicy::table_variant,
                                       DiagonalPolicy::ordinary};
    for (int trial = 0; trial < 600; ++trial) {
        const bool diag = trial % 2 == 1;
        const auto b = testsupport::random_block(rng, diag, policies[trial % 3], 2);
        for (BlockType t : kAllBlockTypes)
            ASSERT_EQ(valued_block_inconsistency(b, t, 1.0, RowColFunction::max),
                      binary_block_inconsistency(b, t))
                << to_string(t) << " trial " << trial;
    }
}

// δ(rre), δ(cre) <= δ(reg) <= δ(com) under every approach; for homogeneity
// with f = mean also δ(com) <= δ(null).
TEST(Properties, InconsistencyOrdering) {
    std::mt19937_64 rng(99);
    const DiagonalPolicy policies[] = {DiagonalPolicy::ignore, DiagonalPolicy::ordinary};
    auto ordered = [](double lo, double hi) { return lo <= hi + 1e-9 * std::max(1.0, std::abs(hi)); };
    for (int trial = 0; trial < 600; ++trial) {
        const bool diag = trial % 3 == 0;
        const auto pol = policies[trial % 2];
        const auto vb = testsupport::random_block(rng, diag, pol, 10);
        const auto bb = testsupport::random_block(rng, diag, pol, 2);
        std::vector<std::pair<std::string, std::function<double(BlockType)>>> measures = {
            {"binary", [&](BlockType t) { return binary_block_inconsistency(bb, t); }},
            {"valued m=3", [&](BlockType t) { return valued_block_inconsistency(vb, t, 3, RowColFunction::max); }},
            {"valued m=12 sum", [&](BlockType t) { return valued_block_inconsistency(vb, t, 12, RowColFunction::sum); }},
            {"ss", [&](BlockType t) { return homogeneity_block_inconsistency(vb, t, kSS, RowColFunction::mean); }},
            {"ad", [&](BlockType t) { return homogeneity_block_inconsistency(vb, t, kAD, RowColFunction::mean); }},
        };
        for (const auto& [name, d] : measures) {
            const double rre = d(BlockType::rre), cre = d(BlockType::cre), reg = d(BlockType::reg),
                         com = d(BlockType::com);
            ASSERT_TRUE(ordered(rre, reg)) << name << " trial " << trial;
            ASSERT_TRUE(ordered(cre, reg)) << name << " trial " << trial;
            ASSERT_TRUE(ordered(reg, com)) << name << " trial " << trial;
        }
        ASSERT_TRUE(ordered(homogeneity_block_inconsistency(vb, BlockType::com, kSS, RowColFunction::mean),
                            homogeneity_block_inconsistency(vb, BlockType::null, kSS, RowColFunction::mean)));
    }
}

TEST(Properties, NormalizedSumOfSquaresIsVariance) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const auto b = testsupport::random_block(rng, false, DiagonalPolicy::ignore, 20);
        const double m = mean(b.values);
        double var = 0;
        for (double v : b.values) var += (v - m) * (v - m);
        var /= static_cast<double>(b.values.size());
        const double got = normalize(homogeneity_block_inconsistency(b, BlockType::com, kSS, RowColFunction::mean), b);
        EXPECT_NEAR(got, var, 1e-12);
    }
}

TEST(Properties, Scaling) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        auto b = testsupport::random_block(rng, trial % 2 == 0, DiagonalPolicy::ignore, 9);
        auto scaled = b;
        for (double& v : scaled.values) v *= 2.0;
        for (BlockType t : {BlockType::null, BlockType::com, BlockType::rre, BlockType::cre, BlockType::reg}) {
            const double s = homogeneity_block_inconsistency(b, t, kSS, RowColFunction::mean);
            const double a = homogeneity_block_inconsistency(b, t, kAD, RowColFunction::mean);
            EXPECT_NEAR(homogeneity_block_inconsistency(scaled, t, kSS, RowColFunction::mean), 4 * s, 1e-9);
            EXPECT_NEAR(homogeneity_block_inconsistency(scaled, t, kAD, RowColFunction::mean), 2 * a, 1e-9);
        }
        for (BlockType t : kAllBlockTypes)
            EXPECT_NEAR(valued_block_inconsistency(scaled, t, 6, RowColFunction::sum),
                        2 * valued_block_inconsistency(b, t, 3, RowColFunction::sum), 1e-9);
    }
}
