#include <gtest/gtest.h>

#include "blockmodel/datasets.hpp"
#include "blockmodel/summary.hpp"

using namespace blockmodel;

namespace {
const Partition kFig2 = datasets::notes_borrowing_mean_regular_partition();
}

TEST(BlockSummaries, MeanRowSums) {
    const auto t = block_summaries(datasets::notes_borrowing(), kFig2, RowColFunction::sum);
    EXPECT_NEAR(t.mean_row(0, 2), 31.2, 1e-12);
    EXPECT_NEAR(t.mean_row(1, 2), 14.6, 1e-12);
    EXPECT_NEAR(t.mean_row(0, 1), 8.8, 1e-12);
    EXPECT_NEAR(t.mean_row(1, 0), 10.8, 1e-12);
    EXPECT_NEAR(t.mean_col(0, 2), 52.0, 1e-12);
    EXPECT_NEAR(t.mean_col(2, 1), 1.2, 1e-12);
    // Diagonal blocks: loops dropped, so each row sums over n - 1 cells.
    EXPECT_NEAR(t.mean_row(0, 0), 1.6, 1e-12);
    EXPECT_NEAR(t.mean_row(2, 2), 17.0, 1e-12);
}

TEST(BlockSummaries, DiagonalRowAndColumnMeansAgree) {
    for (auto f : {RowColFunction::sum, RowColFunction::mean}) {
        const auto t = block_summaries(datasets::notes_borrowing(), kFig2, f);
        for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(t.mean_row(i, i), t.mean_col(i, i), 1e-12);
    }
}

TEST(BlockSummaries, ZeroNetwork) {
    const auto net = load_network(std::vector<std::vector<double>>(4, std::vector<double>(4, 0)));
    const auto t = block_summaries(net, Partition::canonical({0, 0, 1, 1}), RowColFunction::max);
    for (double v : t.mean_row.data()) EXPECT_EQ(v, 0);
    for (double v : t.mean_col.data()) EXPECT_EQ(v, 0);
}

TEST(Histogram, Bins) {
    const auto h = make_histogram({0, 1, 2, 3, 4, 10}, 5);
    ASSERT_EQ(h.edges.size(), 6u);
    EXPECT_EQ(h.counts, (std::vector<std::size_t>{2, 2, 1, 0, 1}));
    EXPECT_TRUE(make_histogram({}).counts.empty());
}

TEST(RoundTo125, Ladder) {
    EXPECT_EQ(round_to_125(4.4), 5);
    EXPECT_EQ(round_to_125(8.8), 10);
    EXPECT_EQ(round_to_125(1.3), 1);
    EXPECT_EQ(round_to_125(2.9), 2);
    EXPECT_EQ(round_to_125(170), 200);
}

TEST(TwoMeans, SeparatesClusters) {
    const auto s = two_means_split({1, 1.2, 0.9, 50, 60, 55});
    ASSERT_TRUE(s);
    EXPECT_EQ(s->low.size(), 3u);
    EXPECT_GT(s->separation, 0.9);
    EXPECT_FALSE(two_means_split({3, 3, 3}));
}

TEST(SuggestM, SumRegularFigure2) {
    const auto s = suggest_m(datasets::notes_borrowing(), kFig2, RowColFunction::sum, true);
    EXPECT_TRUE(s.bimodal);
    EXPECT_EQ(s.candidates, (std::vector<double>{5, 10}));
    EXPECT_LE(s.range.first, 5);
    EXPECT_GE(s.range.second, 10);
}

TEST(SuggestM, MaxRegularFigure2) {
    const auto s = suggest_m(datasets::notes_borrowing(), kFig2, RowColFunction::max, true);
    ASSERT_FALSE(s.candidates.empty());
    EXPECT_EQ(s.candidates.front(), 5);
}

TEST(SuggestM, SliceInterval) {
    const auto s = suggest_m(datasets::notes_borrowing(), kFig2, RowColFunction::sum, true, 3.0);
    ASSERT_TRUE(s.slice_interval);
    EXPECT_EQ(s.slice_interval->first, 3);
    EXPECT_EQ(s.slice_interval->second, 6);
}

TEST(SuggestM, CellValuesForNonRegularModels) {
    const auto s = suggest_m(datasets::notes_borrowing(), std::nullopt, RowColFunction::max, false);
    EXPECT_EQ(s.basis, "cell values");
    for (double v : s.distribution) EXPECT_GT(v, 0);
}
