#include <gtest/gtest.h>

#include <set>

#include "blockmodel/datasets.hpp"
#include "blockmodel/search.hpp"
#include "support.hpp"

using namespace blockmodel;

namespace {
ModelSpec spec_of(Approach a, BlockTypeSet allowed, RowColFunction f = RowColFunction::max) {
    ModelSpec s;
    s.approach = a;
    s.allowed = AllowedBlocks(allowed);
    s.f = f;
    return s;
}

// Counts canonical forms of all k^n labelings that use exactly k labels.
std::size_t brute_force_partitions(std::size_t n, std::size_t k) {
    std::set<std::vector<int>> seen;
    std::vector<int> a(n, 0);
    while (true) {
        const auto p = Partition::canonical(a);
        if (p.k() == k) seen.insert(p.assignment());
        std::size_t i = 0;
        while (i < n && ++a[i] == static_cast<int>(k)) a[i++] = 0;
        if (i == n) break;
    }
    return seen.size();
}
}  // namespace

TEST(Stirling, MatchesBruteForce) {
    for (std::size_t n = 1; n <= 7; ++n)
        for (std::size_t k = 1; k <= n; ++k) EXPECT_EQ(stirling2(n, k), brute_force_partitions(n, k));
    EXPECT_EQ(stirling2(13, 3), 261625u);
    EXPECT_EQ(stirling2(3, 4), 0u);
}

TEST(Enumeration, CountsAndCanonical) {
    std::size_t count = 0;
    for_each_partition(4, 2, [&](const std::vector<int>& a) {
        EXPECT_EQ(Partition::canonical(a).assignment(), a);
        ++count;
    });
    EXPECT_EQ(count, 7u);
    std::set<std::vector<int>> distinct;
    for_each_partition(8, 3, [&](const std::vector<int>& a) { distinct.insert(a); });
    EXPECT_EQ(distinct.size(), stirling2(8, 3));
}

TEST(Exhaustive, ThreeUnitsBruteForce) {
    const auto net = load_network({{0, 5, 0}, {5, 0, 0}, {0, 0, 0}});
    const auto s = spec_of(Approach::hom_ss(), {BlockType::com});
    const auto r = exhaustive_search(net, s, 2);
    EXPECT_EQ(r.evaluations, 3u);
    // {1,2 | 3}: both diagonal-ignored off blocks are constant -> 0.
    EXPECT_EQ(r.best.total, 0);
    EXPECT_EQ(r.best.partition, Partition::canonical({0, 0, 1}));
    EXPECT_GT(total_inconsistency(net, Partition::canonical({0, 1, 0}), s).total, 0);
    EXPECT_GT(total_inconsistency(net, Partition::canonical({0, 1, 1}), s).total, 0);
}

TEST(Exhaustive, BudgetGuard) {
    const auto net = datasets::notes_borrowing();
    EXPECT_THROW(exhaustive_search(net, spec_of(Approach::hom_ss(), {BlockType::reg}), 5, 1000),
                 std::invalid_argument);
}

TEST(LocalSearch, AgreesWithExhaustiveOnSmallNetworks) {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 12; ++trial) {
        const auto net = testsupport::random_network(rng, 7, 6);
        const auto s = spec_of(trial % 2 ? Approach::hom_ad() : Approach::valued(3),
                               {BlockType::null, BlockType::com, BlockType::reg});
        SearchConfig c;
        c.k = 3;
        c.restarts = 30;
        c.seed = static_cast<std::uint64_t>(trial);
        const auto local = local_search(net, s, c);
        const auto exact = exhaustive_search(net, s, 3);
        EXPECT_NEAR(local.best.total, exact.best.total, 1e-9 * std::max(1.0, exact.best.total));
    }
}

TEST(LocalSearch, ZeroNetworkStopsAtFirstEvaluation) {
    const auto net = load_network(std::vector<std::vector<double>>(5, std::vector<double>(5, 0)));
    SearchConfig c;
    c.k = 2;
    c.restarts = 1;
    const auto r = local_search(net, spec_of(Approach::hom_ss(), {BlockType::null}), c);
    EXPECT_EQ(r.best.total, 0);
    EXPECT_EQ(r.restarts_reaching_best, 1u);
}

TEST(LocalSearch, Figure2Partition) {
    SearchConfig c;
    c.k = 3;
    c.restarts = 100;
    const auto r = local_search(datasets::notes_borrowing(),
                                spec_of(Approach::hom_ss(), {BlockType::reg}, RowColFunction::mean), c);
    EXPECT_EQ(r.best.partition, datasets::notes_borrowing_mean_regular_partition());
    EXPECT_EQ(r.optima.size(), 1u);
}

TEST(LocalSearch, DeterministicAndThreadIndependent) {
    const auto net = datasets::notes_borrowing();
    const auto s = spec_of(Approach::valued(5), {BlockType::null, BlockType::reg});
    SearchConfig c;
    c.k = 3;
    c.restarts = 20;
    c.seed = 9;
    const auto a = local_search(net, s, c);
    const auto b = local_search(net, s, c);
    c.threads = 4;
    const auto t = local_search(net, s, c);
    for (const auto* other : {&b, &t}) {
        EXPECT_EQ(a.best.partition, other->best.partition);
        EXPECT_EQ(a.best.total, other->best.total);
        EXPECT_EQ(a.optima, other->optima);
        EXPECT_EQ(a.restarts_reaching_best, other->restarts_reaching_best);
        EXPECT_EQ(a.evaluations, other->evaluations);
    }
}

TEST(LocalSearch, ExplicitStartAndErrors) {
    const auto net = datasets::notes_borrowing();
    const auto s = spec_of(Approach::hom_ss(), {BlockType::reg}, RowColFunction::mean);
    SearchConfig c;
    c.k = 3;
    c.restarts = 1;
    const auto r = local_search(net, s, c, datasets::notes_borrowing_mean_regular_partition());
    EXPECT_EQ(r.best.partition, datasets::notes_borrowing_mean_regular_partition());
    c.k = 14;
    EXPECT_THROW(local_search(net, s, c), std::invalid_argument);
    c.k = 0;
    EXPECT_THROW(local_search(net, s, c), std::invalid_argument);
}

TEST(TieMultiplicity, BinaryManyHomogeneityOne) {
    const auto sliced = slice(datasets::notes_borrowing(), 5);
    const auto bin = exhaustive_search(sliced, spec_of(Approach::binary(), {BlockType::null, BlockType::reg}), 3);
    EXPECT_GE(bin.optima.size(), 10u);
    const auto hom = exhaustive_search(datasets::notes_borrowing(),
                                       spec_of(Approach::hom_ss(), {BlockType::reg}, RowColFunction::mean), 3);
    EXPECT_EQ(hom.optima.size(), 1u);
}

namespace {
std::size_t optima_with_image(double threshold, const std::vector<BlockType>& want) {
    const auto sliced = slice(datasets::notes_borrowing(), threshold);
    const auto s = spec_of(Approach::binary(), {BlockType::null, BlockType::reg});
    const auto r = exhaustive_search(sliced, s, 3);
    std::size_t hits = 0;
    for (const auto& p : r.optima) {
        const auto img = total_inconsistency(sliced, p, s).image;
        std::vector<std::size_t> perm = {0, 1, 2};
        do {
            bool same = true;
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = 0; j < 3; ++j)
                    if (img(perm[i], perm[j]) != want[i * 3 + j]) same = false;
            if (same) {
                ++hits;
                break;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return hits;
}
constexpr BlockType N = BlockType::null;
constexpr BlockType R = BlockType::reg;
}  // namespace

// Sliced at 1: two co-optimal partitions carry the printed image.
TEST(SlicedImages, ThresholdOne) {
    EXPECT_EQ(optima_with_image(1, {N, R, R, R, R, R, N, N, R}), 2u);
}

// Sliced at 3: the unique optimum carries the printed image.
TEST(SlicedImages, ThresholdThree) {
    EXPECT_EQ(optima_with_image(3, {N, N, R, N, R, R, N, N, N}), 1u);
}
