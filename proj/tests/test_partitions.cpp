#include <gtest/gtest.h>

#include <functional>
#include <random>
#include <set>

#include "genbunch/occupation.hpp"
#include "genbunch/partitions.hpp"

using namespace genbunch;

namespace {

// Number of partitions of n with parts at most k, by the usual recurrence.
long count_partitions(int n, int k)
{
    if (n == 0) return 1;
    if (n < 0 || k == 0) return 0;
    return count_partitions(n - k, k) + count_partitions(n, k - 1);
}

// Every filling of the boxes with labels in [d], keeping the semistandard ones.
// Returns the number of tableaux for each weight (label counts).
std::map<std::vector<int>, long> brute_ssyt(const Partition& lambda, int d)
{
    const std::vector<Box> cells = boxes(lambda);
    std::map<std::vector<int>, long> out;
    std::vector<int> fill(cells.size(), 1);
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == cells.size()) {
            std::map<std::pair<int, int>, int> at;
            for (std::size_t i = 0; i < cells.size(); ++i) at[{cells[i].row, cells[i].col}] = fill[i];
            for (const auto& [rc, v] : at) {
                auto right = at.find({rc.first, rc.second + 1});
                if (right != at.end() && right->second < v) return;
                auto below = at.find({rc.first + 1, rc.second});
                if (below != at.end() && below->second <= v) return;
            }
            std::vector<int> weight(static_cast<std::size_t>(d), 0);
            for (int v : fill) ++weight[static_cast<std::size_t>(v - 1)];
            ++out[weight];
            return;
        }
        for (int v = 1; v <= d; ++v) {
            fill[k] = v;
            rec(k + 1);
        }
    };
    rec(0);
    return out;
}

// Standard tableaux by removing the box holding the largest entry.
long count_syt(const std::vector<int>& shape)
{
    int total = 0;
    for (int p : shape) total += p;
    if (total == 0) return 1;
    long out = 0;
    for (std::size_t r = 0; r < shape.size(); ++r) {
        if (shape[r] == 0) continue;
        if (r + 1 < shape.size() && shape[r + 1] == shape[r]) continue;
        std::vector<int> smaller = shape;
        --smaller[r];
        out += count_syt(smaller);
    }
    return out;
}

// mu refines lambda iff the parts of mu can be assigned to rows with exact sums.
bool refines_brute(const Partition& lambda, const Partition& mu)
{
    const int rows = lambda.length();
    const int pieces = mu.length();
    std::vector<int> assign(static_cast<std::size_t>(pieces), 0);
    while (true) {
        std::vector<int> sums(static_cast<std::size_t>(rows), 0);
        for (int k = 0; k < pieces; ++k) sums[static_cast<std::size_t>(assign[static_cast<std::size_t>(k)])] += mu[k];
        if (sums == lambda.parts()) return true;
        int k = 0;
        while (k < pieces && ++assign[static_cast<std::size_t>(k)] == rows) assign[static_cast<std::size_t>(k++)] = 0;
        if (k == pieces) return false;
    }
}

} // namespace

TEST(Partition, StripsTrailingZerosAndValidates)
{
    EXPECT_EQ(Partition({2, 1, 0, 0}), Partition({2, 1}));
    EXPECT_EQ(Partition({2, 1}).size(), 3);
    EXPECT_THROW(Partition({1, 2}), validation_error);
    EXPECT_THROW(Partition({2, -1}), validation_error);
    EXPECT_EQ(Partition({3, 1, 1}).conjugate(), Partition({3, 1, 1}));
    EXPECT_EQ(Partition({4, 2}).conjugate(), Partition({2, 2, 1, 1}));
    EXPECT_EQ(Partition({3, 2, 2}).factorial_product(), 24u);
}

TEST(EnumeratePartitions, Examples)
{
    EXPECT_EQ(enumerate_partitions(3, 3), (std::vector<Partition>{{3}, {2, 1}, {1, 1, 1}}));
    EXPECT_EQ(enumerate_partitions(3, 1), (std::vector<Partition>{{3}}));
    EXPECT_EQ(enumerate_partitions(6, 6).size(), 11u);
    EXPECT_EQ(enumerate_partitions(0, 3), (std::vector<Partition>{Partition{}}));
    EXPECT_THROW(enumerate_partitions(-1, 3), validation_error);
}

TEST(EnumeratePartitions, MatchesRecurrenceAndIsReverseLex)
{
    for (int n = 1; n <= 12; ++n) {
        const auto all = enumerate_partitions(n);
        EXPECT_EQ(static_cast<long>(all.size()), count_partitions(n, n));
        for (std::size_t i = 1; i < all.size(); ++i) EXPECT_GT(all[i - 1], all[i]);
        // length filter keeps exactly partitions into parts of size <= len via conjugation
        for (int len = 1; len <= n; ++len)
            EXPECT_EQ(static_cast<long>(enumerate_partitions(n, len).size()), count_partitions(n, len));
    }
}

TEST(DimStandard, Examples)
{
    EXPECT_EQ(dim_standard(Partition{5}), 1u);
    EXPECT_EQ(dim_standard(Partition{1, 1, 1}), 1u);
    EXPECT_EQ(dim_standard(Partition{2, 1}), 2u);
}

TEST(DimStandard, HookFormulaMatchesTableauCount)
{
    for (int n = 1; n <= 8; ++n)
        for (const Partition& lambda : enumerate_partitions(n))
            EXPECT_EQ(static_cast<long>(dim_standard(lambda)), count_syt(lambda.parts())) << lambda.str();
}

TEST(DimStandard, SquaresSumToFactorial)
{
    for (int n = 1; n <= 8; ++n) {
        u128 total = 0;
        for (const Partition& lambda : enumerate_partitions(n)) total += static_cast<u128>(dim_standard(lambda)) * dim_standard(lambda);
        EXPECT_TRUE(total == factorial(n)) << n;
    }
}

TEST(HookLength, CornerAndOrigin)
{
    const Partition lambda{3, 2};
    EXPECT_EQ(hook_length(lambda, {1, 1}), 4);
    EXPECT_EQ(hook_length(lambda, {2, 2}), 1);
    EXPECT_THROW(hook_length(lambda, {2, 3}), validation_error);
}

TEST(RisingFactorial, Examples)
{
    EXPECT_TRUE(rising_factorial(3, Partition{2}) == 12);
    EXPECT_TRUE(rising_factorial(1, Partition{1, 1}) == 0);
    EXPECT_TRUE(rising_factorial(4, Partition{2, 1}) == 60);
    EXPECT_THROW(rising_factorial(-1, Partition{1}), validation_error);
}

TEST(RisingFactorial, VanishesExactlyWhenTooManyRows)
{
    for (int n = 1; n <= 8; ++n)
        for (int d = 0; d <= 8; ++d)
            for (const Partition& lambda : enumerate_partitions(n))
                EXPECT_EQ(rising_factorial(d, lambda) == 0, lambda.length() > d) << lambda.str() << " d=" << d;
}

TEST(Kostka, Examples)
{
    for (const Partition& mu : enumerate_partitions(5)) EXPECT_EQ(kostka(Partition{5}, mu), 1u);
    EXPECT_EQ(kostka(Partition{2, 1}, Partition{1, 1, 1}), 2u);
    EXPECT_EQ(kostka(Partition{1, 1, 1}, Partition{2, 1}), 0u);
    EXPECT_THROW(kostka(Partition{2, 1}, Partition{2}), validation_error);
}

TEST(Kostka, SingleColumnWeightGivesDimension)
{
    for (int n = 1; n <= 6; ++n)
        for (const Partition& lambda : enumerate_partitions(n))
            EXPECT_EQ(kostka(lambda, Partition::column(n)), dim_standard(lambda));
}

TEST(Kostka, MatchesBruteForceForEveryComposition)
{
    for (int n = 1; n <= 5; ++n)
        for (int d = 1; d <= 4; ++d)
            for (const Partition& lambda : enumerate_partitions(n)) {
                const auto brute = brute_ssyt(lambda, d);
                for (const Occupation& w : enumerate_occupations(n, d)) {
                    auto it = brute.find(w.counts);
                    const long expected = it == brute.end() ? 0 : it->second;
                    EXPECT_EQ(static_cast<long>(kostka(lambda, w.counts)), expected) << lambda.str() << " w=" << w.str();
                }
            }
}

TEST(CountSsyt, Examples)
{
    EXPECT_TRUE(count_ssyt(Partition{2}, 2) == 3);
    EXPECT_TRUE(count_ssyt(Partition{1, 1}, 1) == 0);
    EXPECT_TRUE(count_ssyt(Partition{2, 1}, 3) == 8);
}

TEST(CountSsyt, EqualsSumOfKostkaOverWeights)
{
    for (int n = 1; n <= 5; ++n)
        for (int d = 1; d <= 4; ++d)
            for (const Partition& lambda : enumerate_partitions(n)) {
                u128 total = 0;
                for (const Occupation& w : enumerate_occupations(n, d)) total += kostka(lambda, w.counts);
                EXPECT_TRUE(count_ssyt(lambda, d) == total) << lambda.str() << " d=" << d;
                // dim(lambda) d^{up lambda} / n!
                EXPECT_TRUE(count_ssyt(lambda, d) * factorial(n) == rising_factorial(d, lambda) * dim_standard(lambda));
            }
}

TEST(Majorizes, Examples)
{
    const std::vector<double> two{2.0}, ones{1.0, 1.0};
    EXPECT_TRUE(majorizes(two, ones));
    EXPECT_FALSE(majorizes(ones, two));
    const std::vector<double> flat{0.5, 0.5}, skew{0.7, 0.3};
    EXPECT_FALSE(majorizes(flat, skew));
    EXPECT_TRUE(majorizes(skew, skew));
    const std::vector<double> other{0.5, 0.4};
    EXPECT_THROW(majorizes(flat, other), validation_error);
    EXPECT_TRUE(majorizes(Partition{2}, Partition{1, 1}));
    EXPECT_FALSE(majorizes(Partition{2, 2}, Partition{3, 1}));
}

TEST(Majorizes, AgreesWithPrefixSumChecker)
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int agree_true = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        const int len = 2 + trial % 4;
        std::vector<double> a(len), b(len);
        double sa = 0, sb = 0;
        for (int i = 0; i < len; ++i) {
            a[i] = u(rng);
            b[i] = u(rng);
            sa += a[i];
            sb += b[i];
        }
        for (double& x : a) x /= sa;
        for (double& x : b) x /= sb;
        std::vector<double> x = a, y = b;
        std::sort(x.rbegin(), x.rend());
        std::sort(y.rbegin(), y.rend());
        bool expected = true;
        double px = 0, py = 0;
        for (int i = 0; i < len; ++i) {
            px += x[i];
            py += y[i];
            if (px < py - 1e-12) expected = false;
        }
        EXPECT_EQ(majorizes(a, b), expected);
        agree_true += expected;
    }
    EXPECT_GT(agree_true, 0);
}

TEST(Refines, Examples)
{
    for (const Partition& mu : enumerate_partitions(5)) EXPECT_TRUE(refines(Partition{5}, mu));
    EXPECT_TRUE(refines(Partition{2, 1}, Partition{1, 1, 1}));
    EXPECT_FALSE(refines(Partition{3, 1}, Partition{2, 2}));
    EXPECT_THROW(refines(Partition{3}, Partition{2}), validation_error);
}

TEST(Refines, ReflexiveTransitiveAndMatchesAssignmentSearch)
{
    for (int n = 1; n <= 6; ++n) {
        const auto all = enumerate_partitions(n);
        for (const Partition& a : all) {
            EXPECT_TRUE(refines(a, a));
            for (const Partition& b : all) {
                EXPECT_EQ(refines(a, b), refines_brute(a, b)) << a.str() << " / " << b.str();
                if (!refines(a, b)) continue;
                EXPECT_TRUE(majorizes(a, b));
                for (const Partition& c : all) {
                    if (refines(b, c)) {
                        EXPECT_TRUE(refines(a, c));
                    }
                }
            }
        }
    }
}

TEST(OrderedSetPartitions, Counts)
{
    EXPECT_EQ(ordered_set_partitions({1, 2}, Partition{1, 1}).size(), 2u);
    EXPECT_EQ(ordered_set_partitions({1, 2, 3}, Partition{2, 1}).size(), 3u);
    EXPECT_EQ(ordered_set_partitions({1, 2, 3, 4}, Partition{2, 2}).size(), 6u);
    EXPECT_THROW(ordered_set_partitions({1, 1}, Partition{1, 1}), validation_error);
    EXPECT_THROW(ordered_set_partitions({1, 2, 3}, Partition{1, 1}), validation_error);
}

TEST(OrderedSetPartitions, DistinctCoveringBlocks)
{
    for (int n = 1; n <= 6; ++n)
        for (const Partition& mu : enumerate_partitions(n)) {
            std::vector<int> items(static_cast<std::size_t>(n));
            std::iota(items.begin(), items.end(), 10);
            const auto all = ordered_set_partitions(items, mu);
            EXPECT_EQ(all.size(), factorial(n) / mu.factorial_product());
            std::set<OrderedSetPartition> unique(all.begin(), all.end());
            EXPECT_EQ(unique.size(), all.size());
            for (const auto& r : all) {
                std::vector<int> seen;
                ASSERT_EQ(static_cast<int>(r.size()), mu.length());
                for (int i = 0; i < mu.length(); ++i) {
                    EXPECT_EQ(static_cast<int>(r[static_cast<std::size_t>(i)].size()), mu[i]);
                    seen.insert(seen.end(), r[static_cast<std::size_t>(i)].begin(), r[static_cast<std::size_t>(i)].end());
                }
                std::sort(seen.begin(), seen.end());
                EXPECT_EQ(seen, items);
            }
        }
}

TEST(RobinHoodPairs, OnlyPairForTwo)
{
    std::mt19937_64 rng(3);
    for (const auto& [mu, lambda] : robin_hood_pairs(rng, 2, 10)) {
        EXPECT_EQ(mu, Partition{2});
        EXPECT_EQ(lambda, (Partition{1, 1}));
    }
}

TEST(RobinHoodPairs, SingleTransferFromRow)
{
    EXPECT_EQ(detail::apply_robin_hood(Partition{4}, {0, 1}), (Partition{3, 1}));
    const auto moves = detail::robin_hood_moves(Partition{4});
    ASSERT_EQ(moves.size(), 1u);
}

TEST(RobinHoodPairs, FirstStrictlyMajorizesSecond)
{
    std::mt19937_64 rng(5);
    for (int n = 2; n <= 8; ++n)
        for (const auto& [mu, lambda] : robin_hood_pairs(rng, n, 50)) {
            EXPECT_EQ(mu.size(), n);
            EXPECT_EQ(lambda.size(), n);
            EXPECT_NE(mu, lambda);
            EXPECT_TRUE(majorizes(mu, lambda));
        }
}

TEST(Factorial, CapAndWideStrings)
{
    EXPECT_EQ(factorial(0), 1u);
    EXPECT_EQ(factorial(20), 2432902008176640000ull);
    EXPECT_THROW(factorial(21), validation_error);
    EXPECT_EQ(to_string(static_cast<u128>(factorial(20)) * 1000), "2432902008176640000000");
}
