#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <random>

#include "genbunch/symfunc.hpp"

using namespace genbunch;

namespace {

// Bialternant formula: det(a_i^{lambda_j + L - j}) / det(a_i^{L - j}), for distinct a.
double schur_bialternant(const Partition& lambda, const std::vector<double>& a)
{
    const int L = static_cast<int>(a.size());
    if (lambda.length() > L) return 0.0;
    Eigen::MatrixXd num(L, L), den(L, L);
    for (int i = 0; i < L; ++i)
        for (int j = 0; j < L; ++j) {
            num(i, j) = std::pow(a[static_cast<std::size_t>(i)], lambda[j] + L - 1 - j);
            den(i, j) = std::pow(a[static_cast<std::size_t>(i)], L - 1 - j);
        }
    return num.determinant() / den.determinant();
}

} // namespace

TEST(PowerSum, Examples)
{
    const std::vector<double> half{0.5, 0.5};
    const std::vector<double> alpha{0.2, 0.3, 0.5};
    EXPECT_NEAR(power_sum(Partition{1, 1}, alpha), 1.0, 1e-15);
    EXPECT_NEAR(power_sum(Partition{2}, half), 0.5, 1e-15);
    EXPECT_NEAR(power_sum(Partition{2, 1}, half), 0.5, 1e-15);
}

TEST(SchurPoly, Examples)
{
    const std::vector<double> point{1.0, 0.0, 0.0};
    for (int n = 1; n <= 5; ++n)
        for (const Partition& lambda : enumerate_partitions(n))
            EXPECT_NEAR(schur_poly(lambda, point), lambda == Partition::row(n) ? 1.0 : 0.0, 1e-15);
    const std::vector<double> half{0.5, 0.5};
    EXPECT_NEAR(schur_poly(Partition{2}, half), 0.75, 1e-15);
    EXPECT_NEAR((power_sum(Partition{1, 1}, half) + power_sum(Partition{2}, half)) / 2, 0.75, 1e-15);
    const std::vector<double> ab{0.3, 1.7};
    EXPECT_NEAR(schur_poly(Partition{1, 1}, ab), 0.3 * 1.7, 1e-15);
}

TEST(SchurPoly, TableauAndCharacterRoutesAgree)
{
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 100; ++trial) {
        const int L = 1 + trial % 5;
        const ProbVector alpha = random_prob_vector(rng, L);
        for (int n = 1; n <= 6; ++n)
            for (const Partition& lambda : enumerate_partitions(n)) {
                const double a = detail::schur_by_tableaux(lambda, alpha);
                const double b = detail::schur_by_characters(lambda, alpha);
                EXPECT_NEAR(a, b, 1e-10) << lambda.str();
            }
    }
}

TEST(SchurPoly, MatchesBialternant)
{
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 30; ++trial) {
        const int L = 2 + trial % 3;
        const ProbVector alpha = random_prob_vector(rng, L);
        for (int n = 1; n <= 6; ++n)
            for (const Partition& lambda : enumerate_partitions(n))
                EXPECT_NEAR(schur_poly(lambda, alpha), schur_bialternant(lambda, alpha), 1e-9) << lambda.str();
    }
}

TEST(SchurPoly, VanishesBeyondSupportAndIsSymmetric)
{
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        ProbVector alpha = random_prob_vector(rng, 4);
        alpha[static_cast<std::size_t>(trial % 4)] = 0.0;
        double total = 0;
        for (double a : alpha) total += a;
        for (double& a : alpha) a /= total;
        ProbVector shuffled = alpha;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        for (int n = 1; n <= 5; ++n)
            for (const Partition& lambda : enumerate_partitions(n)) {
                if (lambda.length() > 3) {
                    EXPECT_EQ(schur_poly(lambda, alpha), 0.0);
                }
                EXPECT_NEAR(schur_poly(lambda, alpha), schur_poly(lambda, shuffled), 1e-12);
            }
    }
}

TEST(SchurPoly, TinyEntriesCountAsZero)
{
    const std::vector<double> alpha{1.0 - 1e-16, 1e-16};
    EXPECT_EQ(schur_poly(Partition{1, 1}, alpha), 0.0);
}

TEST(SwDistribution, Examples)
{
    const std::vector<double> point{0.0, 1.0};
    const auto d = sw_distribution(3, point);
    EXPECT_NEAR(d[Partition{3}], 1.0, 1e-15);
    EXPECT_EQ(d.q.size(), 1u);

    const std::vector<double> half{0.5, 0.5};
    const auto d2 = sw_distribution(2, half);
    EXPECT_NEAR(d2[Partition{2}], 0.75, 1e-15);
    EXPECT_NEAR(d2[(Partition{1, 1})], 0.25, 1e-15);

    const std::vector<double> alpha{0.1, 0.2, 0.7};
    const auto d1 = sw_distribution(1, alpha);
    EXPECT_NEAR(d1[Partition{1}], 1.0, 1e-15);

    const std::vector<double> bad{0.5, 0.6};
    EXPECT_THROW(sw_distribution(2, bad), validation_error);
    EXPECT_THROW(sw_distribution(0, half), validation_error);
}

TEST(SwDistribution, Normalized)
{
    std::mt19937_64 rng(24);
    for (int trial = 0; trial < 20; ++trial) {
        const ProbVector alpha = random_prob_vector(rng, 1 + trial % 5);
        for (int n = 1; n <= 8; ++n) {
            const auto d = sw_distribution(n, alpha);
            EXPECT_NEAR(d.total(), 1.0, 1e-10);
            for (const auto& [lambda, p] : d.q) {
                EXPECT_GE(p, -1e-15);
                EXPECT_LE(lambda.length(), static_cast<int>(alpha.size()));
            }
        }
    }
}

TEST(SwSample, Examples)
{
    std::mt19937_64 rng(25);
    const std::vector<double> point{1.0, 0.0};
    for (const Partition& p : sw_sample(rng, sw_distribution(4, point), 100)) EXPECT_EQ(p, Partition{4});
    EXPECT_TRUE(sw_sample(rng, sw_distribution(4, point), 0).empty());

    const std::vector<double> half{0.5, 0.5};
    const auto samples = sw_sample(rng, sw_distribution(2, half), 100000);
    const double freq = static_cast<double>(std::count(samples.begin(), samples.end(), Partition{2})) / 100000.0;
    EXPECT_NEAR(freq, 0.75, 0.01);
}

TEST(SwSample, Deterministic)
{
    const std::vector<double> alpha{0.5, 0.3, 0.2};
    std::mt19937_64 a(7), b(7);
    EXPECT_EQ(sw_sample(a, sw_distribution(4, alpha), 50), sw_sample(b, sw_distribution(4, alpha), 50));
}

TEST(RobinHoodProbPairs, Majorize)
{
    std::mt19937_64 rng(26);
    for (int dim = 2; dim <= 6; ++dim)
        for (const auto& [a, b] : robin_hood_prob_pairs(rng, dim, 50)) {
            EXPECT_NO_THROW(validate_prob_vector(b));
            EXPECT_TRUE(majorizes(a, b));
        }
}

TEST(ValidateProbVector, Rejects)
{
    EXPECT_THROW(validate_prob_vector(std::vector<double>{}), validation_error);
    EXPECT_THROW(validate_prob_vector(std::vector<double>{-0.1, 1.1}), validation_error);
    EXPECT_THROW(validate_prob_vector(std::vector<double>{0.5, 0.4}), validation_error);
    EXPECT_NO_THROW(validate_prob_vector(std::vector<double>{0.25, 0.75}));
}
