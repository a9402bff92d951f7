#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include "genbunch/linalg.hpp"
#include "genbunch/parallel.hpp"

using namespace genbunch;

namespace {

// Definition of the normalized immanant with a character lookup per permutation.
complex immanant_reference(const Partition& lambda, const ComplexMatrix& a)
{
    const int n = static_cast<int>(a.rows());
    std::vector<int> sigma(static_cast<std::size_t>(n));
    std::iota(sigma.begin(), sigma.end(), 0);
    complex total = 0.0;
    do {
        complex prod = 1.0;
        for (int x = 0; x < n; ++x) prod *= a(x, sigma[static_cast<std::size_t>(x)]);
        total += static_cast<double>(character(lambda, cycle_type(Permutation(sigma)))) * prod;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return total / static_cast<double>(dim_standard(lambda));
}

ComplexMatrix random_complex(Rng& rng, int n)
{
    ComplexMatrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = detail::complex_gaussian(rng);
    return a;
}

} // namespace

TEST(HaarUnitary, OneByOneHasUnitModulus)
{
    Rng rng(1);
    const ComplexMatrix u = haar_unitary(rng, 1);
    EXPECT_NEAR(std::abs(u(0, 0)), 1.0, 1e-15);
}

TEST(HaarUnitary, Orthonormal)
{
    Rng rng(2);
    for (int m = 1; m <= 12; ++m)
        for (int t = 0; t < 10; ++t) EXPECT_LT(unitarity_defect(haar_unitary(rng, m)), 1e-12);
    EXPECT_THROW(haar_unitary(rng, 0), validation_error);
}

TEST(HaarUnitary, DeterministicForSeed)
{
    Rng a = substream(99, 4), b = substream(99, 4);
    const ComplexMatrix ua = haar_unitary(a, 5), ub = haar_unitary(b, 5);
    EXPECT_EQ(std::memcmp(ua.data(), ub.data(), sizeof(complex) * 25), 0);
}

TEST(HaarUnitary, EntryMomentsMatchHaar)
{
    // E|U_ij|^2 = 1/m and E|U_ij|^4 = 2/(m(m+1)); also unchanged by a fixed left rotation.
    Rng rng(3);
    const int m = 4, draws = 20000;
    Rng rot_rng(77);
    const ComplexMatrix w = haar_unitary(rot_rng, m);
    double second = 0, fourth = 0, rotated = 0;
    for (int t = 0; t < draws; ++t) {
        const ComplexMatrix u = haar_unitary(rng, m);
        const double p = std::norm(u(1, 2));
        second += p;
        fourth += p * p;
        rotated += std::pow(std::norm((w * u)(0, 3)), 2);
    }
    second /= draws;
    fourth /= draws;
    rotated /= draws;
    const double exp4 = 2.0 / (m * (m + 1));
    EXPECT_NEAR(second, 1.0 / m, 0.01);
    EXPECT_NEAR(fourth, exp4, 0.01);
    EXPECT_NEAR(rotated, exp4, 0.01);
}

TEST(RandomPsd, HermitianAndPositive)
{
    Rng rng(4);
    for (int n = 1; n <= 6; ++n)
        for (int rank = 1; rank <= n; ++rank) {
            const ComplexMatrix a = random_psd(rng, n, rank);
            EXPECT_LT((a - a.adjoint()).cwiseAbs().maxCoeff(), 1e-14);
            Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(a);
            EXPECT_GE(eig.eigenvalues().minCoeff(), -1e-12);
        }
    const ComplexMatrix r1 = random_psd(rng, 2, 1);
    EXPECT_LT(std::abs(determinant(r1)), 1e-12);
    EXPECT_THROW(random_psd(rng, 2, 3), validation_error);
}

TEST(GramMatrix, Examples)
{
    Rng rng(5);
    const ComplexMatrix u = haar_unitary(rng, 5);
    const ComplexMatrix full = gram_matrix(u, {0, 3, 2}, ModeSubset::all(5));
    EXPECT_LT((full - ComplexMatrix::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-12);

    const ComplexMatrix id = ComplexMatrix::Identity(4, 4);
    EXPECT_LT((gram_matrix(id, {0, 1}, ModeSubset({0, 1, 3})) - ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT(gram_matrix(id, {0, 1}, ModeSubset({2, 3})).cwiseAbs().maxCoeff(), 1e-15);

    EXPECT_THROW(gram_matrix(u, {0, 0}, ModeSubset({1})), validation_error);
    EXPECT_THROW(gram_matrix(u, {0, 5}, ModeSubset({1})), validation_error);
    EXPECT_THROW(gram_matrix(u, {0, 1}, ModeSubset({5})), validation_error);
    EXPECT_THROW(ModeSubset({1, 1}), validation_error);
}

TEST(GramMatrix, EigenvaluesInUnitInterval)
{
    Rng rng(6);
    for (int t = 0; t < 100; ++t) {
        const int m = 2 + t % 5;
        const ComplexMatrix u = haar_unitary(rng, m);
        std::vector<int> subset;
        for (int s = 0; s < m; ++s)
            if (rng() % 2) subset.push_back(s);
        std::vector<int> sites;
        for (int s = 0; s < std::min(m, 3); ++s) sites.push_back(s);
        const ComplexMatrix g = gram_matrix(u, sites, ModeSubset(subset));
        EXPECT_LT((g - g.adjoint()).cwiseAbs().maxCoeff(), 1e-14);
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(g);
        EXPECT_GE(eig.eigenvalues().minCoeff(), -1e-10);
        EXPECT_LE(eig.eigenvalues().maxCoeff(), 1 + 1e-10);
    }
}

TEST(Permanent, Examples)
{
    for (int n = 0; n <= 6; ++n) EXPECT_NEAR(std::abs(permanent(ComplexMatrix::Identity(n, n)) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(permanent(ComplexMatrix::Ones(2, 2)).real(), 2.0, 1e-15);
    ComplexMatrix a(2, 2);
    a << 1.0, 0.5, 0.5, 1.0;
    EXPECT_NEAR(permanent(a).real(), 1.25, 1e-15);
    EXPECT_NEAR(permanent(ComplexMatrix::Ones(5, 5)).real(), 120.0, 1e-10);
    EXPECT_THROW(permanent(ComplexMatrix::Ones(2, 3)), validation_error);
    EXPECT_THROW(permanent(ComplexMatrix::Identity(21, 21)), validation_error);
}

TEST(Permanent, RyserMatchesNaive)
{
    Rng rng(7);
    for (int n = 1; n <= 6; ++n)
        for (int t = 0; t < 20; ++t) {
            const ComplexMatrix a = random_complex(rng, n);
            const complex r = permanent(a), s = permanent_naive(a);
            EXPECT_LT(std::abs(r - s), 1e-10 * std::max(1.0, std::abs(s)));
        }
}

TEST(NormalizedImmanant, Examples)
{
    for (int n = 1; n <= 5; ++n)
        for (const Partition& lambda : enumerate_partitions(n))
            EXPECT_LT(std::abs(normalized_immanant(lambda, ComplexMatrix::Identity(n, n)) - 1.0), 1e-15);
    ComplexMatrix a(2, 2);
    a << complex(1, 2), complex(3, -1), complex(0.5, 0.5), complex(-2, 1);
    EXPECT_LT(std::abs(normalized_immanant(Partition{1, 1}, a) - (a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0))), 1e-14);
    EXPECT_LT(std::abs(normalized_immanant(Partition{2, 1}, ComplexMatrix::Ones(3, 3))), 1e-15);
    EXPECT_THROW(normalized_immanant(Partition{2, 1}, ComplexMatrix::Ones(2, 2)), validation_error);
    EXPECT_THROW(normalized_immanant(Partition{10}, ComplexMatrix::Ones(10, 10)), validation_error);
}

TEST(NormalizedImmanant, MatchesPerPermutationDefinition)
{
    Rng rng(8);
    for (int n = 1; n <= 6; ++n) {
        const ComplexMatrix a = random_complex(rng, n);
        const auto all = normalized_immanants(a);
        for (const Partition& lambda : enumerate_partitions(n)) {
            const complex ref = immanant_reference(lambda, a);
            EXPECT_LT(std::abs(all.at(lambda) - ref), 1e-10 * std::max(1.0, std::abs(ref))) << lambda.str();
        }
        EXPECT_LT(std::abs(all.at(Partition::row(n)) - permanent(a)), 1e-10 * std::max(1.0, std::abs(permanent(a))));
        EXPECT_LT(std::abs(all.at(Partition::column(n)) - determinant(a)), 1e-10 * std::max(1.0, std::abs(determinant(a))));
    }
}

TEST(NormalizedImmanant, PsdNonnegativeAndDeterminantSmallest)
{
    Rng rng(9);
    for (int t = 0; t < 100; ++t) {
        const int n = 1 + t % 6;
        const int rank = 1 + static_cast<int>(rng() % static_cast<unsigned>(n));
        const ComplexMatrix a = random_psd(rng, n, rank);
        const auto all = normalized_immanants(a);
        const double det = all.at(Partition::column(n)).real();
        for (const auto& [lambda, v] : all) {
            EXPECT_LT(std::abs(v.imag()), 1e-10);
            EXPECT_GE(v.real(), -1e-10) << lambda.str();
            EXPECT_LE(det, v.real() + 1e-10) << lambda.str();
        }
    }
}
