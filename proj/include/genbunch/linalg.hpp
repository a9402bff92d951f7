#pragma once

// Dense complex matrices: Haar unitaries, random PSD matrices, Gram matrices,
// permanents and normalized immanants.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "genbunch/errors.hpp"
#include "genbunch/partitions.hpp"
#include "genbunch/symgroup.hpp"

namespace genbunch {

using complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr int default_permanent_cap = 20;
inline constexpr int default_immanant_cap = 9;

/// A sorted set of distinct 0-based mode indices.
class ModeSubset {
public:
    ModeSubset() = default;

    explicit ModeSubset(std::vector<int> indices) : indices_(std::move(indices))
    {
        std::sort(indices_.begin(), indices_.end());
        detail::require(std::adjacent_find(indices_.begin(), indices_.end()) == indices_.end(),
                        "mode subset has repeated indices");
        detail::require(indices_.empty() || indices_.front() >= 0, "mode indices must be nonnegative");
    }

    static ModeSubset all(int m)
    {
        std::vector<int> idx(static_cast<std::size_t>(m));
        std::iota(idx.begin(), idx.end(), 0);
        return ModeSubset(std::move(idx));
    }

    const std::vector<int>& indices() const noexcept { return indices_; }
    int size() const noexcept { return static_cast<int>(indices_.size()); }
    bool empty() const noexcept { return indices_.empty(); }
    bool contains(int mode) const { return std::binary_search(indices_.begin(), indices_.end(), mode); }

    void check_range(int m) const
    {
        detail::require(indices_.empty() || indices_.back() < m,
                        "mode subset index " + std::to_string(indices_.empty() ? 0 : indices_.back() + 1) +
                            " is outside [1, " + std::to_string(m) + "]");
    }

    friend bool operator==(const ModeSubset&, const ModeSubset&) = default;

private:
    std::vector<int> indices_;
};

namespace detail {

template <class Rng>
complex complex_gaussian(Rng& rng)
{
    std::normal_distribution<double> normal(0.0, 1.0);
    const double re = normal(rng);
    const double im = normal(rng);
    return complex(re, im) / std::sqrt(2.0);
}

inline bool all_finite(const ComplexMatrix& a)
{
    for (Eigen::Index i = 0; i < a.size(); ++i)
        if (!std::isfinite(a.data()[i].real()) || !std::isfinite(a.data()[i].imag())) return false;
    return true;
}

} // namespace detail

/// Haar-distributed m x m unitary: QR of a complex Ginibre matrix with the
/// phases of R's diagonal moved into Q.
template <class Rng>
ComplexMatrix haar_unitary(Rng& rng, int m)
{
    detail::require(m >= 1, "haar_unitary: m must be at least 1");
    ComplexMatrix z(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) z(i, j) = detail::complex_gaussian(rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < m; ++j) {
        const complex d = r(j, j);
        const double mag = std::abs(d);
        if (mag > 0.0) q.col(j) *= d / mag;
    }
    return q;
}

/// A = B B^dagger with B an n x rank complex Gaussian matrix scaled by
/// 1/sqrt(rank), so the diagonal of A has unit mean.
template <class Rng>
ComplexMatrix random_psd(Rng& rng, int n, int rank)
{
    detail::require(n >= 1 && rank >= 1 && rank <= n, "random_psd: need 1 <= rank <= n");
    ComplexMatrix b(n, rank);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < rank; ++j) b(i, j) = detail::complex_gaussian(rng);
    b /= std::sqrt(static_cast<double>(rank));
    ComplexMatrix a = b * b.adjoint();
    return (a + a.adjoint()) * 0.5;
}

inline double unitarity_defect(const ComplexMatrix& u)
{
    const ComplexMatrix d = u.adjoint() * u - ComplexMatrix::Identity(u.cols(), u.cols());
    return d.cwiseAbs().maxCoeff();
}

inline void check_unitary(const ComplexMatrix& u, double tol = 1e-10)
{
    detail::require(u.rows() == u.cols() && u.rows() >= 1, "unitary must be square and nonempty");
    detail::require(detail::all_finite(u), "unitary has non-finite entries");
    detail::require(unitarity_defect(u) <= tol, "matrix is not unitary within tolerance");
}

inline void check_sites(const std::vector<int>& sites, int m)
{
    std::vector<int> sorted = sites;
    std::sort(sorted.begin(), sorted.end());
    detail::require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(), "sites must be distinct");
    for (int s : sites)
        detail::require(s >= 0 && s < m, "site " + std::to_string(s + 1) + " is outside [1, " + std::to_string(m) + "]");
}

/// G_xy = sum_{s in S} conj(U_{s, i_x}) U_{s, i_y}.
inline ComplexMatrix gram_matrix(const ComplexMatrix& u, const std::vector<int>& sites, const ModeSubset& subset)
{
    detail::require(u.rows() == u.cols(), "gram_matrix: U must be square");
    const int m = static_cast<int>(u.rows());
    check_sites(sites, m);
    subset.check_range(m);
    const int n = static_cast<int>(sites.size());
    ComplexMatrix g = ComplexMatrix::Zero(n, n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            complex acc = 0.0;
            for (int s : subset.indices()) acc += std::conj(u(s, sites[static_cast<std::size_t>(x)])) * u(s, sites[static_cast<std::size_t>(y)]);
            g(x, y) = acc;
        }
    return g;
}

/// Ryser's formula with Gray-code updates of the row sums.
inline complex permanent(const ComplexMatrix& a, int cap = default_permanent_cap)
{
    detail::require(a.rows() == a.cols(), "permanent: matrix must be square");
    const int n = static_cast<int>(a.rows());
    detail::require(n <= cap, "permanent: n = " + std::to_string(n) + " exceeds the cap of " + std::to_string(cap));
    if (n == 0) return 1.0;

    std::vector<complex> row_sums(static_cast<std::size_t>(n), 0.0);
    complex total = 0.0;
    std::uint64_t gray = 0;
    const std::uint64_t subsets = std::uint64_t{1} << n;
    for (std::uint64_t k = 1; k < subsets; ++k) {
        const int j = __builtin_ctzll(k);
        const std::uint64_t bit = std::uint64_t{1} << j;
        gray ^= bit;
        const double dir = (gray & bit) ? 1.0 : -1.0;
        complex prod = 1.0;
        for (int i = 0; i < n; ++i) {
            row_sums[static_cast<std::size_t>(i)] += dir * a(i, j);
            prod *= row_sums[static_cast<std::size_t>(i)];
        }
        const int size = __builtin_popcountll(gray);
        total += ((n - size) % 2 == 0) ? prod : -prod;
    }
    return total;
}

/// Direct n!-term definition, for cross-checking small cases.
inline complex permanent_naive(const ComplexMatrix& a)
{
    detail::require(a.rows() == a.cols(), "permanent_naive: matrix must be square");
    const int n = static_cast<int>(a.rows());
    std::vector<int> sigma(static_cast<std::size_t>(n));
    std::iota(sigma.begin(), sigma.end(), 0);
    complex total = 0.0;
    do {
        complex prod = 1.0;
        for (int x = 0; x < n; ++x) prod *= a(x, sigma[static_cast<std::size_t>(x)]);
        total += prod;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return total;
}

inline complex determinant(const ComplexMatrix& a)
{
    detail::require(a.rows() == a.cols(), "determinant: matrix must be square");
    if (a.rows() == 0) return 1.0;
    return a.determinant();
}

/// Sum of prod_x A_{x, sigma(x)} over the permutations of each cycle type.
/// Every permutation is visited; the products are only grouped afterwards.
inline PartitionMap<complex> immanant_class_sums(const ComplexMatrix& a, int cap = default_immanant_cap)
{
    detail::require(a.rows() == a.cols(), "immanant: matrix must be square");
    const int n = static_cast<int>(a.rows());
    detail::require(n >= 1, "immanant: matrix must be nonempty");
    detail::require(n <= cap, "immanant: n = " + std::to_string(n) + " exceeds the cap of " + std::to_string(cap));

    // key cycle types by their multiplicity vector packed in base n+1
    auto pack = [n](const Partition& ct) {
        std::uint64_t key = 0;
        for (int part : ct) {
            std::uint64_t w = 1;
            for (int l = 1; l < part; ++l) w *= static_cast<std::uint64_t>(n + 1);
            key += w;
        }
        return key;
    };
    std::vector<Partition> classes = enumerate_partitions(n);
    std::unordered_map<std::uint64_t, std::size_t> slot;
    for (std::size_t c = 0; c < classes.size(); ++c) slot[pack(classes[c])] = c;
    std::vector<std::uint64_t> len_weight(static_cast<std::size_t>(n + 1), 1);
    for (int l = 2; l <= n; ++l) len_weight[static_cast<std::size_t>(l)] = len_weight[static_cast<std::size_t>(l - 1)] * static_cast<std::uint64_t>(n + 1);

    std::vector<complex> sums(classes.size(), 0.0);
    std::vector<int> sigma(static_cast<std::size_t>(n));
    std::iota(sigma.begin(), sigma.end(), 0);
    std::vector<char> seen(static_cast<std::size_t>(n));
    do {
        complex prod = 1.0;
        for (int x = 0; x < n; ++x) prod *= a(x, sigma[static_cast<std::size_t>(x)]);
        std::fill(seen.begin(), seen.end(), 0);
        std::uint64_t key = 0;
        for (int s = 0; s < n; ++s) {
            if (seen[static_cast<std::size_t>(s)]) continue;
            int len = 0;
            for (int x = s; !seen[static_cast<std::size_t>(x)]; x = sigma[static_cast<std::size_t>(x)]) {
                seen[static_cast<std::size_t>(x)] = 1;
                ++len;
            }
            key += len_weight[static_cast<std::size_t>(len)];
        }
        sums[slot.at(key)] += prod;
    } while (std::next_permutation(sigma.begin(), sigma.end()));

    PartitionMap<complex> out;
    for (std::size_t c = 0; c < classes.size(); ++c) out[classes[c]] = sums[c];
    return out;
}

/// Imm_lambda(A) / chi_lambda(e) for every lambda of n, from one pass over S_n.
inline PartitionMap<complex> normalized_immanants(const ComplexMatrix& a, int cap = default_immanant_cap)
{
    const PartitionMap<complex> sums = immanant_class_sums(a, cap);
    const int n = static_cast<int>(a.rows());
    const Partition identity_type = Partition::column(n);
    PartitionMap<complex> out;
    for (const Partition& lambda : enumerate_partitions(n)) {
        complex acc = 0.0;
        for (const auto& [ct, s] : sums) acc += static_cast<double>(character(lambda, ct)) * s;
        out[lambda] = acc / static_cast<double>(character(lambda, identity_type));
    }
    return out;
}

inline complex normalized_immanant(const Partition& lambda, const ComplexMatrix& a, int cap = default_immanant_cap)
{
    detail::require(a.rows() == a.cols(), "normalized_immanant: matrix must be square");
    detail::require(lambda.size() == a.rows(), "normalized_immanant: |lambda| must equal the matrix size");
    return normalized_immanants(a, cap).at(lambda);
}

} // namespace genbunch
