#pragma once

// Power sums, Schur polynomials and the Schur-Weyl distribution.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "genbunch/errors.hpp"
#include "genbunch/partitions.hpp"
#include "genbunch/symgroup.hpp"

namespace genbunch {

inline constexpr double prob_sum_tolerance = 1e-12;
inline constexpr double distribution_sum_tolerance = 1e-10;
inline constexpr double zero_weight_cutoff = 1e-15;

using ProbVector = std::vector<double>;

inline void validate_prob_vector(std::span<const double> alpha, const std::string& what = "alpha")
{
    detail::require(!alpha.empty(), what + " must be nonempty");
    double total = 0.0;
    for (double a : alpha) {
        detail::require(std::isfinite(a) && a >= 0.0, what + " entries must be finite and nonnegative");
        total += a;
    }
    detail::require(std::abs(total - 1.0) <= prob_sum_tolerance,
                    what + " must sum to 1 (got " + std::to_string(total) + ")");
}

/// Probability weights over partitions of n. Used both for auxiliary irrep
/// distributions and for Schur-Weyl distributions.
struct IrrepDistribution {
    int n = 0;
    PartitionMap<double> q;

    double operator[](const Partition& lambda) const
    {
        auto it = q.find(lambda);
        return it == q.end() ? 0.0 : it->second;
    }

    double total() const
    {
        double t = 0.0;
        for (const auto& [lambda, p] : q) t += p;
        return t;
    }

    /// Checks q >= -1e-12 and sum within 1e-10 of 1.
    void validate() const
    {
        for (const auto& [lambda, p] : q) {
            detail::require(lambda.size() == n, "irrep distribution has a partition of the wrong size");
            detail::require(std::isfinite(p) && p >= -1e-12,
                            "irrep distribution entry for " + lambda.str() + " is negative");
        }
        detail::require(std::abs(total() - 1.0) <= distribution_sum_tolerance,
                        "irrep distribution must sum to 1");
    }
};

using SchurWeylDistribution = IrrepDistribution;

inline double power_sum(const Partition& lambda, std::span<const double> alpha)
{
    double out = 1.0;
    for (int part : lambda) {
        double s = 0.0;
        for (double a : alpha) s += std::pow(a, part);
        out *= s;
    }
    return out;
}

namespace detail {

inline std::vector<double> schur_support(std::span<const double> alpha)
{
    std::vector<double> kept;
    for (double a : alpha)
        if (std::abs(a) >= zero_weight_cutoff) kept.push_back(a);
    return kept;
}

inline double schur_by_tableaux(const Partition& lambda, const std::vector<double>& alpha)
{
    if (lambda.size() == 0) return 1.0;
    if (lambda.length() > static_cast<int>(alpha.size())) return 0.0;
    struct Accumulate {
        const std::vector<double>& alpha;
        std::vector<double> weight{1.0};
        double total = 0.0;
        void push(int t, int size) { weight.push_back(weight.back() * std::pow(alpha[static_cast<std::size_t>(t)], size)); }
        void pop(int, int) { weight.pop_back(); }
        void complete() { total += weight.back(); }
    } acc{alpha};
    StripChainEnumerator(lambda, static_cast<int>(alpha.size()), nullptr).run(acc);
    return acc.total;
}

inline double schur_by_characters(const Partition& lambda, std::span<const double> alpha)
{
    const int n = lambda.size();
    double total = 0.0;
    for (const Partition& ct : enumerate_partitions(n))
        total += static_cast<double>(class_size(ct)) * static_cast<double>(character(lambda, ct)) *
                 power_sum(ct, alpha);
    return total / static_cast<double>(factorial(n));
}

} // namespace detail

/// s_lambda(alpha). The tableau sum is returned; the character expansion is
/// evaluated alongside (n <= character table cap) and any disagreement beyond
/// 1e-10 (scaled by the magnitude of alpha) throws internal_error.
inline double schur_poly(const Partition& lambda, std::span<const double> alpha)
{
    const std::vector<double> support = detail::schur_support(alpha);
    const double value = detail::schur_by_tableaux(lambda, support);
    if (lambda.size() >= 1 && lambda.size() <= default_character_table_cap) {
        const double check = detail::schur_by_characters(lambda, support);
        double scale = 0.0;
        for (double a : support) scale += std::abs(a);
        const double tol = 1e-10 * std::max(1.0, std::pow(scale, lambda.size()));
        detail::ensure(std::abs(value - check) <= tol,
                       "schur_poly: tableau and character routes disagree for " + lambda.str());
    }
    return value;
}

/// SW^n(alpha): lambda -> dim(lambda) s_lambda(alpha), over len(lambda) <= support of alpha.
inline SchurWeylDistribution sw_distribution(int n, std::span<const double> alpha)
{
    detail::require(n >= 1, "sw_distribution: n must be at least 1");
    validate_prob_vector(alpha);
    const int support = static_cast<int>(detail::schur_support(alpha).size());
    SchurWeylDistribution dist;
    dist.n = n;
    for (const Partition& lambda : enumerate_partitions(n, support))
        dist.q[lambda] = static_cast<double>(dim_standard(lambda)) * schur_poly(lambda, alpha);
    detail::ensure(std::abs(dist.total() - 1.0) <= distribution_sum_tolerance,
                   "sw_distribution: probabilities do not sum to 1");
    return dist;
}

namespace detail {

// 53-bit uniform double in [0, 1) straight from the engine, so draws do not
// depend on the standard library's distribution implementation.
template <class Rng>
double uniform01(Rng& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace detail

template <class Rng>
std::vector<Partition> sw_sample(Rng& rng, const SchurWeylDistribution& dist, int count)
{
    detail::require(count >= 0, "sw_sample: count must be nonnegative");
    detail::require(!dist.q.empty(), "sw_sample: empty distribution");
    std::vector<Partition> keys;
    std::vector<double> cdf;
    double acc = 0.0;
    for (const auto& [lambda, p] : dist.q) {
        acc += std::max(p, 0.0);
        keys.push_back(lambda);
        cdf.push_back(acc);
    }
    std::vector<Partition> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double u = detail::uniform01(rng) * acc;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        if (it == cdf.end()) --it;
        out.push_back(keys[static_cast<std::size_t>(it - cdf.begin())]);
    }
    return out;
}

/// Uniformly random point of the probability simplex with `dim` entries.
template <class Rng>
ProbVector random_prob_vector(Rng& rng, int dim)
{
    detail::require(dim >= 1, "random_prob_vector: dim must be at least 1");
    ProbVector alpha(static_cast<std::size_t>(dim));
    double total = 0.0;
    for (double& a : alpha) {
        a = -std::log(1.0 - detail::uniform01(rng));
        total += a;
    }
    for (double& a : alpha) a /= total;
    return alpha;
}

/// Pairs (alpha, alpha') of probability vectors with alpha majorizing alpha',
/// produced by one to three continuous robin-hood transfers: a random share
/// of the gap between a richer and a poorer entry moves to the poorer one,
/// never more than half the gap.
template <class Rng>
std::vector<std::pair<ProbVector, ProbVector>> robin_hood_prob_pairs(Rng& rng, int dim, int count)
{
    detail::require(dim >= 2, "robin_hood_prob_pairs: need at least two entries");
    std::vector<std::pair<ProbVector, ProbVector>> out;
    for (int k = 0; k < count; ++k) {
        ProbVector alpha = random_prob_vector(rng, dim);
        ProbVector spread = alpha;
        const int steps = 1 + static_cast<int>(rng() % 3);
        for (int s = 0; s < steps; ++s) {
            const auto i = static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(dim));
            auto j = static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(dim - 1));
            if (j >= i) ++j;
            std::size_t rich = spread[i] >= spread[j] ? i : j;
            std::size_t poor = rich == i ? j : i;
            const double t = 0.5 * detail::uniform01(rng) * (spread[rich] - spread[poor]);
            spread[rich] -= t;
            spread[poor] += t;
        }
        out.emplace_back(std::move(alpha), std::move(spread));
    }
    return out;
}

} // namespace genbunch
