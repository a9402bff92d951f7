#pragma once

// Brute-force reference: n bosons in m visible x L hidden modes, simulated
// as explicitly symmetrized vectors in the distinguishable tensor space.
// Nothing here uses immanants or Gram matrices, so it can check them.
//
// Single-particle basis index: site * L + label. Tensor factor 0 is the most
// significant digit of an n-particle index.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "genbunch/bunching.hpp"
#include "genbunch/errors.hpp"
#include "genbunch/linalg.hpp"
#include "genbunch/occupation.hpp"
#include "genbunch/parallel.hpp"
#include "genbunch/symgroup.hpp"

namespace genbunch {

inline constexpr std::int64_t default_dense_cap = 4096;
inline constexpr int max_oracle_n = 8;

/// h(rho) on the n-fold hidden label space, dimension L^n.
struct AuxState {
    int n = 0;
    int L = 1;
    ComplexMatrix h;
};

namespace detail {

inline std::int64_t checked_power(int base, int exp, std::int64_t cap, const std::string& what)
{
    std::int64_t out = 1;
    for (int i = 0; i < exp; ++i) {
        out *= base;
        require(out <= cap, what + ": dimension " + std::to_string(base) + "^" + std::to_string(exp) +
                                " exceeds the dense cap of " + std::to_string(cap));
    }
    return out;
}

inline std::vector<int> digits(std::int64_t index, int base, int count)
{
    std::vector<int> out(static_cast<std::size_t>(count));
    for (int x = count - 1; x >= 0; --x) {
        out[static_cast<std::size_t>(x)] = static_cast<int>(index % base);
        index /= base;
    }
    return out;
}

inline std::int64_t undigits(const std::vector<int>& d, int base)
{
    std::int64_t out = 0;
    for (int v : d) out = out * base + v;
    return out;
}

inline std::vector<std::vector<int>> all_permutations(int n)
{
    std::vector<std::vector<int>> out;
    std::vector<int> sigma(static_cast<std::size_t>(n));
    std::iota(sigma.begin(), sigma.end(), 0);
    do out.push_back(sigma);
    while (std::next_permutation(sigma.begin(), sigma.end()));
    return out;
}

// (sigma . j)_x = j_{sigma^{-1}(x)}: the entry in factor x moves to factor sigma(x).
inline std::vector<int> act(const std::vector<int>& sigma, const std::vector<int>& j)
{
    std::vector<int> out(j.size());
    for (std::size_t x = 0; x < j.size(); ++x) out[static_cast<std::size_t>(sigma[x])] = j[x];
    return out;
}

inline std::vector<int> inverse(const std::vector<int>& sigma)
{
    std::vector<int> inv(sigma.size());
    for (std::size_t x = 0; x < sigma.size(); ++x) inv[static_cast<std::size_t>(sigma[x])] = static_cast<int>(x);
    return inv;
}

// Tr(R(sigma) h) = sum_j <j| R(sigma) h |j> = sum_j h(sigma^{-1} . j, j).
inline complex trace_rh(const AuxState& aux, const std::vector<int>& sigma)
{
    const std::vector<int> inv = inverse(sigma);
    complex total = 0.0;
    const std::int64_t dim = aux.h.rows();
    for (std::int64_t j = 0; j < dim; ++j) {
        const std::int64_t row = undigits(act(inv, digits(j, aux.L, aux.n)), aux.L);
        total += aux.h(row, j);
    }
    return total;
}

// Theta_lambda = (dim lambda / n!) sum_sigma chi_lambda(sigma) R(sigma).
inline ComplexMatrix isotypic_projector(const Partition& lambda, int L)
{
    const int n = lambda.size();
    const std::int64_t dim = checked_power(L, n, default_dense_cap, "isotypic_projector");
    ComplexMatrix theta = ComplexMatrix::Zero(dim, dim);
    for (const auto& sigma : all_permutations(n)) {
        const double chi = static_cast<double>(character(lambda, cycle_type(sigma)));
        if (chi == 0.0) continue;
        for (std::int64_t j = 0; j < dim; ++j)
            theta(undigits(act(sigma, digits(j, L, n)), L), j) += chi;
    }
    return theta * (static_cast<double>(dim_standard(lambda)) / static_cast<double>(factorial(n)));
}

} // namespace detail

inline AuxState aux_state(const StateSpec& spec, std::int64_t cap = default_dense_cap)
{
    spec.validate();
    const int n = spec.n();
    const int L = spec.hidden_dim;
    detail::require(n <= max_oracle_n, "aux_state: n must be at most 8");
    const std::int64_t dim = detail::checked_power(L, n, cap, "aux_state");
    AuxState aux{n, L, ComplexMatrix::Zero(dim, dim)};

    std::visit(
        [&](const auto& k) {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, Indistinguishable>) {
                aux.h(0, 0) = 1.0;
            } else if constexpr (std::is_same_v<K, Uniform>) {
                for (std::int64_t j = 0; j < dim; ++j) {
                    double w = 1.0;
                    for (int label : detail::digits(j, L, n)) w *= k.alpha[static_cast<std::size_t>(label)];
                    aux.h(j, j) = w;
                }
            } else if constexpr (std::is_same_v<K, PartiallyLabelled>) {
                std::vector<int> pattern;
                for (int r = 0; r < k.mu.length(); ++r)
                    for (int c = 0; c < k.mu[r]; ++c) pattern.push_back(r);
                const double w = 1.0 / static_cast<double>(factorial(n));
                for (const auto& sigma : detail::all_permutations(n)) {
                    const std::int64_t j = detail::undigits(detail::act(sigma, pattern), L);
                    aux.h(j, j) += w;
                }
            } else if constexpr (std::is_same_v<K, PureIrrep>) {
                const ComplexMatrix theta = detail::isotypic_projector(k.lambda, L);
                aux.h = theta / theta.trace().real();
            } else {
                for (const auto& [lambda, p] : k.q.q) {
                    if (p <= 0.0) continue;
                    const ComplexMatrix theta = detail::isotypic_projector(lambda, L);
                    aux.h += p * theta / theta.trace().real();
                }
            }
        },
        spec.kind);

    const double herm = (aux.h - aux.h.adjoint()).cwiseAbs().maxCoeff();
    detail::ensure(herm <= 1e-12, "aux_state: not Hermitian");
    detail::ensure(std::abs(aux.h.trace() - complex(1.0)) <= 1e-10, "aux_state: trace differs from 1");
    return aux;
}

/// q_lambda = Tr(Theta_lambda h).
inline IrrepDistribution extract_q(const AuxState& aux)
{
    detail::require(aux.n >= 1 && aux.n <= max_oracle_n, "extract_q: n must lie in [1, 8]");
    const int n = aux.n;
    const auto perms = detail::all_permutations(n);
    PartitionMap<complex> class_trace;
    for (const auto& sigma : perms) class_trace[cycle_type(sigma)] += detail::trace_rh(aux, detail::inverse(sigma));

    IrrepDistribution out;
    out.n = n;
    for (const Partition& lambda : enumerate_partitions(n)) {
        complex acc = 0.0;
        for (const auto& [ct, tr] : class_trace) acc += static_cast<double>(character(lambda, ct)) * tr;
        const double q = (acc * (static_cast<double>(dim_standard(lambda)) / static_cast<double>(factorial(n)))).real();
        detail::ensure(q >= -1e-10, "extract_q: negative weight for " + lambda.str());
        if (lambda.length() <= aux.L) out.q[lambda] = q;
    }
    detail::ensure(std::abs(out.total() - 1.0) <= distribution_sum_tolerance, "extract_q: weights do not sum to 1");
    return out;
}

/// b = sum_sigma prod_x M_{i_x, i_{sigma^{-1}(x)}} Tr(R(sigma) h) with M = U^dagger Pi_S U.
inline double oracle_bunch_perm_sum(const ComplexMatrix& u, const ExperimentConfig& cfg,
                                    const std::vector<int>& sites, const AuxState& h)
{
    cfg.validate();
    detail::require(u.rows() == cfg.m && u.cols() == cfg.m, "unitary size differs from config m");
    detail::require(static_cast<int>(sites.size()) == h.n, "site count differs from the aux state");
    detail::require(h.n <= max_oracle_n, "oracle_bunch_perm_sum: n must be at most 8");
    check_sites(sites, cfg.m);

    ComplexMatrix proj = ComplexMatrix::Zero(cfg.m, cfg.m);
    for (int s : cfg.subset.indices()) proj(s, s) = 1.0;
    const ComplexMatrix mm = u.adjoint() * proj * u;

    complex total = 0.0;
    for (const auto& sigma : detail::all_permutations(h.n)) {
        const std::vector<int> inv = detail::inverse(sigma);
        complex prod = 1.0;
        for (int x = 0; x < h.n; ++x)
            prod *= mm(sites[static_cast<std::size_t>(x)], sites[static_cast<std::size_t>(inv[static_cast<std::size_t>(x)])]);
        total += prod * detail::trace_rh(h, sigma);
    }
    detail::ensure(std::abs(total.imag()) <= 1e-10, "oracle_bunch_perm_sum: imaginary residue too large");
    return detail::finish_probability(total, "oracle_bunch_perm_sum").value;
}

struct OccupationProbability {
    Occupation v;
    double p = 0.0;
};

/// Visible output distribution, one entry per occupation of the m visible
/// modes (reverse-lexicographic).
using VisibleDistribution = std::vector<OccupationProbability>;

namespace detail {

// (V tensor ... tensor V) psi with V acting on each of the n factors.
inline Eigen::VectorXcd apply_each_factor(const ComplexMatrix& v, Eigen::VectorXcd psi, int n)
{
    const std::int64_t d = v.rows();
    std::int64_t stride = 1;
    for (int x = n - 1; x >= 0; --x) {
        const std::int64_t block = stride * d;
        Eigen::VectorXcd next = Eigen::VectorXcd::Zero(psi.size());
        for (std::int64_t base = 0; base < psi.size(); base += block)
            for (std::int64_t low = 0; low < stride; ++low)
                for (std::int64_t a = 0; a < d; ++a) {
                    const complex in = psi(base + a * stride + low);
                    if (in == 0.0) continue;
                    for (std::int64_t b = 0; b < d; ++b) next(base + b * stride + low) += v(b, a) * in;
                }
        psi = std::move(next);
        stride = block;
    }
    return psi;
}

// Distinct orderings of a nondecreasing list.
inline std::vector<std::vector<int>> arrangements(std::vector<int> list)
{
    std::vector<std::vector<int>> out;
    std::sort(list.begin(), list.end());
    do out.push_back(list);
    while (std::next_permutation(list.begin(), list.end()));
    return out;
}

} // namespace detail

/// One member of a pure-state decomposition of the symmetrized input.
struct WeightedState {
    double weight = 0.0;
    Eigen::VectorXcd psi;  // dimension (m L)^n
};

/// The input state as an ensemble of explicitly symmetrized vectors on the
/// distinguishable space: each eigenvector psi of h(rho) becomes
/// (1/sqrt(n!)) sum_sigma P(sigma) (|i> tensor |psi>).
inline std::vector<WeightedState> dense_input_ensemble(const StateSpec& spec, int m, std::int64_t cap = default_dense_cap)
{
    spec.validate(m);
    const int n = spec.n();
    const int L = spec.hidden_dim;
    const int d = m * L;
    const std::int64_t dim = detail::checked_power(d, n, cap, "dense_input_ensemble");

    const AuxState aux = aux_state(spec, cap);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(aux.h);
    detail::ensure(eig.info() == Eigen::Success, "oracle: eigen-decomposition of the aux state failed");
    detail::ensure(eig.eigenvalues().minCoeff() >= -1e-10, "oracle: aux state is not PSD");

    const auto perms = detail::all_permutations(n);
    const double sym_norm = 1.0 / std::sqrt(static_cast<double>(factorial(n)));
    std::vector<WeightedState> out;
    for (Eigen::Index k = 0; k < eig.eigenvalues().size(); ++k) {
        const double w = eig.eigenvalues()(k);
        if (w <= 1e-14) continue;
        const Eigen::VectorXcd psi = eig.eigenvectors().col(k);
        Eigen::VectorXcd state = Eigen::VectorXcd::Zero(dim);
        for (std::int64_t j = 0; j < psi.size(); ++j) {
            if (psi(j) == 0.0) continue;
            const std::vector<int> labels = detail::digits(j, L, n);
            std::vector<int> particle(static_cast<std::size_t>(n));
            for (int x = 0; x < n; ++x)
                particle[static_cast<std::size_t>(x)] = spec.sites[static_cast<std::size_t>(x)] * L + labels[static_cast<std::size_t>(x)];
            for (const auto& sigma : perms) state(detail::undigits(detail::act(sigma, particle), d)) += sym_norm * psi(j);
        }
        out.push_back({w, std::move(state)});
    }
    return out;
}

inline VisibleDistribution oracle_visible_distribution(const ComplexMatrix& u, const ExperimentConfig& cfg,
                                                       const StateSpec& spec, std::int64_t cap = default_dense_cap)
{
    cfg.validate();
    cfg.check_matches(spec);
    spec.validate(cfg.m);
    detail::require(u.rows() == cfg.m && u.cols() == cfg.m, "unitary size differs from config m");
    check_unitary(u);
    const int n = cfg.n;
    const int L = cfg.L;
    const int d = cfg.m * L;

    ComplexMatrix v = ComplexMatrix::Zero(d, d);
    for (int a = 0; a < cfg.m; ++a)
        for (int b = 0; b < cfg.m; ++b)
            for (int l = 0; l < L; ++l) v(a * L + l, b * L + l) = u(a, b);

    const std::vector<Occupation> fock = enumerate_occupations(n, d);
    std::vector<double> p_fock(fock.size(), 0.0);
    for (const WeightedState& in : dense_input_ensemble(spec, cfg.m, cap)) {
        const Eigen::VectorXcd out = detail::apply_each_factor(v, in.psi, n);
        for (std::size_t gi = 0; gi < fock.size(); ++gi) {
            const Occupation& g = fock[gi];
            const double norm = std::sqrt(static_cast<double>(g.factorial_product()) / static_cast<double>(factorial(n)));
            complex amp = 0.0;
            for (const auto& arr : detail::arrangements(g.mode_list())) amp += out(detail::undigits(arr, d));
            p_fock[gi] += in.weight * std::norm(norm * amp);
        }
    }

    // marginalize hidden labels
    VisibleDistribution dist;
    for (const Occupation& vis : enumerate_occupations(n, cfg.m)) dist.push_back({vis, 0.0});
    std::map<Occupation, std::size_t> slot;
    for (std::size_t i = 0; i < dist.size(); ++i) slot[dist[i].v] = i;
    double total = 0.0;
    for (std::size_t gi = 0; gi < fock.size(); ++gi) {
        Occupation vis{std::vector<int>(static_cast<std::size_t>(cfg.m), 0)};
        for (int mode = 0; mode < d; ++mode) vis.counts[static_cast<std::size_t>(mode / L)] += fock[gi].counts[static_cast<std::size_t>(mode)];
        dist[slot.at(vis)].p += p_fock[gi];
        total += p_fock[gi];
    }
    detail::ensure(std::abs(total - 1.0) <= 1e-10, "oracle: visible distribution does not sum to 1");
    for (const auto& e : dist) detail::ensure(e.p >= -1e-12, "oracle: negative probability");
    return dist;
}

/// Probability mass of the visible occupations supported in cfg.subset.
inline double bunch_from_distribution(const VisibleDistribution& dist, const ModeSubset& subset)
{
    double b = 0.0;
    for (const auto& e : dist)
        if (e.v.supported_in(subset.indices())) b += e.p;
    return detail::finish_probability(b, "oracle_bunch").value;
}

inline double oracle_bunch(const ComplexMatrix& u, const ExperimentConfig& cfg, const StateSpec& spec,
                           std::int64_t cap = default_dense_cap)
{
    return bunch_from_distribution(oracle_visible_distribution(u, cfg, spec, cap), cfg.subset);
}

template <class R>
std::vector<Occupation> sample_outcomes(R& rng, const VisibleDistribution& dist, int count)
{
    detail::require(count >= 0, "sample_outcomes: count must be nonnegative");
    detail::require(!dist.empty(), "sample_outcomes: empty distribution");
    std::vector<double> cdf;
    double acc = 0.0;
    for (const auto& e : dist) {
        acc += std::max(e.p, 0.0);
        cdf.push_back(acc);
    }
    std::vector<Occupation> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double x = detail::uniform01(rng) * acc;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), x);
        if (it == cdf.end()) --it;
        out.push_back(dist[static_cast<std::size_t>(it - cdf.begin())].v);
    }
    return out;
}

template <class R>
std::vector<Occupation> sample_outcomes(R& rng, const ComplexMatrix& u, const ExperimentConfig& cfg,
                                        const StateSpec& spec, int count)
{
    return sample_outcomes(rng, oracle_visible_distribution(u, cfg, spec), count);
}

} // namespace genbunch
