#pragma once

// Generalized bunching probabilities: the probability that all n particles
// leave through a chosen subset S of visible modes.
//
// Every state kind reduces to an auxiliary irrep distribution q over
// partitions of n, and b = sum_lambda q_lambda * Imm_lambda(G) with G the
// Gram matrix of the input columns of U restricted to S.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "genbunch/errors.hpp"
#include "genbunch/linalg.hpp"
#include "genbunch/occupation.hpp"
#include "genbunch/parallel.hpp"
#include "genbunch/partitions.hpp"
#include "genbunch/symfunc.hpp"
#include "genbunch/symgroup.hpp"

namespace genbunch {

inline constexpr double probability_tolerance = 1e-10;

struct Indistinguishable {};
struct PureIrrep { Partition lambda; };
struct PartiallyLabelled { Partition mu; };
struct Uniform { ProbVector alpha; };
struct ExplicitQ { IrrepDistribution q; };

using StateKind = std::variant<Indistinguishable, PureIrrep, PartiallyLabelled, Uniform, ExplicitQ>;

/// A permutation-invariant input state singly occupying `sites` (0-based),
/// with hidden dimension L.
struct StateSpec {
    StateKind kind;
    std::vector<int> sites;
    int hidden_dim = 1;

    int n() const { return static_cast<int>(sites.size()); }

    std::string kind_name() const
    {
        static const char* names[] = {"indistinguishable", "pure_irrep", "partially_labelled", "uniform", "explicit_q"};
        return names[kind.index()];
    }

    /// Checks the per-kind constraints. m > 0 also checks sites against [m].
    void validate(int m = 0) const
    {
        const int n_ = n();
        detail::require(n_ >= 1, "state must have at least one particle");
        detail::require(hidden_dim >= 1, "hidden dimension must be at least 1");
        if (m > 0) check_sites(sites, m);
        else check_sites(sites, *std::max_element(sites.begin(), sites.end()) + 1);
        std::visit(
            [&](const auto& k) {
                using K = std::decay_t<decltype(k)>;
                if constexpr (std::is_same_v<K, PureIrrep>) {
                    detail::require(k.lambda.size() == n_, "pure_irrep: |lambda| must equal the number of sites");
                    detail::require(hidden_dim >= n_, "pure_irrep: requires L >= n");
                } else if constexpr (std::is_same_v<K, PartiallyLabelled>) {
                    detail::require(k.mu.size() == n_, "partially_labelled: |mu| must equal the number of sites");
                    detail::require(k.mu.length() <= hidden_dim, "partially_labelled: requires len(mu) <= L");
                } else if constexpr (std::is_same_v<K, Uniform>) {
                    detail::require(static_cast<int>(k.alpha.size()) == hidden_dim, "uniform: len(alpha) must equal L");
                    validate_prob_vector(k.alpha);
                } else if constexpr (std::is_same_v<K, ExplicitQ>) {
                    detail::require(k.q.n == n_, "explicit_q: distribution is over partitions of the wrong n");
                    k.q.validate();
                    for (const auto& [lambda, p] : k.q.q)
                        detail::require(p <= 1e-12 || lambda.length() <= hidden_dim,
                                        "explicit_q: weight on " + lambda.str() + " needs L >= " +
                                            std::to_string(lambda.length()));
                }
            },
            kind);
    }

    static StateSpec indistinguishable(std::vector<int> sites, int L = 1) { return {Indistinguishable{}, std::move(sites), L}; }
    static StateSpec pure_irrep(Partition lambda, std::vector<int> sites, int L) { return {PureIrrep{std::move(lambda)}, std::move(sites), L}; }
    static StateSpec partially_labelled(Partition mu, std::vector<int> sites, int L) { return {PartiallyLabelled{std::move(mu)}, std::move(sites), L}; }
    static StateSpec uniform(ProbVector alpha, std::vector<int> sites)
    {
        const int L = static_cast<int>(alpha.size());
        return {Uniform{std::move(alpha)}, std::move(sites), L};
    }
    static StateSpec explicit_q(IrrepDistribution q, std::vector<int> sites, int L) { return {ExplicitQ{std::move(q)}, std::move(sites), L}; }
};

struct ExperimentConfig {
    int m = 0;
    int n = 0;
    int L = 1;
    ModeSubset subset;
    std::uint64_t seed = 0;

    void validate() const
    {
        detail::require(m >= 1, "config: m must be at least 1");
        detail::require(n >= 1, "config: n must be at least 1");
        detail::require(n <= m, "config: requires n <= m");
        detail::require(L >= 1, "config: L must be at least 1");
        subset.check_range(m);
    }

    void check_matches(const StateSpec& spec) const
    {
        detail::require(spec.n() == n, "state has " + std::to_string(spec.n()) + " sites but config n = " + std::to_string(n));
        detail::require(spec.hidden_dim == L, "state hidden dimension differs from config L");
    }
};

/// q_lambda for the state, over every lambda of n with len(lambda) <= L.
inline IrrepDistribution aux_irrep_distribution(const StateSpec& spec)
{
    spec.validate();
    const int n = spec.n();
    IrrepDistribution out;
    out.n = n;
    for (const Partition& lambda : enumerate_partitions(n, spec.hidden_dim)) out.q[lambda] = 0.0;

    std::visit(
        [&](const auto& k) {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, Indistinguishable>) {
                out.q[Partition::row(n)] = 1.0;
            } else if constexpr (std::is_same_v<K, PureIrrep>) {
                out.q[k.lambda] = 1.0;
            } else if constexpr (std::is_same_v<K, PartiallyLabelled>) {
                // dim(lambda) K_{lambda,mu} mu!/n!; the dim factor makes the weights sum to 1
                const double scale = static_cast<double>(k.mu.factorial_product()) / static_cast<double>(factorial(n));
                for (auto& [lambda, p] : out.q)
                    p = static_cast<double>(dim_standard(lambda)) * static_cast<double>(kostka(lambda, k.mu)) * scale;
            } else if constexpr (std::is_same_v<K, Uniform>) {
                for (const auto& [lambda, p] : sw_distribution(n, k.alpha).q) out.q[lambda] = p;
            } else {
                for (const auto& [lambda, p] : k.q.q) out.q[lambda] = p;
            }
        },
        spec.kind);
    detail::ensure(std::abs(out.total() - 1.0) <= distribution_sum_tolerance,
                   "aux_irrep_distribution: weights do not sum to 1");
    return out;
}

struct BunchResult {
    double value = 0.0;   // clamped to [0, 1]
    double raw = 0.0;     // before clamping
    double imag_residue = 0.0;
};

namespace detail {

inline BunchResult finish_probability(complex raw, const std::string& what)
{
    ensure(std::isfinite(raw.real()) && raw.real() >= -probability_tolerance && raw.real() <= 1.0 + probability_tolerance,
           what + ": probability " + std::to_string(raw.real()) + " lies outside [0, 1]");
    return {std::clamp(raw.real(), 0.0, 1.0), raw.real(), raw.imag()};
}

// sum_lambda q_lambda Imm_lambda(G); the permanent alone when q = delta_(n).
inline complex bunch_from_gram(const ComplexMatrix& g, const IrrepDistribution& q)
{
    const int n = static_cast<int>(g.rows());
    const Partition top = Partition::row(n);
    bool only_top = true;
    for (const auto& [lambda, p] : q.q)
        if (lambda != top && p != 0.0) only_top = false;
    if (only_top) return q[top] * permanent(g);

    const PartitionMap<complex> imm = normalized_immanants(g);
    complex b = 0.0;
    for (const auto& [lambda, p] : q.q)
        if (p != 0.0) b += p * imm.at(lambda);
    return b;
}

} // namespace detail

inline BunchResult bunch_probability_detailed(const ComplexMatrix& u, const ExperimentConfig& cfg, const StateSpec& spec)
{
    cfg.validate();
    detail::require(u.rows() == cfg.m && u.cols() == cfg.m, "unitary size differs from config m");
    check_unitary(u);
    cfg.check_matches(spec);
    spec.validate(cfg.m);
    const IrrepDistribution q = aux_irrep_distribution(spec);
    const ComplexMatrix g = gram_matrix(u, spec.sites, cfg.subset);
    return detail::finish_probability(detail::bunch_from_gram(g, q), "bunch_probability");
}

inline double bunch_probability(const ComplexMatrix& u, const ExperimentConfig& cfg, const StateSpec& spec)
{
    return bunch_probability_detailed(u, cfg, spec).value;
}

/// Partially labelled bunching as a sum over ordered set partitions R of the
/// sites: (mu!/n!) sum_R prod_r perm(G restricted to r). No characters involved.
inline double bunch_partially_labelled_direct(const ComplexMatrix& u, const ExperimentConfig& cfg,
                                              const std::vector<int>& sites, const Partition& mu)
{
    cfg.validate();
    detail::require(u.rows() == cfg.m && u.cols() == cfg.m, "unitary size differs from config m");
    check_unitary(u);
    detail::require(static_cast<int>(sites.size()) == cfg.n, "site count differs from config n");
    detail::require(mu.size() == cfg.n, "|mu| must equal n");
    detail::require(mu.length() <= cfg.L, "partially labelled state requires len(mu) <= L");
    const ComplexMatrix g = gram_matrix(u, sites, cfg.subset);

    std::vector<int> positions(static_cast<std::size_t>(cfg.n));
    std::iota(positions.begin(), positions.end(), 0);
    complex total = 0.0;
    for (const OrderedSetPartition& r : ordered_set_partitions(positions, mu)) {
        complex prod = 1.0;
        for (const std::vector<int>& block : r) {
            ComplexMatrix sub(static_cast<Eigen::Index>(block.size()), static_cast<Eigen::Index>(block.size()));
            for (std::size_t a = 0; a < block.size(); ++a)
                for (std::size_t b = 0; b < block.size(); ++b) sub(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = g(block[a], block[b]);
            prod *= permanent(sub);
        }
        total += prod;
    }
    total *= static_cast<double>(mu.factorial_product()) / static_cast<double>(factorial(cfg.n));
    return detail::finish_probability(total, "bunch_partially_labelled_direct").value;
}

struct RefinementReport {
    Partition lambda;
    Partition mu;
    double b_lambda = 0.0;
    double b_mu = 0.0;
    double gap = 0.0;  // b_lambda - b_mu
    bool violation = false;
};

inline constexpr double refinement_violation_threshold = 1e-9;

/// Compares the partially labelled states with patterns lambda and mu, where
/// mu refines lambda. A gap below -1e-9 is flagged.
inline RefinementReport refinement_monotonicity_check(const ComplexMatrix& u, const ExperimentConfig& cfg,
                                                      const std::vector<int>& sites, const Partition& lambda,
                                                      const Partition& mu)
{
    detail::require(lambda.size() == mu.size(), "refinement check: |lambda| != |mu|");
    detail::require(refines(lambda, mu), "refinement check: " + mu.str() + " does not refine " + lambda.str());
    RefinementReport rep{lambda, mu};
    rep.b_lambda = bunch_probability(u, cfg, StateSpec::partially_labelled(lambda, sites, cfg.L));
    rep.b_mu = bunch_probability(u, cfg, StateSpec::partially_labelled(mu, sites, cfg.L));
    rep.gap = rep.b_lambda - rep.b_mu;
    rep.violation = rep.gap < -refinement_violation_threshold;
    return rep;
}

/// Haar average for an arbitrary irrep distribution: sum_lambda q_lambda k^{up lambda}/m^{up lambda}.
inline double mean_bunch_closed(const IrrepDistribution& q, int m, int k)
{
    detail::require(m >= 1, "mean_bunch_closed: m must be at least 1");
    detail::require(q.n <= m, "mean_bunch_closed: requires n <= m");
    detail::require(k >= 1 && k <= m, "mean_bunch_closed: requires 1 <= k <= m");
    double total = 0.0;
    for (const auto& [lambda, p] : q.q) {
        if (p == 0.0) continue;
        double ratio = 1.0;
        for (const Box& b : boxes(lambda))
            ratio *= static_cast<double>(k + b.content()) / static_cast<double>(m + b.content());
        total += p * ratio;
    }
    detail::ensure(total >= -probability_tolerance && total <= 1.0 + probability_tolerance,
                   "mean_bunch_closed: value outside [0, 1]");
    return std::clamp(total, 0.0, 1.0);
}

/// E_U b for the uniform state with spectrum alpha and a fixed subset of size k.
inline double mean_bunch_closed(int n, int m, int k, std::span<const double> alpha)
{
    detail::require(n >= 1, "mean_bunch_closed: n must be at least 1");
    detail::require(n <= static_cast<int>(alpha.size()), "mean_bunch_closed: requires n <= L");
    return mean_bunch_closed(sw_distribution(n, alpha), m, k);
}

struct MeanEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    int samples = 0;
};

/// Monte Carlo over Haar unitaries. Draw j uses substream(cfg.seed, j), so
/// the result depends only on the seed and not on `threads`.
inline MeanEstimate mean_bunch_mc(const ExperimentConfig& cfg, const StateSpec& spec, int num_unitaries, int threads = 0)
{
    detail::require(num_unitaries >= 2, "mean_bunch_mc: need at least 2 unitaries for a variance estimate");
    cfg.validate();
    cfg.check_matches(spec);
    spec.validate(cfg.m);
    const IrrepDistribution q = aux_irrep_distribution(spec);
    const std::vector<double> values = parallel_map(static_cast<std::size_t>(num_unitaries), threads, [&](std::size_t j) {
        Rng rng = substream(cfg.seed, j);
        const ComplexMatrix u = haar_unitary(rng, cfg.m);
        return detail::finish_probability(detail::bunch_from_gram(gram_matrix(u, spec.sites, cfg.subset), q),
                                          "mean_bunch_mc")
            .value;
    });
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= num_unitaries;
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var /= (num_unitaries - 1);
    return {mean, std::sqrt(var / num_unitaries), num_unitaries};
}

/// Unbiased estimate of the average of b over all k-subsets of [m]: each
/// sample contributes the fraction of k-subsets containing its occupied modes.
inline double subset_avg_estimator(const std::vector<Occupation>& samples, int k, int m)
{
    detail::require(m >= 1 && k >= 0 && k <= m, "subset_avg_estimator: requires 0 <= k <= m");
    detail::require(!samples.empty(), "subset_avg_estimator: no samples");
    const int n = samples.front().total();
    const double all = static_cast<double>(binomial(m, k));
    double total = 0.0;
    for (const Occupation& v : samples) {
        detail::require(v.total() == n, "subset_avg_estimator: samples have different particle numbers");
        detail::require(v.modes() == m, "subset_avg_estimator: sample mode count differs from m");
        const int t = v.occupied_modes();
        if (t <= k) total += static_cast<double>(binomial(m - t, k - t)) / all;
    }
    return total / static_cast<double>(samples.size());
}

/// Average of b over every k-subset of [m], by explicit enumeration.
inline double exact_subset_average(const ComplexMatrix& u, ExperimentConfig cfg, const StateSpec& spec, int k)
{
    detail::require(k >= 0 && k <= cfg.m, "exact_subset_average: requires 0 <= k <= m");
    std::vector<bool> pick(static_cast<std::size_t>(cfg.m), false);
    std::fill(pick.begin(), pick.begin() + k, true);
    double total = 0.0;
    std::uint64_t count = 0;
    do {
        std::vector<int> idx;
        for (int s = 0; s < cfg.m; ++s)
            if (pick[static_cast<std::size_t>(s)]) idx.push_back(s);
        cfg.subset = ModeSubset(idx);
        total += bunch_probability(u, cfg, spec);
        ++count;
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return total / static_cast<double>(count);
}

namespace detail {

template <class R>
std::vector<int> random_sites(R& rng, int m, int n)
{
    std::vector<int> modes(static_cast<std::size_t>(m));
    std::iota(modes.begin(), modes.end(), 0);
    for (int i = 0; i < n; ++i) {
        const auto j = static_cast<std::size_t>(i) + static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(m - i));
        std::swap(modes[static_cast<std::size_t>(i)], modes[j]);
    }
    modes.resize(static_cast<std::size_t>(n));
    return modes;
}

} // namespace detail

inline constexpr double lieb_gap_threshold = 1e-9;

struct LiebTrial {
    int trial = 0;
    int rank = 0;
    double gap = 0.0;  // max_lambda Imm_lambda(A) - perm(A)
    Partition argmax;
};

struct LiebReport {
    int n = 0;
    int trials = 0;
    std::uint64_t seed = 0;
    std::vector<LiebTrial> per_trial;
    LiebTrial worst;
    ComplexMatrix worst_matrix;
    std::vector<LiebTrial> findings;  // gaps above 1e-9
};

/// Random PSD matrices of random rank; records how far the largest normalized
/// immanant rises above the permanent.
inline LiebReport lieb_scan(std::uint64_t seed, int n, int trials, int threads = 0)
{
    detail::require(n >= 1 && n <= default_immanant_cap, "lieb_scan: n must lie in [1, 9]");
    detail::require(trials >= 1, "lieb_scan: trials must be positive");
    struct Out {
        LiebTrial t;
        ComplexMatrix a;
    };
    const std::vector<Out> rows = parallel_map(static_cast<std::size_t>(trials), threads, [&](std::size_t j) {
        Rng rng = substream(seed, j);
        const int rank = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n));
        ComplexMatrix a = random_psd(rng, n, rank);
        const PartitionMap<complex> imm = normalized_immanants(a);
        const double perm = imm.at(Partition::row(n)).real();
        LiebTrial t{static_cast<int>(j), rank, -std::numeric_limits<double>::infinity(), Partition::row(n)};
        for (const auto& [lambda, v] : imm) {
            if (lambda == Partition::row(n)) continue;
            if (v.real() - perm > t.gap) {
                t.gap = v.real() - perm;
                t.argmax = lambda;
            }
        }
        if (n == 1) t.gap = 0.0;
        return Out{t, std::move(a)};
    });
    LiebReport rep;
    rep.n = n;
    rep.trials = trials;
    rep.seed = seed;
    std::size_t worst = 0;
    for (std::size_t j = 0; j < rows.size(); ++j) {
        rep.per_trial.push_back(rows[j].t);
        if (rows[j].t.gap > rows[worst].t.gap) worst = j;
        if (rows[j].t.gap > lieb_gap_threshold) rep.findings.push_back(rows[j].t);
    }
    rep.worst = rows[worst].t;
    rep.worst_matrix = rows[worst].a;
    return rep;
}

struct SchurProbeTrial {
    int trial = 0;
    std::vector<int> sites;
    ProbVector alpha;
    ProbVector alpha_spread;  // majorized by alpha
    double b_alpha = 0.0;
    double b_spread = 0.0;
    double gap = 0.0;  // b_alpha - b_spread
};

struct SchurProbeReport {
    std::vector<SchurProbeTrial> per_trial;
    double min_gap = 0.0;
    std::vector<SchurProbeTrial> findings;  // negative gaps below -1e-10
};

/// For random pairs alpha majorizing alpha' and a random fixed U per pair,
/// records b(S|U, rho(alpha)) - b(S|U, rho(alpha')). Negative gaps are
/// reported, not treated as errors: per-unitary Schur convexity is open.
inline SchurProbeReport schur_convexity_probe(const ExperimentConfig& cfg, int pairs, int threads = 0)
{
    cfg.validate();
    detail::require(cfg.L >= 2, "schur_convexity_probe: needs L >= 2");
    detail::require(pairs >= 1, "schur_convexity_probe: pairs must be positive");
    const std::vector<SchurProbeTrial> rows = parallel_map(static_cast<std::size_t>(pairs), threads, [&](std::size_t j) {
        Rng rng = substream(cfg.seed, j);
        const ComplexMatrix u = haar_unitary(rng, cfg.m);
        SchurProbeTrial t;
        t.trial = static_cast<int>(j);
        t.sites = detail::random_sites(rng, cfg.m, cfg.n);
        auto pair = robin_hood_prob_pairs(rng, cfg.L, 1).front();
        t.alpha = pair.first;
        t.alpha_spread = pair.second;
        t.b_alpha = bunch_probability(u, cfg, StateSpec::uniform(t.alpha, t.sites));
        t.b_spread = bunch_probability(u, cfg, StateSpec::uniform(t.alpha_spread, t.sites));
        t.gap = t.b_alpha - t.b_spread;
        return t;
    });
    SchurProbeReport rep;
    rep.min_gap = std::numeric_limits<double>::infinity();
    for (const auto& t : rows) {
        rep.per_trial.push_back(t);
        rep.min_gap = std::min(rep.min_gap, t.gap);
        if (t.gap < -probability_tolerance) rep.findings.push_back(t);
    }
    return rep;
}

struct WeakBunchingTrial {
    int trial = 0;
    std::string state;  // "labelled:2,1" or "q:random"
    double b_state = 0.0;
    double b_indist = 0.0;
    double gap = 0.0;  // b_state - b_indist
};

struct WeakBunchingReport {
    std::vector<WeakBunchingTrial> per_trial;
    double max_gap = 0.0;
    std::vector<WeakBunchingTrial> findings;  // gaps above 1e-9
};

/// Random normalized weights over the partitions of n with at most L rows.
template <class R>
IrrepDistribution random_irrep_distribution(R& rng, int n, int L)
{
    IrrepDistribution q;
    q.n = n;
    const std::vector<Partition> parts = enumerate_partitions(n, L);
    const ProbVector w = random_prob_vector(rng, static_cast<int>(parts.size()));
    for (std::size_t i = 0; i < parts.size(); ++i) q.q[parts[i]] = w[i];
    return q;
}

/// Checks that no partially labelled or random explicit-q state bunches more
/// than the indistinguishable state with the same sites, for random U.
inline WeakBunchingReport weak_bunching_scan(const ExperimentConfig& cfg, int trials, int threads = 0)
{
    cfg.validate();
    detail::require(trials >= 1, "weak_bunching_scan: trials must be positive");
    const std::vector<std::vector<WeakBunchingTrial>> rows =
        parallel_map(static_cast<std::size_t>(trials), threads, [&](std::size_t j) {
            Rng rng = substream(cfg.seed, j);
            const ComplexMatrix u = haar_unitary(rng, cfg.m);
            const std::vector<int> sites = detail::random_sites(rng, cfg.m, cfg.n);
            const double b_ind = bunch_probability(u, cfg, StateSpec::indistinguishable(sites, cfg.L));
            std::vector<WeakBunchingTrial> out;
            for (const Partition& mu : enumerate_partitions(cfg.n, cfg.L)) {
                const double b = bunch_probability(u, cfg, StateSpec::partially_labelled(mu, sites, cfg.L));
                out.push_back({static_cast<int>(j), "labelled:" + mu.str(), b, b_ind, b - b_ind});
            }
            const double b = bunch_probability(u, cfg, StateSpec::explicit_q(random_irrep_distribution(rng, cfg.n, cfg.L), sites, cfg.L));
            out.push_back({static_cast<int>(j), "q:random", b, b_ind, b - b_ind});
            return out;
        });
    WeakBunchingReport rep;
    rep.max_gap = -std::numeric_limits<double>::infinity();
    for (const auto& row : rows)
        for (const auto& t : row) {
            rep.per_trial.push_back(t);
            rep.max_gap = std::max(rep.max_gap, t.gap);
            if (t.gap > refinement_violation_threshold) rep.findings.push_back(t);
        }
    return rep;
}

} // namespace genbunch
