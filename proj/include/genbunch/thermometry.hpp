#pragma once

// Gibbs-distributed hidden states and bunching thermometry: the Haar-mean
// bunching probability rises strictly with inverse temperature, so a measured
// mean can be turned back into beta.

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "genbunch/bunching.hpp"
#include "genbunch/errors.hpp"
#include "genbunch/parallel.hpp"
#include "genbunch/symfunc.hpp"

namespace genbunch {

inline constexpr double default_beta_max = 50.0;
inline constexpr double monotonicity_slack = 1e-12;
inline constexpr double inversion_tolerance = 1e-12;

/// Energy levels 0 = e_0 <= e_1 <= ... <= e_{L-1}.
struct EnergySpectrum {
    std::vector<double> levels;

    explicit EnergySpectrum(std::vector<double> lv) : levels(std::move(lv))
    {
        detail::require(!levels.empty(), "spectrum must have at least one level");
        detail::require(levels.front() == 0.0, "spectrum must start at exactly 0");
        for (std::size_t i = 0; i < levels.size(); ++i) {
            detail::require(std::isfinite(levels[i]), "spectrum levels must be finite");
            detail::require(i == 0 || levels[i] >= levels[i - 1], "spectrum levels must be nondecreasing");
        }
    }

    int size() const { return static_cast<int>(levels.size()); }
    bool degenerate() const { return levels.back() == levels.front(); }
};

/// alpha_k proportional to exp(-e_k beta). beta = +infinity gives the
/// zero-temperature limit: uniform over the levels at energy 0.
inline ProbVector gibbs(const EnergySpectrum& spectrum, double beta)
{
    detail::require(!std::isnan(beta) && beta >= 0.0, "gibbs: beta must be nonnegative");
    ProbVector alpha(spectrum.levels.size());
    if (std::isinf(beta)) {
        const auto ground = std::count(spectrum.levels.begin(), spectrum.levels.end(), 0.0);
        for (std::size_t i = 0; i < alpha.size(); ++i)
            alpha[i] = spectrum.levels[i] == 0.0 ? 1.0 / static_cast<double>(ground) : 0.0;
        return alpha;
    }
    // the minimum energy is 0, so exp(-e beta) <= 1 already
    double z = 0.0;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        alpha[i] = std::exp(-spectrum.levels[i] * beta);
        z += alpha[i];
    }
    for (double& a : alpha) a /= z;
    return alpha;
}

struct ThermoParams {
    int n = 2;
    int m = 2;
    int k = 1;

    void validate(const EnergySpectrum& spectrum) const
    {
        detail::require(n >= 1, "thermometry: n must be at least 1");
        detail::require(n <= m, "thermometry: requires n <= m");
        detail::require(n <= spectrum.size(), "thermometry: requires n <= L");
        detail::require(k >= 1 && k <= m, "thermometry: requires 1 <= k <= m");
    }
};

/// y(beta): Haar-mean bunching of the uniform state with Gibbs weights.
inline double mean_bunch_at(const EnergySpectrum& spectrum, const ThermoParams& p, double beta)
{
    return mean_bunch_closed(p.n, p.m, p.k, gibbs(spectrum, beta));
}

struct ThermoCurve {
    ThermoParams params;
    std::vector<double> betas;
    std::vector<double> values;
};

/// Evaluates y on a grid. For a non-degenerate spectrum with n >= 2 and
/// k < m, a decrease beyond 1e-12 between increasing grid points throws
/// internal_error.
inline ThermoCurve thermo_curve(const EnergySpectrum& spectrum, const ThermoParams& p, std::vector<double> betas,
                                int threads = 0)
{
    p.validate(spectrum);
    for (double b : betas) detail::require(!std::isnan(b) && b >= 0.0, "thermo_curve: grid values must be nonnegative");
    ThermoCurve curve{p, std::move(betas), {}};
    curve.values = parallel_map(curve.betas.size(), threads,
                                [&](std::size_t i) { return mean_bunch_at(spectrum, p, curve.betas[i]); });
    if (!spectrum.degenerate() && p.n >= 2 && p.k < p.m) {
        for (std::size_t i = 1; i < curve.values.size(); ++i)
            if (curve.betas[i] > curve.betas[i - 1])
                detail::ensure(curve.values[i] > curve.values[i - 1] - monotonicity_slack,
                               "thermo_curve: mean bunching decreased between grid points");
    }
    return curve;
}

inline std::vector<double> linear_grid(double lo, double hi, int points)
{
    detail::require(points >= 2, "linear_grid: need at least two points");
    std::vector<double> out(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) out[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (points - 1);
    return out;
}

/// Bisection for y(beta) = target on [0, beta_max].
inline double invert_temperature(const EnergySpectrum& spectrum, const ThermoParams& p, double target,
                                 double beta_max = default_beta_max)
{
    p.validate(spectrum);
    detail::require(p.n >= 2, "invert_temperature: n = 1 shows no interference, so y(beta) = k/m is not invertible");
    detail::require(!spectrum.degenerate(), "invert_temperature: all energy levels are equal, so y(beta) is constant");
    detail::require(p.k < p.m, "invert_temperature: k = m gives y(beta) = 1 for every beta");
    detail::require(std::isfinite(beta_max) && beta_max > 0.0, "invert_temperature: beta_max must be positive");
    detail::require(std::isfinite(target), "invert_temperature: target must be finite");

    double lo = 0.0, hi = beta_max;
    const double y_lo = mean_bunch_at(spectrum, p, lo);
    const double y_hi = mean_bunch_at(spectrum, p, hi);
    if (target < y_lo || target > y_hi) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "invert_temperature: target " << target << " is outside [y(0), y(beta_max)] = [" << y_lo << ", " << y_hi
            << "] with beta_max = " << beta_max
            << "; the curve flattens exponentially, so larger beta is ill-conditioned";
        throw validation_error(msg.str());
    }
    if (std::abs(target - y_lo) < inversion_tolerance) return 0.0;
    if (std::abs(target - y_hi) < inversion_tolerance) return beta_max;
    for (int iter = 0; iter < 400; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double y = mean_bunch_at(spectrum, p, mid);
        if (std::abs(y - target) < inversion_tolerance) return mid;
        (y < target ? lo : hi) = mid;
        if (hi - lo <= std::numeric_limits<double>::epsilon() * std::max(1.0, hi)) break;
    }
    return 0.5 * (lo + hi);
}

inline ThermoCurve thermo_curve(const EnergySpectrum& spectrum, int n, int m, int k, std::vector<double> betas)
{
    return thermo_curve(spectrum, ThermoParams{n, m, k}, std::move(betas));
}

inline double invert_temperature(const EnergySpectrum& spectrum, int n, int m, int k, double target,
                                 double beta_max = default_beta_max)
{
    return invert_temperature(spectrum, ThermoParams{n, m, k}, target, beta_max);
}

} // namespace genbunch
