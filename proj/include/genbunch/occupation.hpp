#pragma once

// Mode occupations: how many particles sit in each of a fixed number of modes.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "genbunch/errors.hpp"
#include "genbunch/partitions.hpp"

namespace genbunch {

struct Occupation {
    std::vector<int> counts;

    int total() const { return std::accumulate(counts.begin(), counts.end(), 0); }
    int modes() const { return static_cast<int>(counts.size()); }

    int occupied_modes() const
    {
        return static_cast<int>(std::count_if(counts.begin(), counts.end(), [](int c) { return c > 0; }));
    }

    /// g! = prod_s g_s!
    std::uint64_t factorial_product() const
    {
        std::uint64_t out = 1;
        for (int c : counts) out *= factorial(c);
        return out;
    }

    /// The nondecreasing list of occupied modes, each repeated by its count.
    std::vector<int> mode_list() const
    {
        std::vector<int> out;
        for (int s = 0; s < modes(); ++s)
            for (int c = 0; c < counts[static_cast<std::size_t>(s)]; ++c) out.push_back(s);
        return out;
    }

    /// Inverse of mode_list: counts of each mode in `list`.
    static Occupation from_mode_list(const std::vector<int>& list, int modes)
    {
        Occupation g{std::vector<int>(static_cast<std::size_t>(modes), 0)};
        for (int s : list) {
            detail::require(s >= 0 && s < modes, "mode index out of range");
            ++g.counts[static_cast<std::size_t>(s)];
        }
        return g;
    }

    /// True when every occupied mode belongs to `subset` (sorted indices).
    bool supported_in(const std::vector<int>& subset) const
    {
        for (int s = 0; s < modes(); ++s)
            if (counts[static_cast<std::size_t>(s)] > 0 && !std::binary_search(subset.begin(), subset.end(), s))
                return false;
        return true;
    }

    /// Compact form, e.g. "2,0,1".
    std::string str() const
    {
        std::string out;
        for (std::size_t i = 0; i < counts.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(counts[i]);
        }
        return out;
    }

    friend bool operator==(const Occupation&, const Occupation&) = default;
    friend auto operator<=>(const Occupation& a, const Occupation& b) { return a.counts <=> b.counts; }
};

/// All occupations of `modes` modes with total n, reverse-lexicographic
/// (for n = 2 and two modes: 20, 11, 02). There are C(n + modes - 1, n).
inline std::vector<Occupation> enumerate_occupations(int n, int modes)
{
    detail::require(n >= 0 && modes >= 0, "enumerate_occupations: negative argument");
    std::vector<Occupation> out;
    if (modes == 0) {
        if (n == 0) out.push_back({});
        return out;
    }
    std::vector<int> counts(static_cast<std::size_t>(modes), 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == modes - 1) {
            counts[static_cast<std::size_t>(pos)] = left;
            out.push_back({counts});
            return;
        }
        for (int c = left; c >= 0; --c) {
            counts[static_cast<std::size_t>(pos)] = c;
            rec(pos + 1, left - c);
        }
    };
    rec(0, n);
    return out;
}

/// Occupations of `total_modes` modes with total n supported on `modes`.
inline std::vector<Occupation> enumerate_occupations(int n, const std::vector<int>& modes, int total_modes)
{
    for (int s : modes) detail::require(s >= 0 && s < total_modes, "enumerate_occupations: mode out of range");
    std::vector<Occupation> out;
    for (const Occupation& local : enumerate_occupations(n, static_cast<int>(modes.size()))) {
        Occupation g{std::vector<int>(static_cast<std::size_t>(total_modes), 0)};
        for (std::size_t k = 0; k < modes.size(); ++k) g.counts[static_cast<std::size_t>(modes[k])] += local.counts[k];
        out.push_back(std::move(g));
    }
    return out;
}

inline std::uint64_t binomial(int n, int k)
{
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    u128 out = 1;
    for (int i = 1; i <= k; ++i) out = out * static_cast<u128>(n - k + i) / static_cast<u128>(i);
    return static_cast<std::uint64_t>(out);
}

} // namespace genbunch
