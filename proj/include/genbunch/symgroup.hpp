#pragma once

// Permutations, cycle types and irreducible characters of S_n.
//
// Characters use the Murnaghan-Nakayama rule on beta-sets: removing a rim
// hook of length r from lambda is the same as lowering one bead of the
// beta-set by r, with sign (-1)^(beads jumped over). Results are memoized per
// thread, so concurrent callers never share mutable state.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "genbunch/errors.hpp"
#include "genbunch/partitions.hpp"

namespace genbunch {

/// A permutation of {0, ..., n-1} in one-line notation: x -> images[x].
class Permutation {
public:
    Permutation() = default;

    explicit Permutation(std::vector<int> images) : images_(std::move(images))
    {
        std::vector<bool> seen(images_.size(), false);
        for (int v : images_) {
            detail::require(v >= 0 && v < size() && !seen[static_cast<std::size_t>(v)],
                            "permutation images must be a bijection on [n]");
            seen[static_cast<std::size_t>(v)] = true;
        }
    }

    static Permutation identity(int n)
    {
        std::vector<int> images(static_cast<std::size_t>(n));
        std::iota(images.begin(), images.end(), 0);
        return Permutation(std::move(images));
    }

    int size() const noexcept { return static_cast<int>(images_.size()); }
    int operator()(int x) const { return images_[static_cast<std::size_t>(x)]; }
    const std::vector<int>& images() const noexcept { return images_; }

    Permutation inverse() const
    {
        std::vector<int> inv(images_.size());
        for (int x = 0; x < size(); ++x) inv[static_cast<std::size_t>(images_[static_cast<std::size_t>(x)])] = x;
        return Permutation(std::move(inv));
    }

    /// (a * b)(x) = a(b(x)).
    friend Permutation operator*(const Permutation& a, const Permutation& b)
    {
        detail::require(a.size() == b.size(), "cannot compose permutations of different sizes");
        std::vector<int> out(a.images_.size());
        for (int x = 0; x < a.size(); ++x) out[static_cast<std::size_t>(x)] = a(b(x));
        return Permutation(std::move(out));
    }

    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    std::vector<int> images_;
};

/// Cycle lengths of a permutation given in one-line notation, sorted
/// nonincreasing. Works on raw image arrays so hot loops can skip validation.
inline Partition cycle_type(const std::vector<int>& images)
{
    std::vector<bool> seen(images.size(), false);
    std::vector<int> lengths;
    for (std::size_t start = 0; start < images.size(); ++start) {
        if (seen[start]) continue;
        int len = 0;
        for (std::size_t x = start; !seen[x]; x = static_cast<std::size_t>(images[x])) {
            seen[x] = true;
            ++len;
        }
        lengths.push_back(len);
    }
    std::sort(lengths.begin(), lengths.end(), std::greater<>());
    return Partition(std::move(lengths));
}

inline Partition cycle_type(const Permutation& sigma) { return cycle_type(sigma.images()); }

inline int sign(const Permutation& sigma)
{
    const Partition ct = cycle_type(sigma);
    return (sigma.size() - ct.length()) % 2 == 0 ? 1 : -1;
}

/// z_ct = prod_l l^{m_l} m_l!, the centralizer order; n!/z_ct is the class size.
inline std::uint64_t centralizer_order(const Partition& ct)
{
    std::map<int, int> mult;
    for (int part : ct) ++mult[part];
    std::uint64_t z = 1;
    for (auto [len, count] : mult) {
        for (int i = 0; i < count; ++i) z *= static_cast<std::uint64_t>(len);
        z *= factorial(count);
    }
    return z;
}

inline std::uint64_t class_size(const Partition& ct) { return factorial(ct.size()) / centralizer_order(ct); }

namespace detail {

inline std::int64_t mn_character(const std::vector<int>& lambda, const std::vector<int>& ct, std::size_t from)
{
    if (from == ct.size()) return lambda.empty() ? 1 : 0;

    using Key = std::pair<std::vector<int>, std::vector<int>>;
    thread_local std::map<Key, std::int64_t> memo;
    Key key{lambda, std::vector<int>(ct.begin() + static_cast<std::ptrdiff_t>(from), ct.end())};
    if (auto it = memo.find(key); it != memo.end()) return it->second;

    const int len = static_cast<int>(lambda.size());
    std::vector<int> beta(lambda.size());
    for (int i = 0; i < len; ++i) beta[static_cast<std::size_t>(i)] = lambda[static_cast<std::size_t>(i)] + (len - 1 - i);

    const int r = ct[from];
    std::int64_t total = 0;
    for (int i = 0; i < len; ++i) {
        const int target = beta[static_cast<std::size_t>(i)] - r;
        if (target < 0) continue;
        if (std::find(beta.begin(), beta.end(), target) != beta.end()) continue;
        int jumped = 0;
        for (int b : beta)
            if (b > target && b < beta[static_cast<std::size_t>(i)]) ++jumped;
        std::vector<int> moved = beta;
        moved[static_cast<std::size_t>(i)] = target;
        std::sort(moved.begin(), moved.end(), std::greater<>());
        std::vector<int> smaller;
        for (int k = 0; k < len; ++k) {
            const int part = moved[static_cast<std::size_t>(k)] - (len - 1 - k);
            if (part > 0) smaller.push_back(part);
        }
        const std::int64_t sub = mn_character(smaller, ct, from + 1);
        total += (jumped % 2 == 0) ? sub : -sub;
    }
    memo.emplace(std::move(key), total);
    return total;
}

} // namespace detail

/// chi_lambda evaluated on any permutation of cycle type ct.
inline std::int64_t character(const Partition& lambda, const Partition& ct)
{
    detail::require(lambda.size() == ct.size(), "character: |lambda| != |cycle type|");
    return detail::mn_character(lambda.parts(), ct.parts(), 0);
}

inline constexpr int default_character_table_cap = 10;

struct CharacterTable {
    int n = 0;
    std::vector<Partition> irreps;   // rows, reverse-lex
    std::vector<Partition> classes;  // columns, reverse-lex
    std::vector<std::vector<std::int64_t>> values;
    std::vector<std::uint64_t> class_sizes;

    std::size_t irrep_index(const Partition& lambda) const
    {
        auto it = std::find(irreps.begin(), irreps.end(), lambda);
        detail::require(it != irreps.end(), "no irrep " + lambda.str() + " in table");
        return static_cast<std::size_t>(it - irreps.begin());
    }

    std::size_t class_index(const Partition& ct) const
    {
        auto it = std::find(classes.begin(), classes.end(), ct);
        detail::require(it != classes.end(), "no class " + ct.str() + " in table");
        return static_cast<std::size_t>(it - classes.begin());
    }

    std::int64_t operator()(const Partition& lambda, const Partition& ct) const
    {
        return values[irrep_index(lambda)][class_index(ct)];
    }
};

inline CharacterTable character_table(int n, int cap = default_character_table_cap)
{
    detail::require(n >= 1, "character_table: n must be at least 1");
    detail::require(n <= cap, "character_table: n = " + std::to_string(n) + " exceeds the cap of " +
                                  std::to_string(cap));
    CharacterTable table;
    table.n = n;
    table.irreps = enumerate_partitions(n);
    table.classes = table.irreps;
    for (const Partition& ct : table.classes) table.class_sizes.push_back(class_size(ct));
    for (const Partition& lambda : table.irreps) {
        std::vector<std::int64_t> row;
        row.reserve(table.classes.size());
        for (const Partition& ct : table.classes) row.push_back(character(lambda, ct));
        table.values.push_back(std::move(row));
    }
    return table;
}

} // namespace genbunch
