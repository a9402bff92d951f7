#pragma once

// Integer partitions and Young-diagram combinatorics: hooks, contents,
// standard and semistandard tableau counts, Kostka numbers, the majorization
// and refinement orders, and ordered set partitions.
//
// Counts that grow factorially are computed in unsigned 128-bit integers with
// overflow checks. Factorials are capped at n <= 20.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "genbunch/errors.hpp"

namespace genbunch {

using u128 = unsigned __int128;

inline constexpr int max_factorial_n = 20;

inline std::string to_string(u128 value)
{
    if (value == 0) return "0";
    std::string digits;
    while (value > 0) {
        digits.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
        value /= 10;
    }
    std::reverse(digits.begin(), digits.end());
    return digits;
}

inline std::uint64_t factorial(int n)
{
    detail::require(n >= 0 && n <= max_factorial_n,
                    "factorial: n must lie in [0, 20], got " + std::to_string(n));
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
}

namespace detail {

inline u128 checked_mul(u128 a, u128 b)
{
    u128 out;
    if (__builtin_mul_overflow(a, b, &out))
        throw std::overflow_error("128-bit overflow in combinatorial count");
    return out;
}

} // namespace detail

/// A partition of n: a nonincreasing list of positive parts. Trailing zeros
/// are stripped on construction, so (2,1,0) and (2,1) compare equal.
class Partition {
public:
    Partition() = default;

    explicit Partition(std::vector<int> parts) : parts_(std::move(parts))
    {
        while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            detail::require(parts_[i] > 0, "partition parts must be positive");
            detail::require(i == 0 || parts_[i] <= parts_[i - 1],
                            "partition parts must be nonincreasing");
        }
        total_ = std::accumulate(parts_.begin(), parts_.end(), 0);
    }

    Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

    /// Single-row partition (n).
    static Partition row(int n) { return n == 0 ? Partition{} : Partition(std::vector<int>{n}); }
    /// Single-column partition (1^n).
    static Partition column(int n) { return Partition(std::vector<int>(static_cast<std::size_t>(n), 1)); }

    int size() const noexcept { return total_; }
    int length() const noexcept { return static_cast<int>(parts_.size()); }
    bool empty() const noexcept { return parts_.empty(); }
    const std::vector<int>& parts() const noexcept { return parts_; }

    /// Row length with 0-based index; rows past the end have length 0.
    int operator[](int row) const noexcept
    {
        return row < length() ? parts_[static_cast<std::size_t>(row)] : 0;
    }

    auto begin() const noexcept { return parts_.begin(); }
    auto end() const noexcept { return parts_.end(); }

    Partition conjugate() const
    {
        std::vector<int> cols(parts_.empty() ? 0 : static_cast<std::size_t>(parts_.front()), 0);
        for (int len : parts_)
            for (int c = 0; c < len; ++c) ++cols[static_cast<std::size_t>(c)];
        return Partition(std::move(cols));
    }

    /// lambda! = prod_i lambda_i!
    std::uint64_t factorial_product() const
    {
        std::uint64_t out = 1;
        for (int p : parts_) out *= factorial(p);
        return out;
    }

    /// Comma list, e.g. "3,1,1".
    std::string str() const
    {
        std::string out;
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(parts_[i]);
        }
        return out;
    }

    friend bool operator==(const Partition&, const Partition&) = default;
    friend auto operator<=>(const Partition& a, const Partition& b) { return a.parts_ <=> b.parts_; }

private:
    std::vector<int> parts_;
    int total_ = 0;
};

/// Maps keyed by partition iterate in the canonical reverse-lexicographic
/// order: (3), (2,1), (1,1,1).
template <class T>
using PartitionMap = std::map<Partition, T, std::greater<>>;

/// A box of a Young diagram with 1-based coordinates.
struct Box {
    int row = 1;
    int col = 1;

    int content() const noexcept { return col - row; }
    friend bool operator==(const Box&, const Box&) = default;
};

inline std::vector<Box> boxes(const Partition& lambda)
{
    std::vector<Box> out;
    out.reserve(static_cast<std::size_t>(lambda.size()));
    for (int r = 0; r < lambda.length(); ++r)
        for (int c = 0; c < lambda[r]; ++c) out.push_back({r + 1, c + 1});
    return out;
}

inline int hook_length(const Partition& lambda, const Box& box)
{
    const Partition conj = lambda.conjugate();
    detail::require(box.row >= 1 && box.row <= lambda.length() && box.col >= 1 &&
                        box.col <= lambda[box.row - 1],
                    "box lies outside the diagram");
    return lambda[box.row - 1] - box.col + conj[box.col - 1] - box.row + 1;
}

/// All partitions of n with at most max_len parts, reverse-lexicographic.
/// n = 0 yields the single empty partition.
inline std::vector<Partition> enumerate_partitions(int n, int max_len)
{
    detail::require(n >= 0, "enumerate_partitions: n must be nonnegative");
    detail::require(max_len >= 0, "enumerate_partitions: max_len must be nonnegative");
    std::vector<Partition> out;
    std::vector<int> current;
    std::function<void(int, int)> rec = [&](int remaining, int cap) {
        if (remaining == 0) {
            out.emplace_back(current);
            return;
        }
        if (static_cast<int>(current.size()) == max_len) return;
        for (int p = std::min(remaining, cap); p >= 1; --p) {
            current.push_back(p);
            rec(remaining - p, p);
            current.pop_back();
        }
    };
    rec(n, n);
    return out;
}

inline std::vector<Partition> enumerate_partitions(int n) { return enumerate_partitions(n, n); }

/// Number of standard tableaux of shape lambda, by the hook length formula.
inline std::uint64_t dim_standard(const Partition& lambda)
{
    const Partition conj = lambda.conjugate();
    u128 hooks = 1;
    for (int r = 0; r < lambda.length(); ++r)
        for (int c = 0; c < lambda[r]; ++c)
            hooks *= static_cast<u128>(lambda[r] - c + conj[c] - r - 1);
    return static_cast<std::uint64_t>(static_cast<u128>(factorial(lambda.size())) / hooks);
}

/// d^{up lambda} = prod over boxes of (d + content). Zero exactly when some
/// box has content -d, i.e. when lambda has more than d rows.
inline u128 rising_factorial(int d, const Partition& lambda)
{
    detail::require(d >= 0, "rising_factorial: d must be nonnegative");
    if (lambda.length() > d) return 0;
    u128 out = 1;
    for (const Box& b : boxes(lambda))
        out = detail::checked_mul(out, static_cast<u128>(d + b.content()));
    return out;
}

namespace detail {

// Enumerates chains of horizontal strips that build `shape` one label at a
// time, which is the same thing as enumerating semistandard tableaux. The
// callback on_strip(label, size) returns false to prune; on_complete() is
// called once per finished tableau. `labels` is the alphabet size and `sizes`
// optionally fixes the number of boxes per label (a weight).
class StripChainEnumerator {
public:
    StripChainEnumerator(const Partition& shape, int labels, const std::vector<int>* sizes)
        : shape_(shape), labels_(labels), sizes_(sizes),
          current_(static_cast<std::size_t>(shape.length()), 0)
    {
    }

    template <class Visit>
    void run(Visit&& visit)
    {
        label(0, 0, visit);
    }

private:
    template <class Visit>
    void label(int t, int filled, Visit& visit)
    {
        if (filled == shape_.size()) {
            visit.complete();
            return;
        }
        if (t == labels_) return;
        if (!columns_fillable(labels_ - t)) return;
        const std::vector<int> before = current_;
        strip_row(t, 0, 0, before, filled, visit);
        current_ = before;
    }

    // Each unfilled column needs distinct labels for its remaining cells.
    bool columns_fillable(int labels_left) const
    {
        const int width = shape_[0];
        for (int c = 0; c < width; ++c) {
            int need = 0;
            for (int r = 0; r < shape_.length(); ++r)
                if (current_[static_cast<std::size_t>(r)] <= c && c < shape_[r]) ++need;
            if (need > labels_left) return false;
        }
        return true;
    }

    template <class Visit>
    void strip_row(int t, int r, int added, const std::vector<int>& before, int filled, Visit& visit)
    {
        if (r == shape_.length()) {
            if (sizes_ && added != (*sizes_)[static_cast<std::size_t>(t)]) return;
            visit.push(t, added);
            label(t + 1, filled + added, visit);
            visit.pop(t, added);
            return;
        }
        const int lo = before[static_cast<std::size_t>(r)];
        int hi = shape_[r];
        if (r > 0) hi = std::min(hi, before[static_cast<std::size_t>(r - 1)]);
        for (int len = lo; len <= hi; ++len) {
            const int extra = len - lo;
            if (sizes_ && added + extra > (*sizes_)[static_cast<std::size_t>(t)]) break;
            current_[static_cast<std::size_t>(r)] = len;
            strip_row(t, r + 1, added + extra, before, filled, visit);
        }
        current_[static_cast<std::size_t>(r)] = lo;
    }

    const Partition& shape_;
    int labels_;
    const std::vector<int>* sizes_;
    std::vector<int> current_;
};

} // namespace detail

/// Number of semistandard tableaux of shape lambda whose weight is the
/// composition `weight` (weight[i] copies of label i+1), by enumeration.
inline std::uint64_t kostka(const Partition& lambda, const std::vector<int>& weight)
{
    const int total = std::accumulate(weight.begin(), weight.end(), 0);
    detail::require(total == lambda.size(), "kostka: shape and weight sizes differ");
    for (int w : weight) detail::require(w >= 0, "kostka: weight entries must be nonnegative");
    if (lambda.size() == 0) return 1;
    struct Counter {
        std::uint64_t count = 0;
        void push(int, int) {}
        void pop(int, int) {}
        void complete() { ++count; }
    } counter;
    detail::StripChainEnumerator(lambda, static_cast<int>(weight.size()), &weight).run(counter);
    return counter.count;
}

inline std::uint64_t kostka(const Partition& lambda, const Partition& mu)
{
    detail::require(lambda.size() == mu.size(), "kostka: |lambda| != |mu|");
    return kostka(lambda, mu.parts());
}

/// Number of semistandard tableaux of shape lambda with entries in [d]:
/// prod (d + c(box)) / prod h(box), which equals dim(lambda) d^{up lambda} / n!.
inline u128 count_ssyt(const Partition& lambda, int d)
{
    detail::require(d >= 0, "count_ssyt: d must be nonnegative");
    const u128 numerator = rising_factorial(d, lambda);
    if (numerator == 0) return 0;
    u128 hooks = 1;
    const Partition conj = lambda.conjugate();
    for (int r = 0; r < lambda.length(); ++r)
        for (int c = 0; c < lambda[r]; ++c)
            hooks = detail::checked_mul(hooks, static_cast<u128>(lambda[r] - c + conj[c] - r - 1));
    return numerator / hooks;
}

inline constexpr double majorization_total_tolerance = 1e-12;

/// True iff every prefix sum of sorted-descending a dominates the matching
/// prefix of sorted-descending b. Shorter inputs are zero-padded.
inline bool majorizes(std::span<const double> a, std::span<const double> b)
{
    std::vector<double> x(a.begin(), a.end());
    std::vector<double> y(b.begin(), b.end());
    const std::size_t len = std::max(x.size(), y.size());
    x.resize(len, 0.0);
    y.resize(len, 0.0);
    std::sort(x.begin(), x.end(), std::greater<>());
    std::sort(y.begin(), y.end(), std::greater<>());
    const double ta = std::accumulate(x.begin(), x.end(), 0.0);
    const double tb = std::accumulate(y.begin(), y.end(), 0.0);
    detail::require(std::abs(ta - tb) <= majorization_total_tolerance,
                    "majorizes: inputs have different totals");
    double px = 0.0, py = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
        px += x[i];
        py += y[i];
        if (px < py - majorization_total_tolerance) return false;
    }
    return true;
}

inline bool majorizes(const Partition& lambda, const Partition& mu)
{
    detail::require(lambda.size() == mu.size(), "majorizes: |lambda| != |mu|");
    int pl = 0, pm = 0;
    for (int i = 0; i < std::max(lambda.length(), mu.length()); ++i) {
        pl += lambda[i];
        pm += mu[i];
        if (pl < pm) return false;
    }
    return true;
}

/// True iff mu is a refinement of lambda: the parts of mu can be grouped so
/// that the group assigned to row i sums to lambda_i. Exact backtracking.
inline bool refines(const Partition& lambda, const Partition& mu)
{
    detail::require(lambda.size() == mu.size(), "refines: |lambda| != |mu|");
    std::vector<int> capacity = lambda.parts();
    const std::vector<int>& pieces = mu.parts();
    std::function<bool(std::size_t)> place = [&](std::size_t k) {
        if (k == pieces.size()) return true;
        for (std::size_t r = 0; r < capacity.size(); ++r) {
            if (capacity[r] < pieces[k]) continue;
            // rows with equal remaining capacity are interchangeable
            bool seen = false;
            for (std::size_t q = 0; q < r; ++q)
                if (capacity[q] == capacity[r]) seen = true;
            if (seen) continue;
            capacity[r] -= pieces[k];
            if (place(k + 1)) return true;
            capacity[r] += pieces[k];
        }
        return false;
    };
    return place(0);
}

/// An ordered set partition R: block i holds the items assigned to part i.
using OrderedSetPartition = std::vector<std::vector<int>>;

/// All ordered partitions of `items` into blocks of sizes mu_1, mu_2, ...
/// There are n!/mu! of them.
inline std::vector<OrderedSetPartition> ordered_set_partitions(std::vector<int> items,
                                                               const Partition& mu)
{
    detail::require(static_cast<int>(items.size()) == mu.size(),
                    "ordered_set_partitions: item count must equal |mu|");
    std::sort(items.begin(), items.end());
    detail::require(std::adjacent_find(items.begin(), items.end()) == items.end(),
                    "ordered_set_partitions: items must be distinct");

    std::vector<OrderedSetPartition> out;
    OrderedSetPartition current;
    std::function<void(const std::vector<int>&, int)> rec = [&](const std::vector<int>& rest,
                                                                 int block) {
        if (block == mu.length()) {
            out.push_back(current);
            return;
        }
        const int size = mu[block];
        // choose `size` of `rest` in lexicographic order via a selection mask
        std::vector<bool> pick(rest.size(), false);
        std::fill(pick.begin(), pick.begin() + size, true);
        do {
            std::vector<int> chosen, left;
            for (std::size_t i = 0; i < rest.size(); ++i)
                (pick[i] ? chosen : left).push_back(rest[i]);
            current.push_back(std::move(chosen));
            rec(left, block + 1);
            current.pop_back();
        } while (std::prev_permutation(pick.begin(), pick.end()));
    };
    rec(items, 0);
    return out;
}

namespace detail {

// Moves the last box of a longer row onto a shorter row (possibly a new
// one). Only transfers between rows whose lengths differ by at least two
// change the partition.
inline std::vector<std::pair<int, int>> robin_hood_moves(const Partition& p)
{
    std::vector<std::pair<int, int>> moves;
    const int len = p.length();
    for (int i = 0; i < len; ++i) {
        if (i + 1 < len && p[i + 1] == p[i]) continue; // take from the lowest row of its length
        for (int j = i + 1; j <= len; ++j) {
            if (j > i + 1 && p[j - 1] == p[j]) continue; // give to the highest row of its length
            if (p[i] - p[j] >= 2) moves.emplace_back(i, j);
        }
    }
    return moves;
}

inline Partition apply_robin_hood(const Partition& p, std::pair<int, int> move)
{
    std::vector<int> parts = p.parts();
    parts.resize(static_cast<std::size_t>(p.length() + 1), 0);
    --parts[static_cast<std::size_t>(move.first)];
    ++parts[static_cast<std::size_t>(move.second)];
    return Partition(std::move(parts));
}

} // namespace detail

/// Random pairs (mu, lambda) with mu strictly majorizing lambda, each built
/// by applying one to three robin-hood transfers to a random partition of n.
template <class Rng>
std::vector<std::pair<Partition, Partition>> robin_hood_pairs(Rng& rng, int n, int count)
{
    detail::require(n >= 2, "robin_hood_pairs: n must be at least 2");
    std::vector<Partition> starts;
    for (Partition& p : enumerate_partitions(n))
        if (!detail::robin_hood_moves(p).empty()) starts.push_back(std::move(p));

    std::vector<std::pair<Partition, Partition>> out;
    out.reserve(static_cast<std::size_t>(std::max(count, 0)));
    for (int k = 0; k < count; ++k) {
        std::uniform_int_distribution<std::size_t> pick_start(0, starts.size() - 1);
        const Partition mu = starts[pick_start(rng)];
        Partition lambda = mu;
        const int steps = 1 + static_cast<int>(rng() % 3);
        for (int s = 0; s < steps; ++s) {
            const auto moves = detail::robin_hood_moves(lambda);
            if (moves.empty()) break;
            std::uniform_int_distribution<std::size_t> pick_move(0, moves.size() - 1);
            lambda = detail::apply_robin_hood(lambda, moves[pick_move(rng)]);
        }
        out.emplace_back(mu, std::move(lambda));
    }
    return out;
}

} // namespace genbunch
