#pragma once

#include <algorithm>
#include <compare>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "haarpencil/arith.hpp"

namespace haarpencil {

/// An integer partition: weakly decreasing positive parts. The empty
/// partition is the unique partition of 0. Weight/height/width are derived,
/// never cached, so equality stays structural.
class Partition {
  public:
    Partition() = default;

    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] <= 0)
                throw std::invalid_argument("Partition: parts must be positive");
            if (i > 0 && parts_[i] > parts_[i - 1])
                throw std::invalid_argument("Partition: parts must be weakly decreasing");
        }
    }

    // Sorts and drops zeros; accepts any multiset of nonnegative integers.
    static Partition from_multiset(std::vector<int> values) {
        std::sort(values.rbegin(), values.rend());
        while (!values.empty() && values.back() == 0) values.pop_back();
        return Partition(std::move(values));
    }

    const std::vector<int>& parts() const { return parts_; }
    int weight() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }
    int height() const { return static_cast<int>(parts_.size()); }
    int width() const { return parts_.empty() ? 0 : parts_[0]; }
    bool empty() const { return parts_.empty(); }

    // Zero-padded access, 0-based row index.
    int part(int i) const {
        return (i >= 0 && i < height()) ? parts_[static_cast<std::size_t>(i)] : 0;
    }

    friend auto operator<=>(const Partition&, const Partition&) = default;

  private:
    std::vector<int> parts_;
};

using CellGrid = std::vector<std::vector<int>>;

inline Partition conjugate(const Partition& lam) {
    std::vector<int> cols(static_cast<std::size_t>(lam.width()), 0);
    for (int p : lam.parts())
        for (int j = 0; j < p; ++j) ++cols[static_cast<std::size_t>(j)];
    return Partition(std::move(cols));
}

/// All partitions of n subject to optional height/width caps, in descending
/// lexicographic order (largest first part first).
inline std::vector<Partition> enumerate_partitions(
    int n, std::optional<int> max_height = std::nullopt,
    std::optional<int> max_width = std::nullopt) {
    if (n < 0) throw std::invalid_argument("enumerate_partitions: n < 0");
    int hcap = max_height.value_or(n);
    int wcap = max_width.value_or(n);
    std::vector<Partition> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int remaining, int max_part, int rows_left) -> void {
        if (remaining == 0) {
            out.emplace_back(Partition(cur));
            return;
        }
        if (rows_left == 0) return;
        // rows_left rows of at most max_part cells is all the room left
        if (static_cast<long>(max_part) * rows_left < remaining) return;
        for (int p = std::min(remaining, max_part); p >= 1; --p) {
            cur.push_back(p);
            self(self, remaining - p, p, rows_left - 1);
            cur.pop_back();
        }
    };
    rec(rec, n, std::min(n, wcap), hcap);
    return out;
}

inline CellGrid hook_lengths(const Partition& lam) {
    Partition conj = conjugate(lam);
    CellGrid grid;
    grid.reserve(static_cast<std::size_t>(lam.height()));
    for (int i = 0; i < lam.height(); ++i) {
        std::vector<int> row(static_cast<std::size_t>(lam.part(i)));
        for (int j = 0; j < lam.part(i); ++j)
            row[static_cast<std::size_t>(j)] = lam.part(i) + conj.part(j) - i - j - 1;
        grid.push_back(std::move(row));
    }
    return grid;
}

inline CellGrid contents(const Partition& lam) {
    CellGrid grid;
    grid.reserve(static_cast<std::size_t>(lam.height()));
    for (int i = 0; i < lam.height(); ++i) {
        std::vector<int> row(static_cast<std::size_t>(lam.part(i)));
        for (int j = 0; j < lam.part(i); ++j) row[static_cast<std::size_t>(j)] = j - i;
        grid.push_back(std::move(row));
    }
    return grid;
}

/// C_lambda(d) = prod over cells (d + content). Vanishes (or goes negative)
/// only when ht(lambda) > d.
inline Int content_polynomial(const Partition& lam, int d) {
    if (d < 1) throw std::invalid_argument("content_polynomial: d < 1");
    Int prod = 1;
    for (int i = 0; i < lam.height(); ++i)
        for (int j = 0; j < lam.part(i); ++j) prod *= Int(d + j - i);
    return prod;
}

inline Int hook_product(const Partition& lam) {
    Int prod = 1;
    for (const auto& row : hook_lengths(lam))
        for (int h : row) prod *= Int(h);
    return prod;
}

/// Principal specialization s_lambda(1,...,1) with d ones, via the
/// hook-content formula; an exact nonnegative integer, 0 iff ht(lambda) > d.
inline Int schur_at_ones(const Partition& lam, int d) {
    if (d < 1) throw std::invalid_argument("schur_at_ones: d < 1");
    if (lam.height() > d) return 0;
    Rat val(content_polynomial(lam, d));
    val /= Rat(hook_product(lam));
    val.canonicalize();
    if (val.get_den() != 1 || val < 0)
        throw std::logic_error("schur_at_ones: hook-content product not a nonnegative integer");
    return val.get_num();
}

/// chi_lambda(1) = n! / prod of hooks.
inline Int irrep_dimension(const Partition& lam) {
    Rat val(factorial(lam.weight()));
    val /= Rat(hook_product(lam));
    val.canonicalize();
    if (val.get_den() != 1 || val <= 0)
        throw std::logic_error("irrep_dimension: hook quotient not a positive integer");
    return val.get_num();
}

/// Dominance order by prefix sums, zero-padded; equal weights not required.
inline bool dominates(const Partition& omega, const Partition& bigOmega) {
    int h = std::max(omega.height(), bigOmega.height());
    long a = 0, b = 0;
    for (int t = 0; t < h; ++t) {
        a += omega.part(t);
        b += bigOmega.part(t);
        if (a > b) return false;
    }
    return true;
}

inline bool is_subpartition(const Partition& mu, const Partition& lam) {
    for (int i = 0; i < mu.height(); ++i)
        if (mu.part(i) > lam.part(i)) return false;
    return true;
}

/// Centralizer size of a permutation of cycle type lambda:
/// z_lambda = prod_i i^{m_i} m_i!.
inline Int z_lambda(const Partition& lam) {
    Int z = 1;
    int run = 0;
    for (int i = 0; i < lam.height(); ++i) {
        ++run;
        z *= Int(lam.part(i));
        if (i + 1 == lam.height() || lam.part(i + 1) != lam.part(i)) {
            z *= factorial(run);
            run = 0;
        }
    }
    return z;
}

// Part-wise sum; used by the special-form test lambda = mu + nu.
inline Partition partwise_sum(const Partition& mu, const Partition& nu) {
    int h = std::max(mu.height(), nu.height());
    std::vector<int> parts;
    parts.reserve(static_cast<std::size_t>(h));
    for (int i = 0; i < h; ++i) parts.push_back(mu.part(i) + nu.part(i));
    return Partition(std::move(parts));
}

}  // namespace haarpencil
