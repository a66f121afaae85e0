// Test-only brute-force oracles, kept independent of the library code paths
// they are used to check.
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <numeric>
#include <vector>

#include "haarpencil/arith.hpp"
#include "haarpencil/haar_mc.hpp"
#include "haarpencil/matrix_tuple.hpp"
#include "haarpencil/partition.hpp"
#include "haarpencil/symmetric_group.hpp"

namespace oracle {

using haarpencil::Cplx;
using haarpencil::Int;
using haarpencil::Rat;

// Every partition of n, generated naively and sorted descending-lex.
inline std::vector<std::vector<int>> all_partitions(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int rem, int maxp) -> void {
        if (rem == 0) {
            out.push_back(cur);
            return;
        }
        for (int p = std::min(rem, maxp); p >= 1; --p) {
            cur.push_back(p);
            self(self, rem - p, p);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

// Number of semistandard Young tableaux of shape lam with entries in 1..d.
inline long count_ssyt(const haarpencil::Partition& lam, int d) {
    const int h = lam.height();
    std::vector<std::vector<int>> fill(static_cast<std::size_t>(h));
    for (int i = 0; i < h; ++i) fill[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(lam.part(i)), 0);
    long count = 0;
    auto rec = [&](auto&& self, int i, int j) -> void {
        if (i == h) {
            ++count;
            return;
        }
        int ni = i, nj = j + 1;
        if (nj >= lam.part(i)) {
            ni = i + 1;
            nj = 0;
        }
        int lo = 1;
        if (j > 0) lo = std::max(lo, fill[static_cast<std::size_t>(i)][static_cast<std::size_t>(j - 1)]);
        if (i > 0 && j < lam.part(i - 1))
            lo = std::max(lo, fill[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)] + 1);
        for (int v = lo; v <= d; ++v) {
            fill[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
            self(self, ni, nj);
        }
    };
    if (h == 0) return 1;
    rec(rec, 0, 0);
    return count;
}

inline std::vector<haarpencil::Permutation> all_permutations(int n) {
    std::vector<haarpencil::Permutation> out;
    std::vector<int> im(static_cast<std::size_t>(n));
    std::iota(im.begin(), im.end(), 0);
    do {
        out.emplace_back(haarpencil::Permutation{im});
    } while (std::next_permutation(im.begin(), im.end()));
    return out;
}

// Centralizer size of one permutation of the given cycle type, counted
// directly in S_n.
inline long centralizer_size(const haarpencil::Partition& type) {
    const int n = type.weight();
    std::vector<int> im(static_cast<std::size_t>(n));
    int start = 0;
    for (int i = 0; i < type.height(); ++i) {
        int len = type.part(i);
        for (int t = 0; t < len; ++t)
            im[static_cast<std::size_t>(start + t)] = start + (t + 1) % len;
        start += len;
    }
    haarpencil::Permutation sigma{im};
    long count = 0;
    for (const auto& g : all_permutations(n))
        if (g * sigma == sigma * g) ++count;
    return count;
}

// Dense evaluation of tr(rho(sigma^{-1}) o X^{(x) alpha}) on (C^k)^{(x) n};
// feasible only for tiny k, n.
inline Cplx dense_trace_monomial(const haarpencil::Permutation& sigma,
                                 const haarpencil::MultiIndex& alpha,
                                 const haarpencil::MatrixTuple& x) {
    const int n = alpha.weight();
    const int k = x.k();
    long dim = 1;
    for (int i = 0; i < n; ++i) dim *= k;
    const auto colors = haarpencil::block_colors(alpha);

    auto digits = [&](long idx) {
        std::vector<int> m(static_cast<std::size_t>(n));
        for (int pos = n - 1; pos >= 0; --pos) {
            m[static_cast<std::size_t>(pos)] = static_cast<int>(idx % k);
            idx /= k;
        }
        return m;
    };
    auto index_of = [&](const std::vector<int>& m) {
        long idx = 0;
        for (int v : m) idx = idx * k + v;
        return idx;
    };

    // T = X_{c(1)} (x) ... (x) X_{c(n)}
    Eigen::MatrixXcd t = Eigen::MatrixXcd::Ones(1, 1);
    for (int pos = 0; pos < n; ++pos)
        t = haarpencil::kron(t, x.mats[static_cast<std::size_t>(colors[static_cast<std::size_t>(pos)])]);

    // P = rho(sigma^{-1}): e_{m_1 ... m_n} -> e_{m_{sigma(1)} ... m_{sigma(n)}}
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(dim, dim);
    for (long idx = 0; idx < dim; ++idx) {
        auto m = digits(idx);
        std::vector<int> pm(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) pm[static_cast<std::size_t>(i)] = m[static_cast<std::size_t>(sigma(i))];
        p(index_of(pm), idx) = 1.0;
    }
    return (p * t).trace();
}

// Deterministic pseudo-random helpers for property-style tests.
struct Rng {
    haarpencil::SplitMix64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}

    double uniform() { return gen.uniform(); }
    int uniform_int(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(gen.next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    Rat rational(int max_num = 9, int max_den = 9) {
        int num = uniform_int(-max_num, max_num);
        int den = uniform_int(1, max_den);
        Rat q(num, den);
        q.canonicalize();
        return q;
    }
    haarpencil::Partition partition(int n) {
        auto all = all_partitions(n);
        return haarpencil::Partition(all[static_cast<std::size_t>(uniform_int(0, static_cast<int>(all.size()) - 1))]);
    }
    Cplx complex_in_disk(double radius) {
        while (true) {
            double re = (2.0 * uniform() - 1.0) * radius;
            double im = (2.0 * uniform() - 1.0) * radius;
            if (re * re + im * im <= radius * radius) return {re, im};
        }
    }
    haarpencil::MatrixTuple random_tuple(int g, int k, double scale) {
        std::vector<Eigen::MatrixXcd> ms;
        for (int j = 0; j < g; ++j) {
            Eigen::MatrixXcd m(k, k);
            for (int a = 0; a < k; ++a)
                for (int b = 0; b < k; ++b) m(a, b) = complex_in_disk(scale);
            ms.push_back(std::move(m));
        }
        return haarpencil::MatrixTuple(std::move(ms));
    }
};

}  // namespace oracle
