#pragma once

#include <map>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "haarpencil/arith.hpp"
#include "haarpencil/partition.hpp"
#include "haarpencil/symmetric_group.hpp"

namespace haarpencil {

/// Littlewood-Richardson coefficient c^lambda_{mu,nu}: the number of
/// skew semistandard tableaux of shape lambda/mu and content nu whose reverse
/// reading word is a lattice word. Returns 0 unless |mu|+|nu| = |lambda| and
/// mu, nu are subpartitions of lambda.
inline Int lr_coefficient(const Partition& lam, const Partition& mu, const Partition& nu) {
    if (mu.weight() + nu.weight() != lam.weight()) return 0;
    if (!is_subpartition(mu, lam) || !is_subpartition(nu, lam)) return 0;
    if (nu.weight() == 0) return (mu == lam) ? Int(1) : Int(0);

    using Key = std::tuple<std::vector<int>, std::vector<int>, std::vector<int>>;
    thread_local std::map<Key, Int> memo;
    Key key{lam.parts(), mu.parts(), nu.parts()};
    if (auto it = memo.find(key); it != memo.end()) return it->second;

    // Cells in reverse reading order: rows top to bottom, right to left.
    struct Cell { int row, col; };
    std::vector<Cell> cells;
    for (int i = 0; i < lam.height(); ++i)
        for (int j = lam.part(i) - 1; j >= mu.part(i); --j) cells.push_back({i, j});

    const int maxv = nu.height();
    std::vector<int> count(static_cast<std::size_t>(maxv) + 1, 0);
    // filling[i][j - mu_i] = entry at cell (i, j)
    std::vector<std::vector<int>> filling(static_cast<std::size_t>(lam.height()));
    for (int i = 0; i < lam.height(); ++i)
        filling[static_cast<std::size_t>(i)].assign(
            static_cast<std::size_t>(lam.part(i) - mu.part(i)), 0);

    auto entry = [&](int i, int j) { return filling[static_cast<std::size_t>(i)][static_cast<std::size_t>(j - mu.part(i))]; };
    auto in_skew = [&](int i, int j) {
        return i >= 0 && i < lam.height() && j >= mu.part(i) && j < lam.part(i);
    };

    long long total = 0;
    auto rec = [&](auto&& self, std::size_t idx) -> void {
        if (idx == cells.size()) {
            ++total;
            return;
        }
        auto [i, j] = cells[idx];
        int lo = 1, hi = maxv;
        if (in_skew(i - 1, j)) lo = std::max(lo, entry(i - 1, j) + 1);  // column strict
        if (j + 1 < lam.part(i)) hi = std::min(hi, entry(i, j + 1));    // row weak
        for (int v = lo; v <= hi; ++v) {
            if (count[static_cast<std::size_t>(v)] >= nu.part(v - 1)) continue;        // content
            if (v > 1 && count[static_cast<std::size_t>(v)] + 1 > count[static_cast<std::size_t>(v - 1)]) continue;  // lattice
            ++count[static_cast<std::size_t>(v)];
            filling[static_cast<std::size_t>(i)][static_cast<std::size_t>(j - mu.part(i))] = v;
            self(self, idx + 1);
            --count[static_cast<std::size_t>(v)];
        }
    };
    rec(rec, 0);

    Int result(static_cast<long>(total));
    memo.emplace(std::move(key), result);
    return result;
}

struct SplitTerm {
    Partition mu;
    Partition nu;
    Int coeff;
};

/// All (mu |- a1, nu |- a2) with c^lambda_{mu,nu} > 0.
inline std::vector<SplitTerm> split_pairs(const Partition& lam, int a1, int a2) {
    if (a1 < 0 || a2 < 0 || a1 + a2 != lam.weight())
        throw std::invalid_argument("split_pairs: a1 + a2 must equal |lambda|");
    std::vector<SplitTerm> out;
    for (const auto& mu : enumerate_partitions(a1, lam.height(), lam.width())) {
        if (!is_subpartition(mu, lam)) continue;
        for (const auto& nu : enumerate_partitions(a2, lam.height(), lam.width())) {
            if (!is_subpartition(nu, lam)) continue;
            Int c = lr_coefficient(lam, mu, nu);
            if (c > 0) out.push_back({mu, nu, std::move(c)});
        }
    }
    return out;
}

/// One term of the iterated restriction of chi_lambda to S_alpha: the chain
/// partitions mu^1 |- alpha_1, ..., mu^g |- alpha_g together with the product
/// of the Littlewood-Richardson coefficients along the chain.
struct SplitChain {
    std::vector<Partition> mus;
    Int coeff;
};

/// Right-nested chain enumeration: split off alpha_1, recurse on the
/// remaining weight.
inline std::vector<SplitChain> enumerate_split_chains(const Partition& lam,
                                                      const MultiIndex& alpha) {
    if (alpha.weight() != lam.weight())
        throw std::invalid_argument("enumerate_split_chains: |alpha| must equal |lambda|");
    const int g = alpha.g();
    if (g == 1) return {{{lam}, Int(1)}};

    std::vector<SplitChain> out;
    const int a1 = alpha.entries[0];
    const int rest = alpha.weight() - a1;
    MultiIndex tail(std::vector<int>(alpha.entries.begin() + 1, alpha.entries.end()));
    for (auto& [mu, nu, c] : split_pairs(lam, a1, rest)) {
        for (auto& sub : enumerate_split_chains(nu, tail)) {
            SplitChain chain;
            chain.coeff = c * sub.coeff;
            chain.mus.reserve(static_cast<std::size_t>(g));
            chain.mus.push_back(mu);
            for (auto& m : sub.mus) chain.mus.push_back(std::move(m));
            out.push_back(std::move(chain));
        }
    }
    return out;
}

/// Sum over split chains of (prod LR coeffs) * (prod chi_{mu^i}(1)) / chi_lambda(1).
/// The splitting rule evaluated at the identity forces this to equal 1.
inline Rat splitting_identity_value(const Partition& lam, const MultiIndex& alpha) {
    Rat total = 0;
    for (const auto& chain : enumerate_split_chains(lam, alpha)) {
        Rat term(chain.coeff);
        for (const auto& mu : chain.mus) term *= Rat(irrep_dimension(mu));
        total += term;
    }
    total /= Rat(irrep_dimension(lam));
    total.canonicalize();
    return total;
}

}  // namespace haarpencil
