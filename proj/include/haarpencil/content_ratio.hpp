#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "haarpencil/arith.hpp"
#include "haarpencil/lr.hpp"
#include "haarpencil/partition.hpp"

namespace haarpencil {

/// Content ratio r^lambda_{mu,nu}(d) = C_lambda(d) / (C_mu(d) C_nu(d)),
/// exact. Requires ht(lambda) <= d so every factor is positive.
inline Rat content_ratio(const Partition& lam, const Partition& mu, const Partition& nu,
                         int d) {
    if (lam.height() > d)
        throw std::domain_error("content_ratio: ht(lambda) > d");
    Int den = content_polynomial(mu, d) * content_polynomial(nu, d);
    if (den == 0)
        throw std::domain_error("content_ratio: vanishing denominator (ht(mu) or ht(nu) > d)");
    Rat r(content_polynomial(lam, d));
    r /= Rat(den);
    r.canonicalize();
    return r;
}

/// rows(lambda/mu): the row lengths lambda_i - mu_i sorted descending, zeros
/// dropped.
inline Partition rows_of_skew(const Partition& lam, const Partition& mu) {
    if (!is_subpartition(mu, lam))
        throw std::invalid_argument("rows_of_skew: mu is not a subpartition of lambda");
    std::vector<int> diffs;
    for (int i = 0; i < lam.height(); ++i) diffs.push_back(lam.part(i) - mu.part(i));
    return Partition::from_multiset(std::move(diffs));
}

enum class UpdateVariant { A, B };

/// The two local moves on mu at a row i0 (1-based) where the skew row lengths
/// increase: (A) grow mu_{i0+1} by one, (B) shrink mu_{i0} by one. In both
/// cases nu is re-derived as rows(lambda/mu). At least one move is always
/// feasible at a violating index.
inline std::pair<Partition, Partition> update_step(const Partition& lam, const Partition& mu,
                                                   int i0, UpdateVariant variant) {
    if (!is_subpartition(mu, lam))
        throw std::invalid_argument("update_step: mu is not a subpartition of lambda");
    if (i0 < 1 || i0 >= lam.height())
        throw std::invalid_argument("update_step: i0 out of range");
    const int i = i0 - 1;  // 0-based row
    if (!(lam.part(i) - mu.part(i) < lam.part(i + 1) - mu.part(i + 1)))
        throw std::invalid_argument("update_step: row differences do not increase at i0");

    std::vector<int> parts(static_cast<std::size_t>(lam.height()), 0);
    for (int t = 0; t < lam.height(); ++t) parts[static_cast<std::size_t>(t)] = mu.part(t);
    if (variant == UpdateVariant::A) {
        if (mu.part(i + 1) >= lam.part(i + 1))
            throw std::invalid_argument("update_step: variant A infeasible (mu_{i0+1} = lambda_{i0+1})");
        ++parts[static_cast<std::size_t>(i + 1)];
    } else {
        if (mu.part(i) == 0)
            throw std::invalid_argument("update_step: variant B infeasible (mu_{i0} = 0)");
        --parts[static_cast<std::size_t>(i)];
    }
    Partition mu_hat = Partition::from_multiset(std::move(parts));
    Partition nu_hat = rows_of_skew(lam, mu_hat);
    return {std::move(mu_hat), std::move(nu_hat)};
}

struct RatioReport {
    Partition lambda, mu, nu;
    int d = 1;
    Rat ratio;
    Int bound;           // (n+1)^(k^2)
    bool satisfies = false;
    bool is_special_form = false;  // lambda = mu + nu part-wise
};

/// Exhaustive maximum of the content ratio over all (mu, nu) with nonzero
/// LR coefficient, across every split |mu| + |nu| = |lambda| including the
/// trivial ones. The report's bound field is filled with (n+1)^(k^2) for
/// k = wd(lambda).
inline RatioReport max_ratio_search(const Partition& lam, int d) {
    if (lam.height() > d)
        throw std::domain_error("max_ratio_search: ht(lambda) > d");
    const int n = lam.weight();
    const int k = lam.width();
    RatioReport best;
    bool first = true;
    for (int a1 = 0; a1 <= n; ++a1) {
        for (const auto& term : split_pairs(lam, a1, n - a1)) {
            Rat r = content_ratio(lam, term.mu, term.nu, d);
            if (first || r > best.ratio) {
                first = false;
                best.mu = term.mu;
                best.nu = term.nu;
                best.ratio = r;
            }
        }
    }
    best.lambda = lam;
    best.d = d;
    best.bound = pow_int(Int(n + 1), static_cast<unsigned long>(k) * static_cast<unsigned long>(k));
    best.satisfies = (best.ratio <= Rat(best.bound));
    best.is_special_form = (partwise_sum(best.mu, best.nu) == lam);
    return best;
}

/// One report per admissible (lambda, mu, nu) at the given n, k, d; the
/// contract is that every report satisfies ratio <= (n+1)^(k^2).
inline std::vector<RatioReport> verify_bound(int n, int k, int d) {
    if (!(k >= 1 && k <= n && n <= static_cast<long>(k) * d))
        throw std::invalid_argument("verify_bound: need k <= n <= k*d, d >= 1");
    Int bound = pow_int(Int(n + 1), static_cast<unsigned long>(k) * static_cast<unsigned long>(k));
    std::vector<RatioReport> out;
    for (const auto& lam : enumerate_partitions(n, d, k)) {
        for (int a1 = 0; a1 <= n; ++a1) {
            for (const auto& term : split_pairs(lam, a1, n - a1)) {
                RatioReport rep;
                rep.lambda = lam;
                rep.mu = term.mu;
                rep.nu = term.nu;
                rep.d = d;
                rep.ratio = content_ratio(lam, term.mu, term.nu, d);
                rep.bound = bound;
                rep.satisfies = (rep.ratio <= Rat(bound));
                rep.is_special_form = (partwise_sum(term.mu, term.nu) == lam);
                out.push_back(std::move(rep));
            }
        }
    }
    return out;
}

struct ChainRatioReport {
    Partition lambda;
    std::vector<Partition> mus;
    int d = 1;
    Rat ratio;  // C_lambda(d) / prod C_{mu^i}(d)
    Int bound;  // (n+1)^((g-1) k^2)
    bool satisfies = false;
};

/// g-fold chain variant: for every multi-index alpha of weight n with g
/// entries and every split chain of lambda, checks
/// C_lambda(d) / prod C_{mu^i}(d) <= (n+1)^((g-1) k^2).
inline std::vector<ChainRatioReport> verify_chain_bound(int n, int k, int d, int g) {
    if (!(k >= 1 && k <= n && n <= static_cast<long>(k) * d && g >= 2))
        throw std::invalid_argument("verify_chain_bound: need k <= n <= k*d, g >= 2");
    Int bound = pow_int(Int(n + 1),
                        static_cast<unsigned long>(g - 1) * static_cast<unsigned long>(k) *
                            static_cast<unsigned long>(k));
    std::vector<ChainRatioReport> out;
    for (const auto& lam : enumerate_partitions(n, d, k)) {
        Int clam = content_polynomial(lam, d);
        for (const auto& alpha : enumerate_multi_indices(n, g)) {
            for (const auto& chain : enumerate_split_chains(lam, alpha)) {
                Int den = 1;
                for (const auto& mu : chain.mus) den *= content_polynomial(mu, d);
                ChainRatioReport rep;
                rep.lambda = lam;
                rep.mus = chain.mus;
                rep.d = d;
                rep.ratio = Rat(clam) / Rat(den);
                rep.ratio.canonicalize();
                rep.bound = bound;
                rep.satisfies = (rep.ratio <= Rat(bound));
                out.push_back(std::move(rep));
            }
        }
    }
    return out;
}

}  // namespace haarpencil
