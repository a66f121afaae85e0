#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "haarpencil/arith.hpp"
#include "haarpencil/matrix_tuple.hpp"
#include "haarpencil/partition.hpp"

namespace haarpencil {

/// Element of S_n stored as the image array sigma(0..n-1), 0-based.
/// Serialization is 1-based.
class Permutation {
  public:
    Permutation() = default;

    explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
        std::vector<bool> seen(images_.size(), false);
        for (int v : images_) {
            if (v < 0 || v >= static_cast<int>(images_.size()) || seen[static_cast<std::size_t>(v)])
                throw std::invalid_argument("Permutation: images must be a bijection");
            seen[static_cast<std::size_t>(v)] = true;
        }
    }

    static Permutation identity(int n) {
        std::vector<int> im(static_cast<std::size_t>(n));
        std::iota(im.begin(), im.end(), 0);
        return Permutation(std::move(im));
    }

    static Permutation from_one_based(const std::vector<int>& images) {
        std::vector<int> im;
        im.reserve(images.size());
        for (int v : images) im.push_back(v - 1);
        return Permutation(std::move(im));
    }

    /// Parses cycle notation like "(1 2)(3)" on ground set {1..n};
    /// unmentioned points are fixed.
    static Permutation from_cycles(const std::string& text, int n) {
        std::vector<int> im(static_cast<std::size_t>(n));
        std::iota(im.begin(), im.end(), 0);
        std::size_t pos = 0;
        auto skip_ws = [&] { while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos; };
        skip_ws();
        while (pos < text.size()) {
            if (text[pos] != '(')
                throw std::invalid_argument("Permutation: expected '(' in cycle notation at '" +
                                            text.substr(pos) + "'");
            ++pos;
            std::vector<int> cyc;
            while (true) {
                skip_ws();
                if (pos < text.size() && text[pos] == ')') { ++pos; break; }
                std::size_t end = pos;
                while (end < text.size() && (std::isdigit(static_cast<unsigned char>(text[end])))) ++end;
                if (end == pos)
                    throw std::invalid_argument("Permutation: expected digit in cycle notation at '" +
                                                text.substr(pos) + "'");
                int v = std::stoi(text.substr(pos, end - pos));
                if (v < 1 || v > n)
                    throw std::invalid_argument("Permutation: point out of range in cycle notation");
                cyc.push_back(v - 1);
                pos = end;
                skip_ws();
                if (pos < text.size() && text[pos] == ',') ++pos;
            }
            for (std::size_t i = 0; i < cyc.size(); ++i)
                im[static_cast<std::size_t>(cyc[i])] = cyc[(i + 1) % cyc.size()];
            skip_ws();
        }
        return Permutation(std::move(im));
    }

    int size() const { return static_cast<int>(images_.size()); }
    int operator()(int i) const { return images_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& images() const { return images_; }

    std::vector<int> one_based() const {
        std::vector<int> out;
        out.reserve(images_.size());
        for (int v : images_) out.push_back(v + 1);
        return out;
    }

    Permutation inverse() const {
        std::vector<int> inv(images_.size());
        for (int i = 0; i < size(); ++i) inv[static_cast<std::size_t>(images_[static_cast<std::size_t>(i)])] = i;
        return Permutation(std::move(inv));
    }

    // (a*b)(i) = a(b(i))
    friend Permutation operator*(const Permutation& a, const Permutation& b) {
        if (a.size() != b.size())
            throw std::invalid_argument("Permutation: size mismatch in composition");
        std::vector<int> im(a.images_.size());
        for (int i = 0; i < a.size(); ++i) im[static_cast<std::size_t>(i)] = a(b(i));
        return Permutation(std::move(im));
    }

    friend auto operator<=>(const Permutation&, const Permutation&) = default;

    /// Disjoint cycles, each starting at its smallest point, following the
    /// orbit i -> sigma(i).
    std::vector<std::vector<int>> cycles() const {
        std::vector<std::vector<int>> out;
        std::vector<bool> seen(images_.size(), false);
        for (int i = 0; i < size(); ++i) {
            if (seen[static_cast<std::size_t>(i)]) continue;
            std::vector<int> cyc;
            int j = i;
            while (!seen[static_cast<std::size_t>(j)]) {
                seen[static_cast<std::size_t>(j)] = true;
                cyc.push_back(j);
                j = images_[static_cast<std::size_t>(j)];
            }
            out.push_back(std::move(cyc));
        }
        return out;
    }

  private:
    std::vector<int> images_;
};

inline Permutation conjugate(const Permutation& gamma, const Permutation& sigma) {
    return gamma * sigma * gamma.inverse();
}

inline Partition cycle_type(const Permutation& sigma) {
    std::vector<int> lens;
    for (const auto& c : sigma.cycles()) lens.push_back(static_cast<int>(c.size()));
    return Partition::from_multiset(std::move(lens));
}

inline int sign(const Permutation& sigma) {
    int c = static_cast<int>(sigma.cycles().size());
    return ((sigma.size() - c) % 2 == 0) ? 1 : -1;
}

inline int sign(const Partition& rho) {
    return ((rho.weight() - rho.height()) % 2 == 0) ? 1 : -1;
}

/// Multi-index alpha = (alpha_1,...,alpha_g), nonnegative entries.
struct MultiIndex {
    std::vector<int> entries;

    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> e) : entries(std::move(e)) {
        for (int a : entries)
            if (a < 0) throw std::invalid_argument("MultiIndex: entries must be >= 0");
    }

    int g() const { return static_cast<int>(entries.size()); }
    int weight() const { return std::accumulate(entries.begin(), entries.end(), 0); }

    friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
};

/// All multi-indices of weight n with g entries, first entry descending.
inline std::vector<MultiIndex> enumerate_multi_indices(int n, int g) {
    if (n < 0 || g < 1) throw std::invalid_argument("enumerate_multi_indices: need n >= 0, g >= 1");
    std::vector<MultiIndex> out;
    std::vector<int> cur(static_cast<std::size_t>(g), 0);
    auto rec = [&](auto&& self, int pos, int remaining) -> void {
        if (pos == g - 1) {
            cur[static_cast<std::size_t>(pos)] = remaining;
            out.emplace_back(MultiIndex(cur));
            return;
        }
        for (int a = remaining; a >= 0; --a) {
            cur[static_cast<std::size_t>(pos)] = a;
            self(self, pos + 1, remaining - a);
        }
    };
    rec(rec, 0, n);
    return out;
}

// block_color[p] = j when position p falls in the j-th consecutive block.
inline std::vector<int> block_colors(const MultiIndex& alpha) {
    std::vector<int> colors;
    colors.reserve(static_cast<std::size_t>(alpha.weight()));
    for (int j = 0; j < alpha.g(); ++j)
        for (int t = 0; t < alpha.entries[static_cast<std::size_t>(j)]; ++t) colors.push_back(j);
    return colors;
}

inline Int young_subgroup_order(const MultiIndex& alpha) {
    Int r = 1;
    for (int a : alpha.entries) r *= factorial(a);
    return r;
}

namespace detail {

// Applies fn to every element of S_alpha (block-wise permutations of the
// consecutive blocks P_1,...,P_g).
template <typename Fn>
void for_each_young_subgroup_element(const MultiIndex& alpha, Fn&& fn) {
    const int n = alpha.weight();
    std::vector<std::pair<int, int>> blocks;  // [start, len)
    int start = 0;
    for (int a : alpha.entries) {
        blocks.emplace_back(start, a);
        start += a;
    }
    std::vector<std::vector<int>> block_perms(blocks.size());
    auto rec = [&](auto&& self, std::size_t b) -> void {
        if (b == blocks.size()) {
            std::vector<int> im(static_cast<std::size_t>(n));
            for (std::size_t q = 0; q < blocks.size(); ++q) {
                auto [s, len] = blocks[q];
                for (int t = 0; t < len; ++t)
                    im[static_cast<std::size_t>(s + t)] = s + block_perms[q][static_cast<std::size_t>(t)];
            }
            fn(Permutation(std::move(im)));
            return;
        }
        auto [s, len] = blocks[b];
        std::vector<int> local(static_cast<std::size_t>(len));
        std::iota(local.begin(), local.end(), 0);
        do {
            block_perms[b] = local;
            self(self, b + 1);
        } while (std::next_permutation(local.begin(), local.end()));
    };
    rec(rec, 0);
}

}  // namespace detail

inline constexpr long kYoungSubgroupCap = 3628800;  // 10!

inline std::vector<Permutation> young_subgroup_elements(const MultiIndex& alpha,
                                                        long cap = kYoungSubgroupCap) {
    if (young_subgroup_order(alpha) > cap)
        throw std::length_error("young_subgroup_elements: |S_alpha| exceeds cap");
    std::vector<Permutation> out;
    detail::for_each_young_subgroup_element(alpha, [&](Permutation p) { out.push_back(std::move(p)); });
    return out;
}

struct OrbitStabilizer {
    std::vector<Permutation> orbit;
    long stabilizer_size = 0;
};

/// Orbit of sigma under gamma sigma gamma^-1 for gamma in S_alpha, plus the
/// stabilizer size; |orbit| * stab = alpha!.
inline OrbitStabilizer orbit_stabilizer(const Permutation& sigma, const MultiIndex& alpha,
                                        long cap = kYoungSubgroupCap) {
    if (alpha.weight() != sigma.size())
        throw std::invalid_argument("orbit_stabilizer: |alpha| must equal ground-set size");
    if (young_subgroup_order(alpha) > cap)
        throw std::length_error("orbit_stabilizer: |S_alpha| exceeds cap");
    std::set<Permutation> orbit;
    long stab = 0;
    detail::for_each_young_subgroup_element(alpha, [&](const Permutation& gamma) {
        Permutation conj = conjugate(gamma, sigma);
        if (conj == sigma) ++stab;
        orbit.insert(std::move(conj));
    });
    return {{orbit.begin(), orbit.end()}, stab};
}

/// Irreducible character chi_lambda evaluated on cycle type rho, via the
/// Murnaghan-Nakayama border-strip recursion on beta-numbers. Exact, memoized
/// per thread.
inline Int character(const Partition& lam, const Partition& rho) {
    if (lam.weight() != rho.weight())
        throw std::invalid_argument("character: |lambda| must equal |rho|");

    using Key = std::pair<std::vector<int>, std::vector<int>>;
    thread_local std::map<Key, Int> memo;

    auto rec = [&](auto&& self, const std::vector<int>& lparts,
                   const std::vector<int>& rparts) -> Int {
        if (rparts.empty()) return 1;  // empty lambda too, weights agree
        Key key{lparts, rparts};
        if (auto it = memo.find(key); it != memo.end()) return it->second;

        const int r = rparts[0];
        const std::vector<int> rrest(rparts.begin() + 1, rparts.end());
        const int p = static_cast<int>(lparts.size());
        // beta-numbers: strictly decreasing
        std::vector<int> beta(static_cast<std::size_t>(p));
        for (int i = 0; i < p; ++i) beta[static_cast<std::size_t>(i)] = lparts[static_cast<std::size_t>(i)] + (p - 1 - i);

        Int total = 0;
        for (int j = 0; j < p; ++j) {
            const int c = beta[static_cast<std::size_t>(j)] - r;
            if (c < 0) continue;
            bool occupied = false;
            int crossings = 0;
            for (int l = 0; l < p; ++l) {
                if (l == j) continue;
                const int b = beta[static_cast<std::size_t>(l)];
                if (b == c) { occupied = true; break; }
                if (b > c && b < beta[static_cast<std::size_t>(j)]) ++crossings;
            }
            if (occupied) continue;
            std::vector<int> nbeta = beta;
            nbeta[static_cast<std::size_t>(j)] = c;
            std::sort(nbeta.rbegin(), nbeta.rend());
            std::vector<int> nparts;
            for (int i = 0; i < p; ++i) {
                int part = nbeta[static_cast<std::size_t>(i)] - (p - 1 - i);
                if (part > 0) nparts.push_back(part);
            }
            Int sub = self(self, nparts, rrest);
            if (crossings % 2 == 0)
                total += sub;
            else
                total -= sub;
        }
        memo.emplace(std::move(key), total);
        return total;
    };
    return rec(rec, lam.parts(), rho.parts());
}

/// Trace monomial p_{sigma,alpha}(X): product over the cycles of sigma of
/// traces of the matrix words given by the block coloring of alpha. Avoids
/// ever forming the k^n-dimensional tensor representation.
inline Cplx trace_monomial(const Permutation& sigma, const MultiIndex& alpha,
                           const MatrixTuple& x) {
    if (alpha.weight() != sigma.size())
        throw std::invalid_argument("trace_monomial: |alpha| must equal ground-set size");
    if (alpha.g() != x.g())
        throw std::invalid_argument("trace_monomial: alpha and tuple length differ");
    const auto colors = block_colors(alpha);
    const int k = x.k();
    if (k == 1) {
        Cplx prod = 1.0;
        for (std::size_t p = 0; p < colors.size(); ++p)
            prod *= x.mats[static_cast<std::size_t>(colors[p])](0, 0);
        return prod;
    }
    Cplx value = 1.0;
    for (const auto& cyc : sigma.cycles()) {
        Eigen::MatrixXcd word = x.mats[static_cast<std::size_t>(colors[static_cast<std::size_t>(cyc[0])])];
        for (std::size_t t = 1; t < cyc.size(); ++t)
            word = word * x.mats[static_cast<std::size_t>(colors[static_cast<std::size_t>(cyc[t])])];
        value *= word.trace();
    }
    return value;
}

}  // namespace haarpencil
