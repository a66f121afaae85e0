#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "haarpencil/matrix_tuple.hpp"
#include "haarpencil/symmetric_group.hpp"

namespace haarpencil {

/// Counter-based stream: the SplitMix64 finalizer over an incrementing state.
/// Deterministic, splittable by mixing a chunk index into the seed.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // standard complex Gaussian (variance 1 per real component), Box-Muller
    Cplx complex_normal() {
        const double u1 = (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double th = 2.0 * M_PI * u2;
        return {r * std::cos(th), r * std::sin(th)};
    }

    static std::uint64_t mix(std::uint64_t x) {
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
        return x ^ (x >> 31);
    }

  private:
    std::uint64_t state_;
};

inline std::uint64_t derive_subseed(std::uint64_t seed, std::uint64_t chunk_index) {
    return SplitMix64::mix(seed ^ SplitMix64::mix(chunk_index * 0xD1342543DE82EF95ull + 1));
}

/// Haar-distributed d x d unitary: Ginibre matrix, QR factorization, and the
/// diagonal phase correction U = Q diag(R_ii / |R_ii|).
inline Eigen::MatrixXcd sample_haar(int d, SplitMix64& rng) {
    if (d < 1) throw std::invalid_argument("sample_haar: d < 1");
    while (true) {
        Eigen::MatrixXcd z(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) z(i, j) = rng.complex_normal();
        Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
        Eigen::MatrixXcd q = qr.householderQ();
        Eigen::MatrixXcd r = qr.matrixQR();
        bool degenerate = false;
        for (int i = 0; i < d; ++i) {
            const double m = std::abs(r(i, i));
            if (m == 0.0) { degenerate = true; break; }
            q.col(i) *= r(i, i) / m;
        }
        if (!degenerate) return q;
    }
}

/// det(I_{kd} + sum_j X_j (x) U_j) via LU with partial pivoting.
inline Cplx pencil_determinant(const MatrixTuple& x, const std::vector<Eigen::MatrixXcd>& us) {
    if (static_cast<int>(us.size()) != x.g())
        throw std::invalid_argument("pencil_determinant: need one unitary per coefficient");
    const int k = x.k();
    const int d = static_cast<int>(us[0].rows());
    for (const auto& u : us)
        if (u.rows() != d || u.cols() != d)
            throw std::invalid_argument("pencil_determinant: unitaries must share size d");
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(k * d, k * d);
    for (int j = 0; j < x.g(); ++j) a += kron(x.mats[static_cast<std::size_t>(j)], us[static_cast<std::size_t>(j)]);
    return Eigen::PartialPivLU<Eigen::MatrixXcd>(a).determinant();
}

struct MomentEstimate {
    Cplx mean{0.0, 0.0};
    double stderr_ = 0.0;
    long samples = 0;
    std::uint64_t seed = 0;
    int d = 1;
    int g = 1;
};

namespace detail {

struct ChunkStat {
    long count = 0;
    Cplx mean{0.0, 0.0};
    double m2 = 0.0;  // sum |z - mean|^2
};

// One-pass Welford accumulation of a complex sample stream.
inline void welford_push(ChunkStat& s, Cplx z) {
    ++s.count;
    Cplx delta = z - s.mean;
    s.mean += delta / static_cast<double>(s.count);
    s.m2 += (std::conj(delta) * (z - s.mean)).real();
}

inline ChunkStat welford_combine(const ChunkStat& a, const ChunkStat& b) {
    if (a.count == 0) return b;
    if (b.count == 0) return a;
    ChunkStat out;
    out.count = a.count + b.count;
    Cplx delta = b.mean - a.mean;
    out.mean = a.mean + delta * (static_cast<double>(b.count) / out.count);
    out.m2 = a.m2 + b.m2 +
             std::norm(delta) * static_cast<double>(a.count) * static_cast<double>(b.count) /
                 static_cast<double>(out.count);
    return out;
}

/// Chunked Monte Carlo driver. Each chunk runs on its own derived sub-seed and
/// chunk results are combined in index order, so the estimate depends only on
/// (seed, samples, chunk_size), never on the number of workers.
inline MomentEstimate estimate_complex(
    const std::function<Cplx(SplitMix64&)>& sample_one, long samples, std::uint64_t seed,
    long chunk_size, int threads, int d, int g) {
    if (samples < 2) throw std::invalid_argument("estimate: need samples >= 2");
    if (chunk_size < 1) throw std::invalid_argument("estimate: chunk size < 1");
    const long nchunks = (samples + chunk_size - 1) / chunk_size;
    std::vector<ChunkStat> stats(static_cast<std::size_t>(nchunks));

    auto run_chunk = [&](long c) {
        SplitMix64 rng(derive_subseed(seed, static_cast<std::uint64_t>(c)));
        const long lo = c * chunk_size;
        const long hi = std::min(samples, lo + chunk_size);
        ChunkStat st;
        for (long i = lo; i < hi; ++i) welford_push(st, sample_one(rng));
        stats[static_cast<std::size_t>(c)] = st;
    };

    int nthreads = threads > 0 ? threads
                               : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    nthreads = static_cast<int>(std::min<long>(nthreads, nchunks));
    if (nthreads <= 1) {
        for (long c = 0; c < nchunks; ++c) run_chunk(c);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(nthreads));
        for (int t = 0; t < nthreads; ++t)
            pool.emplace_back([&, t] {
                for (long c = t; c < nchunks; c += nthreads) run_chunk(c);
            });
        for (auto& th : pool) th.join();
    }

    ChunkStat total;
    for (const auto& st : stats) total = welford_combine(total, st);

    MomentEstimate est;
    est.mean = total.mean;
    est.stderr_ = std::sqrt(total.m2 / static_cast<double>(total.count - 1) /
                            static_cast<double>(total.count));
    est.samples = total.count;
    est.seed = seed;
    est.d = d;
    est.g = g;
    return est;
}

}  // namespace detail

inline constexpr long kDefaultChunkSize = 65536;

/// Monte Carlo mean of det L_X(U) conj(det L_Y(U)) over i.i.d. Haar g-tuples.
inline MomentEstimate estimate_moment(const MatrixTuple& x, const MatrixTuple& y, int d,
                                      long samples, std::uint64_t seed,
                                      long chunk_size = kDefaultChunkSize, int threads = 0) {
    if (x.g() != y.g()) throw std::invalid_argument("estimate_moment: tuples must share g");
    const int g = x.g();
    auto one = [&x, &y, d, g](SplitMix64& rng) -> Cplx {
        std::vector<Eigen::MatrixXcd> us;
        us.reserve(static_cast<std::size_t>(g));
        for (int j = 0; j < g; ++j) us.push_back(sample_haar(d, rng));
        return pencil_determinant(x, us) * std::conj(pencil_determinant(y, us));
    };
    return detail::estimate_complex(one, samples, seed, chunk_size, threads, d, g);
}

/// Monte Carlo estimate of the trace-pair integral
/// int p_{sigma,alpha}(U) conj(p_{tau,alpha}(U)) dU.
inline MomentEstimate estimate_trace_pair(const Permutation& sigma, const Permutation& tau,
                                          const MultiIndex& alpha, int d, long samples,
                                          std::uint64_t seed,
                                          long chunk_size = kDefaultChunkSize, int threads = 0) {
    if (alpha.weight() != sigma.size() || alpha.weight() != tau.size())
        throw std::invalid_argument("estimate_trace_pair: |alpha| must match sigma, tau");
    const int g = alpha.g();
    auto one = [&sigma, &tau, &alpha, d, g](SplitMix64& rng) -> Cplx {
        std::vector<Eigen::MatrixXcd> us;
        us.reserve(static_cast<std::size_t>(g));
        for (int j = 0; j < g; ++j) us.push_back(sample_haar(d, rng));
        MatrixTuple tup{std::vector<Eigen::MatrixXcd>(us.begin(), us.end())};
        return trace_monomial(sigma, alpha, tup) * std::conj(trace_monomial(tau, alpha, tup));
    };
    return detail::estimate_complex(one, samples, seed, chunk_size, threads, d, g);
}

}  // namespace haarpencil
