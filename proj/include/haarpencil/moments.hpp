#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "haarpencil/arith.hpp"
#include "haarpencil/lr.hpp"
#include "haarpencil/matrix_tuple.hpp"
#include "haarpencil/partition.hpp"
#include "haarpencil/symmetric_group.hpp"

namespace haarpencil {

using RatScalarTuple = std::vector<RatComplex>;

/// Value of a moment integral. `exact` is set when the inputs were Gaussian
/// rationals; `truncation_error_bound` is set iff the defining sum was
/// truncated below its full length.
struct MomentValue {
    Cplx value{0.0, 0.0};
    std::optional<RatComplex> exact;
    std::optional<double> truncation_error_bound;
    int d = 1;
    int k = 1;
    int g = 1;
};

/// c(d, alpha) = binom(d,n) binom(n,alpha) / prod_j binom(d,alpha_j),
/// exact; 0 when n > d, always in [0,1].
inline Rat c_coefficient(int d, const MultiIndex& alpha) {
    if (d < 1) throw std::invalid_argument("c_coefficient: d < 1");
    const int n = alpha.weight();
    if (n > d) return Rat(0);
    Rat r(binomial(d, n) * multinomial(n, alpha.entries));
    for (int a : alpha.entries) r /= Rat(binomial(d, a));
    r.canonicalize();
    return r;
}

namespace detail {

template <class C>
struct field;

template <>
struct field<Cplx> {
    static Cplx from_rat(const Rat& q) { return {q.get_d(), 0.0}; }
    static Cplx conj(const Cplx& z) { return std::conj(z); }
    static bool is_zero(const Cplx& z) { return z == Cplx(0.0, 0.0); }
    static Cplx pow(Cplx z, unsigned long e) {
        Cplx r{1.0, 0.0};
        while (e) {
            if (e & 1) r *= z;
            z *= z;
            e >>= 1;
        }
        return r;
    }
};

template <>
struct field<RatComplex> {
    static RatComplex from_rat(const Rat& q) { return RatComplex(q); }
    static RatComplex conj(const RatComplex& z) { return z.conj(); }
    static bool is_zero(const RatComplex& z) { return z.re == 0 && z.im == 0; }
    static RatComplex pow(const RatComplex& z, unsigned long e) { return pow_rc(z, e); }
};

// sum_{n=0}^{d} sum_{|alpha|=n} c(d,alpha) binom(n,alpha) z^alpha where
// z_j = x_j conj(y_j). Coordinates with z_j = 0 are dropped up front; this is
// what makes appending degenerate directions a no-op.
template <class C>
C scalar_moment_core(int d, const std::vector<C>& x, const std::vector<C>& y) {
    using F = field<C>;
    if (x.size() != y.size() || x.empty())
        throw std::invalid_argument("scalar_moment: x and y must share a positive length g");
    std::vector<C> z;
    for (std::size_t j = 0; j < x.size(); ++j) {
        C v = x[j] * F::conj(y[j]);
        if (!F::is_zero(v)) z.push_back(std::move(v));
    }
    C total = F::from_rat(Rat(1));  // n = 0 term
    if (z.empty()) return total;
    const int geff = static_cast<int>(z.size());
    for (int n = 1; n <= d; ++n) {
        for (const auto& alpha : enumerate_multi_indices(n, geff)) {
            Rat coeff = c_coefficient(d, alpha) * Rat(multinomial(n, alpha.entries));
            C term = F::from_rat(coeff);
            for (int j = 0; j < geff; ++j)
                if (alpha.entries[static_cast<std::size_t>(j)] > 0)
                    term *= F::pow(z[static_cast<std::size_t>(j)],
                                   static_cast<unsigned long>(alpha.entries[static_cast<std::size_t>(j)]));
            total += term;
        }
    }
    return total;
}

}  // namespace detail

/// Finite-d moment of det L_x * conj(det L_y) for scalar tuples.
inline MomentValue exact_scalar_moment(int d, const ScalarTuple& x, const ScalarTuple& y) {
    if (d < 1) throw std::invalid_argument("exact_scalar_moment: d < 1");
    MomentValue mv;
    mv.value = detail::scalar_moment_core<Cplx>(d, x, y);
    mv.d = d;
    mv.k = 1;
    mv.g = static_cast<int>(x.size());
    return mv;
}

/// Exact-rational variant for Gaussian-rational inputs.
inline MomentValue exact_scalar_moment(int d, const RatScalarTuple& x, const RatScalarTuple& y) {
    if (d < 1) throw std::invalid_argument("exact_scalar_moment: d < 1");
    MomentValue mv;
    mv.exact = detail::scalar_moment_core<RatComplex>(d, x, y);
    mv.value = mv.exact->to_complex();
    mv.d = d;
    mv.k = 1;
    mv.g = static_cast<int>(x.size());
    return mv;
}

inline Cplx inner_product(const ScalarTuple& x, const ScalarTuple& y) {
    if (x.size() != y.size())
        throw std::invalid_argument("inner_product: length mismatch");
    Cplx s = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) s += x[j] * std::conj(y[j]);
    return s;
}

inline double tuple_norm(const ScalarTuple& x) {
    double s = 0.0;
    for (Cplx v : x) s += std::norm(v);
    return std::sqrt(s);
}

/// Large-d limit of the scalar moment: the kernel 1/(1 - <x,y>) on the unit
/// ball of C^g.
inline Cplx scalar_limit(const ScalarTuple& x, const ScalarTuple& y) {
    if (tuple_norm(x) >= 1.0 || tuple_norm(y) >= 1.0)
        throw std::domain_error("scalar_limit: requires ||x||_2 < 1 and ||y||_2 < 1");
    return 1.0 / (1.0 - inner_product(x, y));
}

/// tr(E_alpha o C_{Q_lambda}): the exact rational weight of the lambda-isotypic
/// block after conditional expectation onto the Young subgroup algebra.
/// Zero when ht(lambda) > d.
inline Rat trace_projection_expectation(const Partition& lam, const MultiIndex& alpha, int d) {
    if (lam.weight() != alpha.weight())
        throw std::invalid_argument("trace_projection_expectation: |lambda| must equal |alpha|");
    if (d < 1) throw std::invalid_argument("trace_projection_expectation: d < 1");
    if (lam.height() > d) return Rat(0);
    Rat total = 0;
    const Int s_lam = schur_at_ones(lam, d);
    for (const auto& chain : enumerate_split_chains(lam, alpha)) {
        Rat term(chain.coeff * s_lam);
        for (const auto& mu : chain.mus) {
            Int dim = irrep_dimension(mu);
            term *= Rat(dim * dim);
            term /= Rat(schur_at_ones(mu, d));  // ht(mu) <= ht(lambda) <= d
        }
        total += term;
    }
    total.canonicalize();
    return total;
}

namespace detail {

// The lambda-sum in the identity-coefficient moment: for fixed (n, alpha),
//   sum_{lambda |- n, wd<=k, ht<=d} s_{lambda*}(k)^2
//     sum_{chains} (prod LR) (prod chi_{mu^i}(1) / chi_lambda(1))
//                  C_lambda(d) / prod C_{mu^i}(d).
inline Rat identity_moment_bracket(int n, const MultiIndex& alpha, int k, int d) {
    Rat total = 0;
    for (const auto& lam : enumerate_partitions(n, d, k)) {
        Int s_star = schur_at_ones(conjugate(lam), k);
        Rat lam_term = 0;
        if (alpha.g() == 1) {
            lam_term = 1;  // single-block chain collapses
        } else {
            Int c_lam = content_polynomial(lam, d);
            for (const auto& chain : enumerate_split_chains(lam, alpha)) {
                Rat term(chain.coeff * c_lam);
                for (const auto& mu : chain.mus) {
                    term *= Rat(irrep_dimension(mu));
                    term /= Rat(content_polynomial(mu, d));
                }
                lam_term += term;
            }
            lam_term /= Rat(irrep_dimension(lam));
        }
        total += Rat(s_star * s_star) * lam_term;
    }
    total.canonicalize();
    return total;
}

}  // namespace detail

/// Certified majorant for the truncated tail sum_{n >= first_n} C_k n^{2k^2} r2^n
/// via the geometric ratio bound.
inline double identity_moment_tail_bound(int k, int first_n, double r2, double c_k) {
    if (!(r2 < 1.0))
        throw std::domain_error("identity_moment_tail_bound: requires ||x||_2 < 1");
    if (first_n < 1)
        throw std::invalid_argument("identity_moment_tail_bound: first_n < 1");
    const double p = 2.0 * k * k;
    const double rho = r2 * std::pow((first_n + 1.0) / first_n, p);
    if (!(rho < 1.0))
        throw std::domain_error("identity_moment_tail_bound: ratio majorant >= 1; increase n_max");
    const double a = c_k * std::pow(static_cast<double>(first_n), p) * std::pow(r2, first_n);
    return a / (1.0 - rho);
}

/// Smallest truncation degree whose certified tail bound drops below eps.
inline int identity_moment_certified_nmax(int k, double r2, double eps, int hard_cap = 100000) {
    if (!(r2 < 1.0))
        throw std::domain_error("identity_moment_certified_nmax: requires ||x||_2 < 1");
    for (int n = k; n <= hard_cap; ++n) {
        double rho = r2 * std::pow((n + 2.0) / (n + 1.0), 2.0 * k * k);
        if (!(rho < 1.0)) continue;
        if (identity_moment_tail_bound(k, n + 1, r2, static_cast<double>(k)) < eps) return n;
    }
    throw std::domain_error("identity_moment_certified_nmax: no certifiable degree below cap");
}

namespace detail {

template <class C>
C identity_moment_core(int d, int k, const std::vector<C>& xnorm2, int n_cap) {
    using F = field<C>;
    std::vector<C> p;
    for (const auto& v : xnorm2)
        if (!F::is_zero(v)) p.push_back(v);
    C total = F::from_rat(Rat(1));
    if (p.empty()) return total;
    const int geff = static_cast<int>(p.size());
    for (int n = 1; n <= n_cap; ++n) {
        for (const auto& alpha : enumerate_multi_indices(n, geff)) {
            Rat coeff = Rat(multinomial(n, alpha.entries)) *
                        identity_moment_bracket(n, alpha, k, d);
            C term = F::from_rat(coeff);
            for (int j = 0; j < geff; ++j)
                if (alpha.entries[static_cast<std::size_t>(j)] > 0)
                    term *= F::pow(p[static_cast<std::size_t>(j)],
                                   static_cast<unsigned long>(alpha.entries[static_cast<std::size_t>(j)]));
            total += term;
        }
    }
    return total;
}

inline int resolve_identity_nmax(int d, int k, std::optional<int> n_max) {
    const long full = static_cast<long>(k) * d;
    if (!n_max) {
        if (d > 12)
            throw std::invalid_argument(
                "exact_identity_moment: pass n_max for d > 12 (full sum has k*d terms)");
        return static_cast<int>(full);
    }
    if (*n_max < 0) throw std::invalid_argument("exact_identity_moment: n_max < 0");
    return static_cast<int>(std::min<long>(*n_max, full));
}

}  // namespace detail

/// Identity-coefficient moment: integral of |det(I_k (x) I_d + sum_j x_j I_k (x) U_j)|^2.
/// Combinatorial factors are exact rationals; with `n_max` below the full
/// degree k*d a certified tail bound is attached.
inline MomentValue exact_identity_moment(int d, int k, const ScalarTuple& x,
                                         std::optional<int> n_max = std::nullopt,
                                         double c_k_override = -1.0) {
    if (d < 1 || k < 1) throw std::invalid_argument("exact_identity_moment: d, k >= 1");
    const int cap = detail::resolve_identity_nmax(d, k, n_max);
    const long full = static_cast<long>(k) * d;
    std::vector<Cplx> xn2;
    xn2.reserve(x.size());
    for (Cplx v : x) xn2.emplace_back(std::norm(v), 0.0);
    MomentValue mv;
    mv.value = detail::identity_moment_core<Cplx>(d, k, xn2, cap);
    mv.d = d;
    mv.k = k;
    mv.g = static_cast<int>(x.size());
    if (cap < full) {
        if (cap + 1 <= k)
            throw std::invalid_argument("exact_identity_moment: n_max must be >= k to certify the tail");
        double r2 = 0.0;
        for (Cplx v : x) r2 += std::norm(v);
        const double c_k = (c_k_override > 0.0) ? c_k_override : static_cast<double>(k);
        mv.truncation_error_bound = identity_moment_tail_bound(k, cap + 1, r2, c_k);
    }
    return mv;
}

/// Exact-rational variant for Gaussian-rational inputs; the result is a real
/// rational.
inline MomentValue exact_identity_moment(int d, int k, const RatScalarTuple& x,
                                         std::optional<int> n_max = std::nullopt,
                                         double c_k_override = -1.0) {
    if (d < 1 || k < 1) throw std::invalid_argument("exact_identity_moment: d, k >= 1");
    const int cap = detail::resolve_identity_nmax(d, k, n_max);
    const long full = static_cast<long>(k) * d;
    std::vector<RatComplex> xn2;
    xn2.reserve(x.size());
    for (const auto& v : x) xn2.emplace_back(v.norm2());
    MomentValue mv;
    mv.exact = detail::identity_moment_core<RatComplex>(d, k, xn2, cap);
    mv.value = mv.exact->to_complex();
    mv.d = d;
    mv.k = k;
    mv.g = static_cast<int>(x.size());
    if (cap < full) {
        if (cap + 1 <= k)
            throw std::invalid_argument("exact_identity_moment: n_max must be >= k to certify the tail");
        Rat r2 = 0;
        for (const auto& v : x) r2 += v.norm2();
        const double c_k = (c_k_override > 0.0) ? c_k_override : static_cast<double>(k);
        mv.truncation_error_bound = identity_moment_tail_bound(k, cap + 1, r2.get_d(), c_k);
    }
    return mv;
}

inline constexpr int kHomogeneousCoefficientCap = 8;

/// Degree-n coefficient of the limiting series:
/// (1/n!) sum_{|alpha|=n} binom(n,alpha) sum_{sigma} p_{sigma,alpha}(X) conj(p_{sigma,alpha}(Y)).
inline Cplx homogeneous_coefficient(int n, const MatrixTuple& x, const MatrixTuple& y,
                                    int cap = kHomogeneousCoefficientCap) {
    if (n < 0) throw std::invalid_argument("homogeneous_coefficient: n < 0");
    if (x.g() != y.g())
        throw std::invalid_argument("homogeneous_coefficient: tuples must share g");
    if (n > cap)
        throw std::runtime_error("homogeneous_coefficient: n exceeds configured cap (cost n! per alpha)");
    if (n == 0) return {1.0, 0.0};
    const int g = x.g();

    if (x.k() == 1 && y.k() == 1) {
        // p_{sigma,alpha} = x^alpha for scalars, so the S_n sum is n! x^alpha conj(y)^alpha
        Cplx ip = 0.0;
        for (int j = 0; j < g; ++j) ip += x.mats[static_cast<std::size_t>(j)](0, 0) *
                                          std::conj(y.mats[static_cast<std::size_t>(j)](0, 0));
        return detail::field<Cplx>::pow(ip, static_cast<unsigned long>(n));
    }

    const auto alphas = enumerate_multi_indices(n, g);
    Cplx total = 0.0;
    std::vector<int> images(static_cast<std::size_t>(n));
    std::iota(images.begin(), images.end(), 0);
    do {
        Permutation sigma{images};
        for (const auto& alpha : alphas) {
            Cplx px = trace_monomial(sigma, alpha, x);
            Cplx py = trace_monomial(sigma, alpha, y);
            total += to_double(Rat(multinomial(n, alpha.entries))) * px * std::conj(py);
        }
    } while (std::next_permutation(images.begin(), images.end()));
    total *= 1.0 / to_double(Rat(factorial(n)));
    return total;
}

/// ||sum_j X_j X_j^*||^{1/2}.
inline double row_norm(const MatrixTuple& x) {
    const int k = x.k();
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(k, k);
    for (const auto& m : x.mats) h += m * m.adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    double top = es.eigenvalues().maxCoeff();
    return std::sqrt(std::max(top, 0.0));
}

/// rad(sum_j X_j (x) conj(X_j))^{1/2}, by power iteration on the completely
/// positive map T -> sum_j X_j T X_j^*.
inline double outer_spectral_radius(const MatrixTuple& x, double tol = 1e-10,
                                    int max_iters = 10000) {
    const int k = x.k();
    Eigen::MatrixXcd t = Eigen::MatrixXcd::Identity(k, k);
    t /= t.norm();
    double prev = -1.0;
    for (int it = 0; it < max_iters; ++it) {
        Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(k, k);
        for (const auto& m : x.mats) s += m * t * m.adjoint();
        const double lam = s.norm();
        if (lam == 0.0) return 0.0;  // nilpotent map
        if (std::abs(lam - prev) < tol) return std::sqrt(lam);
        prev = lam;
        t = s / lam;
    }
    throw std::runtime_error("outer_spectral_radius: power iteration did not converge in " +
                             std::to_string(max_iters) + " iterations");
}

/// det(I (x) I - sum_j X_j (x) conj(Y_j))^{-1}: the conjectured large-d limit
/// for matrix coefficient tuples inside the outer-spectral-radius ball.
inline Cplx matrix_limit(const MatrixTuple& x, const MatrixTuple& y) {
    if (x.g() != y.g()) throw std::invalid_argument("matrix_limit: tuples must share g");
    if (outer_spectral_radius(x) >= 1.0 || outer_spectral_radius(y) >= 1.0)
        throw std::domain_error("matrix_limit: requires outer spectral radius < 1");
    const int kk = x.k() * y.k();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(kk, kk);
    for (int j = 0; j < x.g(); ++j)
        m += kron(x.mats[static_cast<std::size_t>(j)], y.mats[static_cast<std::size_t>(j)].conjugate());
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(kk, kk) - m;
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
    Cplx det = lu.determinant();
    if (std::abs(det) < 1e-12)
        throw std::runtime_error("matrix_limit: near-singular determinant");
    return 1.0 / det;
}

/// prod_{l,m} 1/(1 - <x_l, y_m>) for lists of scalar tuples (the diagonal
/// coefficient case written out).
inline Cplx diagonal_limit(const std::vector<ScalarTuple>& xs, const std::vector<ScalarTuple>& ys) {
    if (xs.empty() || ys.empty())
        throw std::invalid_argument("diagonal_limit: empty tuple list");
    for (const auto& x : xs)
        if (tuple_norm(x) >= 1.0) throw std::domain_error("diagonal_limit: ||x_l||_2 >= 1");
    for (const auto& y : ys)
        if (tuple_norm(y) >= 1.0) throw std::domain_error("diagonal_limit: ||y_m||_2 >= 1");
    Cplx prod = 1.0;
    for (const auto& x : xs)
        for (const auto& y : ys) prod *= 1.0 / (1.0 - inner_product(x, y));
    return prod;
}

struct ConicConstants {
    double c0 = 0.0;
    double c1 = 0.0;
};

/// Szego-type constants for a conic pencil x_0 U_0 + sum x_j U_j:
/// the 2k-th moment grows like exp(d k c0 + k^2 c1 + o(1)).
inline ConicConstants conic_constants(Cplx x0, const ScalarTuple& x, int k) {
    if (k < 1) throw std::invalid_argument("conic_constants: k < 1");
    const double a = std::norm(x0);
    double s = 0.0;
    for (Cplx v : x) s += std::norm(v);
    if (!(a > s)) throw std::domain_error("conic_constants: requires |x0|^2 > sum |x_j|^2");
    return {std::log(a), std::log(a / (a - s))};
}

}  // namespace haarpencil
