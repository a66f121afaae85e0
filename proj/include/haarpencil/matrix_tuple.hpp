#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <vector>

namespace haarpencil {

using Cplx = std::complex<double>;

/// g-tuple of complex k x k coefficient matrices. Scalar tuples are the
/// k = 1 case.
struct MatrixTuple {
    std::vector<Eigen::MatrixXcd> mats;

    MatrixTuple() = default;
    explicit MatrixTuple(std::vector<Eigen::MatrixXcd> ms) : mats(std::move(ms)) {
        if (mats.empty()) throw std::invalid_argument("MatrixTuple: g must be >= 1");
        const auto k = mats[0].rows();
        for (const auto& m : mats)
            if (m.rows() != k || m.cols() != k)
                throw std::invalid_argument("MatrixTuple: matrices must share a square size");
    }

    int g() const { return static_cast<int>(mats.size()); }
    int k() const { return static_cast<int>(mats[0].rows()); }

    static MatrixTuple zero(int g, int k) {
        std::vector<Eigen::MatrixXcd> ms(static_cast<std::size_t>(g),
                                         Eigen::MatrixXcd::Zero(k, k));
        return MatrixTuple(std::move(ms));
    }

    static MatrixTuple from_scalars(const std::vector<Cplx>& x) {
        std::vector<Eigen::MatrixXcd> ms;
        ms.reserve(x.size());
        for (Cplx c : x) ms.push_back(Eigen::MatrixXcd::Constant(1, 1, c));
        return MatrixTuple(std::move(ms));
    }

    // x_j * I_k for each coordinate.
    static MatrixTuple scalar_identity(const std::vector<Cplx>& x, int k) {
        std::vector<Eigen::MatrixXcd> ms;
        ms.reserve(x.size());
        for (Cplx c : x) ms.push_back(c * Eigen::MatrixXcd::Identity(k, k));
        return MatrixTuple(std::move(ms));
    }

    // X_j = diag(x_1^(j), ..., x_k^(j)) from k row vectors in C^g.
    static MatrixTuple diagonal(const std::vector<std::vector<Cplx>>& rows) {
        if (rows.empty()) throw std::invalid_argument("MatrixTuple::diagonal: no rows");
        const std::size_t g = rows[0].size();
        const int k = static_cast<int>(rows.size());
        std::vector<Eigen::MatrixXcd> ms(g, Eigen::MatrixXcd::Zero(k, k));
        for (int l = 0; l < k; ++l) {
            if (rows[static_cast<std::size_t>(l)].size() != g)
                throw std::invalid_argument("MatrixTuple::diagonal: ragged rows");
            for (std::size_t j = 0; j < g; ++j)
                ms[j](l, l) = rows[static_cast<std::size_t>(l)][j];
        }
        return MatrixTuple(std::move(ms));
    }
};

using ScalarTuple = std::vector<Cplx>;

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

}  // namespace haarpencil
