#pragma once

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <limits>

#include "charclass/matrix.hpp"

namespace charclass {

/// Right eigenvectors with a condition estimate for the eigenvector matrix.
/// A large condition flags (near-)defective input; callers that need a
/// spectral decomposition must check it.
struct Eigendecomposition {
    ComplexVector values;
    ComplexMatrix vectors;
    double condition = 0.0; // sigma_max / sigma_min of `vectors`
};

inline Eigendecomposition eigenvalues(const ComplexMatrix& g) {
    require_square(g, "eigenvalues");
    require_finite(g, "eigenvalues");
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(g, /*computeEigenvectors=*/true);
    if (solver.info() != Eigen::Success)
        throw ConvergenceFailure("eigenvalues: Schur iteration did not converge");
    Eigendecomposition out;
    out.values = solver.eigenvalues();
    out.vectors = solver.eigenvectors();
    Eigen::JacobiSVD<ComplexMatrix> svd(out.vectors);
    const double smax = svd.singularValues().maxCoeff();
    const double smin = svd.singularValues().minCoeff();
    out.condition = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
    return out;
}

/// g^k by repeated squaring; g^0 = 1. Negative powers invert first and
/// require the smallest singular value to clear 1e-12 * ||g||.
inline ComplexMatrix mat_power(const ComplexMatrix& g, int k, int cap = 64) {
    require_square(g, "mat_power");
    require_finite(g, "mat_power");
    if (std::abs(k) > cap)
        throw ExponentCapExceeded("mat_power: |" + std::to_string(k) + "| exceeds cap " +
                                  std::to_string(cap));
    const Eigen::Index n = g.rows();
    ComplexMatrix result = ComplexMatrix::Identity(n, n);
    if (k == 0) return result;

    ComplexMatrix base = g;
    if (k < 0) {
        Eigen::JacobiSVD<ComplexMatrix> svd(g);
        const double smax = svd.singularValues().maxCoeff();
        const double smin = svd.singularValues().minCoeff();
        if (!(smin > 1e-12 * smax))
            throw SingularMatrix("mat_power: negative power of a numerically singular matrix");
        base = g.inverse();
    }

    unsigned e = unsigned(std::abs(k));
    while (e > 0) {
        if (e & 1u) result = result * base;
        e >>= 1u;
        if (e > 0) base = base * base;
    }
    return result;
}

/// Square root through the eigendecomposition, principal branch per
/// eigenvalue (argument in (-pi/2, pi/2]). One root must be computed per
/// evaluation and reused for every half-integer exponent.
inline ComplexMatrix principal_sqrt(const ComplexMatrix& g, double condition_bound = 1e6) {
    const Eigendecomposition eig = eigenvalues(g);
    if (!(eig.condition <= condition_bound))
        throw NotDiagonalizable("principal_sqrt: eigenvector condition " +
                                std::to_string(eig.condition) + " exceeds bound");
    const double vmax = eig.values.cwiseAbs().maxCoeff();
    ComplexVector roots(eig.values.size());
    for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
        if (!(std::abs(eig.values[i]) > 1e-14 * vmax))
            throw SingularMatrix("principal_sqrt: zero eigenvalue");
        roots[i] = std::sqrt(eig.values[i]);
    }
    const ComplexMatrix vinv = eig.vectors.inverse();
    return eig.vectors * roots.asDiagonal() * vinv;
}

/// s^(2e) for a chosen square root s of g and half-integer exponent e.
inline ComplexMatrix half_power(const ComplexMatrix& sqrt_g, HalfInteger e, int cap = 64) {
    return mat_power(sqrt_g, e.twice, cap);
}

/// Pfaffian by Parlett-Reid skew elimination with pivoting.
/// Pf([[0, a], [-a, 0]]) = a, and pfaffian(S)^2 = det(S).
inline Complex pfaffian(const ComplexMatrix& s_in) {
    require_square(s_in, "pfaffian");
    require_finite(s_in, "pfaffian");
    const int n = int(s_in.rows());
    if (n % 2 != 0) throw OddDimension("pfaffian: dimension must be even");
    if (n == 0) return Complex(1.0);
    const double nrm = s_in.norm();
    if ((s_in + s_in.transpose()).norm() > 1e-9 * nrm)
        throw NotSkew("pfaffian: matrix is not skew-symmetric");

    ComplexMatrix m = s_in;
    Complex result(1.0);
    for (int k = 0; k + 1 < n; k += 2) {
        int kp = k + 1;
        for (int i = k + 2; i < n; ++i)
            if (std::abs(m(i, k)) > std::abs(m(kp, k))) kp = i;
        if (kp != k + 1) {
            m.row(k + 1).swap(m.row(kp));
            m.col(k + 1).swap(m.col(kp));
            result = -result;
        }
        const Complex pivot = m(k, k + 1);
        if (pivot == Complex(0.0)) return Complex(0.0);
        result *= pivot;
        for (int i = k + 2; i < n; ++i) {
            const Complex tau_i = m(k, i) / pivot;
            for (int j = k + 2; j < n; ++j)
                m(i, j) += tau_i * m(j, k + 1) - (m(k, j) / pivot) * m(i, k + 1);
        }
    }
    return result;
}

/// exp(x); scaling-and-squaring Pade via Eigen's matrix functions.
inline ComplexMatrix matrix_exp(const ComplexMatrix& x) {
    require_square(x, "matrix_exp");
    require_finite(x, "matrix_exp");
    return x.exp();
}

} // namespace charclass
