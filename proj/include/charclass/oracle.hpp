#pragma once

#include <utility>
#include <vector>

#include "charclass/groups.hpp"

namespace charclass {

/// Eigenvalues of g arranged as torus coordinates: all of them for GL/SL,
/// one representative per reciprocal pair for SO/Sp (the extra eigenvalue
/// near 1 is dropped for SO_odd). pairing_residual measures how well the
/// multiset {z_j, 1/z_j (, 1)} reproduces the spectrum.
struct TorusCoordinates {
    std::vector<Complex> z;
    double pairing_residual = 0.0;
};

inline TorusCoordinates torus_coords(const ComplexMatrix& g, const GroupDescriptor& group) {
    if (g.rows() != group.matrix_dim || g.cols() != group.matrix_dim)
        throw DimensionMismatch("torus_coords: matrix dimension does not match group");
    const Eigendecomposition eig = eigenvalues(g);
    TorusCoordinates out;
    if (group.family == Family::GL || group.family == Family::SL) {
        out.z.assign(eig.values.data(), eig.values.data() + eig.values.size());
        return out;
    }

    // Greedy reciprocal pairing: repeatedly take the unused pair whose
    // product is closest to 1. Wrong pairing would silently corrupt the
    // oracle, so ambiguous spectra are rejected instead of guessed.
    const int n = group.matrix_dim;
    const int r = group.rank;
    std::vector<char> used(std::size_t(n), 0);
    std::vector<int> rep(std::size_t(r), 0), partner_of(std::size_t(r), 0);
    double residual = 0.0;
    for (int t = 0; t < r; ++t) {
        int bi = -1, bj = -1;
        double best = std::numeric_limits<double>::infinity();
        for (int i = 0; i < n; ++i) {
            if (used[std::size_t(i)]) continue;
            for (int j = i + 1; j < n; ++j) {
                if (used[std::size_t(j)]) continue;
                const double d = std::abs(eig.values[i] * eig.values[j] - Complex(1.0));
                if (d < best) {
                    best = d;
                    bi = i;
                    bj = j;
                }
            }
        }
        if (bi < 0 || bj < 0) throw PairingAmbiguous("torus_coords: no candidate pair left");
        used[std::size_t(bi)] = used[std::size_t(bj)] = 1;
        const Complex zi = eig.values[bi], zj = eig.values[bj];
        const bool swap = std::abs(zj) > std::abs(zi) ||
                          (std::abs(zj) == std::abs(zi) &&
                           std::make_pair(zj.real(), zj.imag()) >
                               std::make_pair(zi.real(), zi.imag()));
        rep[std::size_t(t)] = swap ? bj : bi;
        partner_of[std::size_t(t)] = swap ? bi : bj;
        const Complex z = eig.values[rep[std::size_t(t)]];
        residual = std::max(residual,
                            std::abs(eig.values[partner_of[std::size_t(t)]] - Complex(1.0) / z));
        out.z.push_back(z);
    }
    if (group.family == Family::SOOdd) {
        for (int i = 0; i < n; ++i)
            if (!used[std::size_t(i)])
                residual = std::max(residual, std::abs(eig.values[i] - Complex(1.0)));
    }
    out.pairing_residual = residual;
    if (residual > 1e-6)
        throw PairingAmbiguous("torus_coords: reciprocal pairing residual " +
                               std::to_string(residual));

    // The even orthogonal Weyl group allows only even numbers of z -> 1/z
    // flips, so the labeling within each pair carries a sign that the other
    // families do not see. Resolve it from the eigenvector frame: scale the
    // partner vectors to B(v, w) = 1/2 (the split-basis pairing); the frame
    // is then B-orthogonal with determinant +-1, and -1 means the labeling
    // differs from a special-orthogonal conjugation by one flip.
    if (group.family == Family::SOEven) {
        // Only the minus part consumes the labeling, and it vanishes (or is
        // irregular) as soon as some z_j = +-1, so orient only clean frames.
        bool needs_orientation = true;
        for (const Complex& z : out.z)
            if (std::abs(z - Complex(1.0) / z) <= 1e-8) needs_orientation = false;
        if (needs_orientation) {
            ComplexMatrix frame(n, n);
            for (int t = 0; t < r; ++t) {
                const ComplexVector v = eig.vectors.col(rep[std::size_t(t)]);
                ComplexVector w = eig.vectors.col(partner_of[std::size_t(t)]);
                const Complex pairing = (v.transpose() * group.form * w)(0, 0);
                if (std::abs(pairing) < 1e-10)
                    throw PairingAmbiguous("torus_coords: eigenvector frame is not hyperbolic");
                w *= Complex(0.5) / pairing;
                frame.col(2 * t) = v;
                frame.col(2 * t + 1) = w;
            }
            const Complex det = frame.determinant();
            if (std::abs(std::abs(det) - 1.0) > 1e-3)
                throw PairingAmbiguous("torus_coords: frame orientation is unreliable");
            if (det.real() < 0.0) out.z.front() = Complex(1.0) / out.z.front();
        }
    }
    return out;
}

namespace detail {

/// det with a crude regularity gate: reject when the determinant is
/// negligible against the Hadamard bound of its columns.
inline Complex guarded_det(const Eigen::MatrixXcd& m, const char* who) {
    double hadamard = 1.0;
    for (Eigen::Index j = 0; j < m.cols(); ++j) hadamard *= m.col(j).norm();
    const Complex d = m.determinant();
    if (!(std::abs(d) > 1e-12 * hadamard))
        throw IrregularElement(std::string(who) + ": denominator determinant vanishes");
    return d;
}

/// Both halves of the even-orthogonal torus formula:
/// S+ = chi_lambda + chi_lambdabar, S- = chi_lambda - chi_lambdabar.
inline std::pair<Complex, Complex> so_even_torus_parts(const std::vector<Complex>& z,
                                                       const std::vector<int>& lam) {
    const int r = int(z.size());
    Eigen::MatrixXcd num(r, r), den(r, r);
    for (int a = 0; a < r; ++a) {
        const long long l = lam[std::size_t(a)] + (r - 1 - a);
        const long long d = r - 1 - a;
        for (int j = 0; j < r; ++j) {
            num(a, j) = cpow(z[std::size_t(j)], l) + cpow(z[std::size_t(j)], -l);
            den(a, j) = cpow(z[std::size_t(j)], d) + cpow(z[std::size_t(j)], -d);
        }
    }
    const Complex splus = 2.0 * num.determinant() / guarded_det(den, "weyl_char[so-even]");

    Complex sminus(0.0);
    if (lam.back() != 0) {
        Eigen::MatrixXcd numm(r, r), denm(r, r);
        for (int a = 0; a < r; ++a) {
            const long long l = lam[std::size_t(a)] + (r - 1 - a);
            const long long e = r - a;
            for (int j = 0; j < r; ++j) {
                numm(a, j) = cpow(z[std::size_t(j)], l) - cpow(z[std::size_t(j)], -l);
                denm(a, j) = cpow(z[std::size_t(j)], e) - cpow(z[std::size_t(j)], -e);
            }
        }
        Complex lead(1.0);
        for (const Complex& zj : z) lead *= zj - Complex(1.0) / zj;
        sminus = lead * numm.determinant() / guarded_det(denm, "weyl_char[so-even]");
    }
    return {splus, sminus};
}

} // namespace detail

/// Weyl character formula in torus coordinates; for the even orthogonal
/// family this returns the pair (chi_lambda, chi_lambdabar).
inline std::pair<Complex, Complex> weyl_char_pair(const TorusCoordinates& tc,
                                                  const DominantWeight& lambda) {
    if (lambda.group().family != Family::SOEven)
        throw WrongFamily("weyl_char_pair: defined for the even orthogonal family only");
    if (int(tc.z.size()) != lambda.group().rank)
        throw DimensionMismatch("weyl_char_pair: torus coordinate count");
    const auto [sp, sm] = detail::so_even_torus_parts(tc.z, lambda.entries());
    return {0.5 * (sp + sm), 0.5 * (sp - sm)};
}

inline Complex weyl_char(const TorusCoordinates& tc, const DominantWeight& lambda) {
    const GroupDescriptor& group = lambda.group();
    const int r = group.rank;
    const auto& lam = lambda.entries();
    switch (group.family) {
        case Family::GL:
        case Family::SL: {
            if (int(tc.z.size()) != r + 1)
                throw DimensionMismatch("weyl_char: torus coordinate count");
            Eigen::MatrixXcd num(r + 1, r + 1), den(r + 1, r + 1);
            for (int i = 0; i <= r; ++i) {
                const long long l = lam[std::size_t(i)] + (r - i);
                if (l < 0)
                    for (const Complex& zj : tc.z)
                        if (!(std::abs(zj) > 0.0))
                            throw IrregularElement("weyl_char: negative power of zero eigenvalue");
                for (int j = 0; j <= r; ++j) {
                    num(i, j) = cpow(tc.z[std::size_t(j)], l);
                    den(i, j) = cpow(tc.z[std::size_t(j)], r - i);
                }
            }
            return num.determinant() / detail::guarded_det(den, "weyl_char[gl]");
        }
        case Family::SOOdd: {
            if (int(tc.z.size()) != r) throw DimensionMismatch("weyl_char: torus coordinate count");
            std::vector<Complex> w(tc.z.size());
            for (std::size_t j = 0; j < tc.z.size(); ++j) w[j] = std::sqrt(tc.z[j]);
            Eigen::MatrixXcd num(r, r), den(r, r);
            for (int a = 0; a < r; ++a) {
                const long long lt = 2LL * lam[std::size_t(a)] + 2LL * (r - a) - 1; // twice l_i
                const long long dt = 2LL * (r - a) - 1;                              // twice rho_i
                for (int j = 0; j < r; ++j) {
                    num(a, j) = cpow(w[std::size_t(j)], lt) - cpow(w[std::size_t(j)], -lt);
                    den(a, j) = cpow(w[std::size_t(j)], dt) - cpow(w[std::size_t(j)], -dt);
                }
            }
            return num.determinant() / detail::guarded_det(den, "weyl_char[so-odd]");
        }
        case Family::Sp: {
            if (int(tc.z.size()) != r) throw DimensionMismatch("weyl_char: torus coordinate count");
            Eigen::MatrixXcd num(r, r), den(r, r);
            for (int a = 0; a < r; ++a) {
                const long long l = lam[std::size_t(a)] + (r - a);
                const long long d = r - a;
                for (int j = 0; j < r; ++j) {
                    num(a, j) = cpow(tc.z[std::size_t(j)], l) - cpow(tc.z[std::size_t(j)], -l);
                    den(a, j) = cpow(tc.z[std::size_t(j)], d) - cpow(tc.z[std::size_t(j)], -d);
                }
            }
            return num.determinant() / detail::guarded_det(den, "weyl_char[sp]");
        }
        case Family::SOEven:
            return weyl_char_pair(tc, lambda).first;
    }
    throw Error("weyl_char: unreachable");
}

/// Schur value from power sums via Newton's identities and the
/// Jacobi-Trudi determinant det(h_{lambda_i - i + j}).
/// power_sums[k-1] must hold tr g^k for k = 1 .. at least lambda_0 + r.
inline Complex schur_jt(const std::vector<Complex>& power_sums, const DominantWeight& lambda) {
    if (lambda.group().family != Family::GL && lambda.group().family != Family::SL)
        throw WrongFamily("schur_jt: general/special linear weights only");
    const auto& lam = lambda.entries();
    if (lam.back() < 0) throw std::invalid_argument("schur_jt: needs lambda_r >= 0");
    const int r = lambda.group().rank;
    const int need = lam.front() + r;
    if (int(power_sums.size()) < need)
        throw InsufficientPowerSums("schur_jt: need power sums up to " + std::to_string(need));

    // complete homogeneous h_m, Kahan-compensated accumulation
    std::vector<Complex> h(std::size_t(need) + 1);
    h[0] = Complex(1.0);
    for (int m = 1; m <= need; ++m) {
        Complex sum(0.0), comp(0.0);
        for (int i = 1; i <= m; ++i) {
            const Complex y = power_sums[std::size_t(i - 1)] * h[std::size_t(m - i)] - comp;
            const Complex t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        h[std::size_t(m)] = sum / double(m);
    }

    Eigen::MatrixXcd jt(r + 1, r + 1);
    for (int i = 0; i <= r; ++i)
        for (int j = 0; j <= r; ++j) {
            const int idx = lam[std::size_t(i)] - i + j;
            jt(i, j) = (idx < 0) ? Complex(0.0) : h[std::size_t(idx)];
        }
    return jt.determinant();
}

/// Trace of the m-th symmetric power of a 2x2 matrix, built explicitly on
/// the monomial basis e1^a e2^(m-a).
inline Complex sym_power_trace_2x2(const ComplexMatrix& g, int m) {
    if (g.rows() != 2 || g.cols() != 2) throw DimensionMismatch("sym_power_trace_2x2: 2x2 only");
    if (m < 0) throw std::invalid_argument("sym_power_trace_2x2: power must be >= 0");
    const Complex a = g(0, 0), c = g(1, 0), b = g(0, 1), d = g(1, 1);

    // coefficients of (a X + c Y)^p by iterated convolution
    const auto expand = [](Complex x, Complex y, int p) {
        std::vector<Complex> coef{Complex(1.0)};
        for (int t = 0; t < p; ++t) {
            std::vector<Complex> next(coef.size() + 1, Complex(0.0));
            for (std::size_t i = 0; i < coef.size(); ++i) {
                next[i + 1] += x * coef[i];
                next[i] += y * coef[i];
            }
            coef = std::move(next);
        }
        return coef; // coef[i] multiplies X^i Y^(p-i)
    };

    ComplexMatrix sym = ComplexMatrix::Zero(m + 1, m + 1);
    for (int col = 0; col <= m; ++col) {
        const auto p1 = expand(a, c, col);
        const auto p2 = expand(b, d, m - col);
        for (int i = 0; i <= col; ++i)
            for (int j = 0; j <= m - col; ++j) sym(i + j, col) += p1[std::size_t(i)] * p2[std::size_t(j)];
    }
    return sym.trace();
}

/// Weyl dimension formula: product over positive roots of
/// <lambda + rho, alpha> / <rho, alpha>, rounded to the nearest integer.
inline long long weyl_dim(const GroupDescriptor& group, const DominantWeight& lambda) {
    const int r = group.rank;
    const auto& lam = lambda.entries();
    double prod = 1.0;
    switch (group.family) {
        case Family::GL:
        case Family::SL: {
            std::vector<long long> l(std::size_t(r) + 1);
            for (int i = 0; i <= r; ++i) l[std::size_t(i)] = lam[std::size_t(i)] + (r - i);
            for (int i = 0; i <= r; ++i)
                for (int j = i + 1; j <= r; ++j)
                    prod *= double(l[std::size_t(i)] - l[std::size_t(j)]) / double(j - i);
            break;
        }
        case Family::SOOdd: {
            // roots e_i +- e_j and e_i; twice-integer arithmetic
            std::vector<long long> lt(std::size_t(r), 0), rt(std::size_t(r), 0);
            for (int a = 0; a < r; ++a) {
                lt[std::size_t(a)] = 2LL * lam[std::size_t(a)] + 2LL * (r - a) - 1;
                rt[std::size_t(a)] = 2LL * (r - a) - 1;
            }
            for (int i = 0; i < r; ++i)
                for (int j = i + 1; j < r; ++j)
                    prod *= double(lt[std::size_t(i)] * lt[std::size_t(i)] -
                                   lt[std::size_t(j)] * lt[std::size_t(j)]) /
                            double(rt[std::size_t(i)] * rt[std::size_t(i)] -
                                   rt[std::size_t(j)] * rt[std::size_t(j)]);
            for (int i = 0; i < r; ++i) prod *= double(lt[std::size_t(i)]) / double(rt[std::size_t(i)]);
            break;
        }
        case Family::Sp: {
            std::vector<long long> l(std::size_t(r), 0), rh(std::size_t(r), 0);
            for (int a = 0; a < r; ++a) {
                l[std::size_t(a)] = lam[std::size_t(a)] + (r - a);
                rh[std::size_t(a)] = r - a;
            }
            for (int i = 0; i < r; ++i)
                for (int j = i + 1; j < r; ++j)
                    prod *= double(l[std::size_t(i)] * l[std::size_t(i)] -
                                   l[std::size_t(j)] * l[std::size_t(j)]) /
                            double(rh[std::size_t(i)] * rh[std::size_t(i)] -
                                   rh[std::size_t(j)] * rh[std::size_t(j)]);
            for (int i = 0; i < r; ++i) prod *= double(l[std::size_t(i)]) / double(rh[std::size_t(i)]);
            break;
        }
        case Family::SOEven: {
            std::vector<long long> l(std::size_t(r), 0), rh(std::size_t(r), 0);
            for (int a = 0; a < r; ++a) {
                l[std::size_t(a)] = lam[std::size_t(a)] + (r - 1 - a);
                rh[std::size_t(a)] = r - 1 - a;
            }
            for (int i = 0; i < r; ++i)
                for (int j = i + 1; j < r; ++j)
                    prod *= double(l[std::size_t(i)] * l[std::size_t(i)] -
                                   l[std::size_t(j)] * l[std::size_t(j)]) /
                            double(rh[std::size_t(i)] * rh[std::size_t(i)] -
                                   rh[std::size_t(j)] * rh[std::size_t(j)]);
            break;
        }
    }
    const long long rounded = std::llround(prod);
    if (std::abs(prod - double(rounded)) > 1e-6 * std::max(1.0, std::abs(prod)))
        throw Error("weyl_dim: product did not round to an integer");
    return rounded;
}

} // namespace charclass
