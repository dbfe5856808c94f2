#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

#include "charclass/errors.hpp"

namespace charclass {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Half-integers (exponents in Z + 1/2) are stored as twice their value.
struct HalfInteger {
    int twice = 0;

    HalfInteger() = default;
    explicit HalfInteger(int t) : twice(t) {}
    static HalfInteger whole(int k) { return HalfInteger{2 * k}; }

    bool integral() const { return twice % 2 == 0; }
    double value() const { return 0.5 * twice; }
    HalfInteger operator-() const { return HalfInteger{-twice}; }

    friend bool operator==(const HalfInteger&, const HalfInteger&) = default;
    friend auto operator<=>(const HalfInteger& a, const HalfInteger& b) { return a.twice <=> b.twice; }
};

inline void require_square(const ComplexMatrix& g, const char* who) {
    if (g.rows() != g.cols())
        throw DimensionMismatch(std::string(who) + ": matrix must be square");
}

inline void require_finite(const ComplexMatrix& g, const char* who) {
    if (!g.allFinite())
        throw Error(std::string(who) + ": matrix has non-finite entries");
}

/// Integer power of a complex scalar by repeated squaring.
inline Complex cpow(Complex z, long long k) {
    if (k < 0) return Complex(1.0) / cpow(z, -k);
    Complex r(1.0), b = z;
    while (k > 0) {
        if (k & 1) r *= b;
        b *= b;
        k >>= 1;
    }
    return r;
}

/// Seeded random source. Gaussians come from Box-Muller on the raw
/// mt19937_64 stream, so sequences are identical across standard libraries
/// (std::normal_distribution is not pinned by the standard).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    /// Uniform in (0, 1].
    double uniform() { return (double(state_() >> 11) + 1.0) * 0x1.0p-53; }

    double gaussian() {
        const double u = uniform(), v = uniform();
        return std::sqrt(-2.0 * std::log(u)) * std::cos(two_pi * v);
    }

    /// Standard complex gaussian, E|z|^2 = 1.
    Complex complex_gaussian() {
        const double u = uniform(), v = uniform();
        const double r = std::sqrt(-std::log(u));
        return {r * std::cos(two_pi * v), r * std::sin(two_pi * v)};
    }

    /// Uniform integer in [lo, hi].
    int uniform_int(int lo, int hi) {
        return lo + int(state_() % std::uint64_t(hi - lo + 1));
    }

private:
    static constexpr double two_pi = 6.283185307179586476925287;
    std::mt19937_64 state_;
};

/// n x n matrix of iid standard complex gaussians.
inline ComplexMatrix random_ginibre(Rng& rng, int n) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = rng.complex_gaussian();
    return m;
}

} // namespace charclass
