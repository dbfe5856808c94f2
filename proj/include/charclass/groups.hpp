#pragma once

#include <string>
#include <vector>

#include "charclass/linalg.hpp"

namespace charclass {

enum class Family { GL, SL, SOOdd, Sp, SOEven };

inline const char* family_name(Family f) {
    switch (f) {
        case Family::GL: return "gl";
        case Family::SL: return "sl";
        case Family::SOOdd: return "so-odd";
        case Family::Sp: return "sp";
        case Family::SOEven: return "so-even";
    }
    return "?";
}

inline int matrix_dim_for(Family f, int rank) {
    switch (f) {
        case Family::GL:
        case Family::SL: return rank + 1;
        case Family::SOOdd: return 2 * rank + 1;
        case Family::Sp:
        case Family::SOEven: return 2 * rank;
    }
    return 0;
}

/// One of the five classical families with its rank, matrix size and, for
/// SO/Sp, the Gram matrix of the invariant bilinear form in the split basis
/// x1, y1, ..., xr, yr (, z). In that basis the maximal torus is
/// diag(z1, 1/z1, ..., zr, 1/zr (, 1)).
struct GroupDescriptor {
    Family family = Family::GL;
    int rank = 0;
    int matrix_dim = 0;
    ComplexMatrix form; // 0x0 for GL/SL
};

inline GroupDescriptor make_group(Family f, int rank) {
    if (rank < 1) throw std::invalid_argument("make_group: rank must be positive");
    GroupDescriptor g;
    g.family = f;
    g.rank = rank;
    g.matrix_dim = matrix_dim_for(f, rank);
    const int n = g.matrix_dim;
    switch (f) {
        case Family::GL:
        case Family::SL:
            break;
        case Family::SOOdd:
            // Q = x1 y1 + ... + xr yr + z^2, polarized: B(u,v) = (Q(u+v)-Q(u)-Q(v))/2
            g.form = ComplexMatrix::Zero(n, n);
            for (int j = 0; j < rank; ++j) {
                g.form(2 * j, 2 * j + 1) = 0.5;
                g.form(2 * j + 1, 2 * j) = 0.5;
            }
            g.form(n - 1, n - 1) = 1.0;
            break;
        case Family::SOEven:
            g.form = ComplexMatrix::Zero(n, n);
            for (int j = 0; j < rank; ++j) {
                g.form(2 * j, 2 * j + 1) = 0.5;
                g.form(2 * j + 1, 2 * j) = 0.5;
            }
            break;
        case Family::Sp:
            // skew form sum_i (x'_i y''_i - y'_i x''_i)
            g.form = ComplexMatrix::Zero(n, n);
            for (int j = 0; j < rank; ++j) {
                g.form(2 * j, 2 * j + 1) = 1.0;
                g.form(2 * j + 1, 2 * j) = -1.0;
            }
            break;
    }
    return g;
}

/// Highest weight with the family's dominance constraint enforced on
/// construction. SL weights are stored canonicalized with last entry 0;
/// equality of representatives is then plain equality.
class DominantWeight {
public:
    DominantWeight(GroupDescriptor group, std::vector<int> entries)
        : group_(std::move(group)), entries_(std::move(entries)) {
        const int r = group_.rank;
        const std::size_t want = (group_.family == Family::GL || group_.family == Family::SL)
                                     ? std::size_t(r + 1)
                                     : std::size_t(r);
        if (entries_.size() != want)
            throw DimensionMismatch("weight: expected " + std::to_string(want) + " entries, got " +
                                    std::to_string(entries_.size()));
        switch (group_.family) {
            case Family::GL:
                require_nonincreasing();
                break;
            case Family::SL: {
                require_nonincreasing();
                const int last = entries_.back();
                for (int& e : entries_) e -= last;
                break;
            }
            case Family::SOOdd:
            case Family::Sp:
                require_nonincreasing();
                if (entries_.back() < 0)
                    throw std::invalid_argument("weight: last entry must be >= 0 for this family");
                break;
            case Family::SOEven:
                // lambda_1 >= ... >= lambda_{r-1} >= |lambda_r|; no constraint at r = 1
                for (std::size_t i = 0; i + 2 < entries_.size(); ++i)
                    if (entries_[i] < entries_[i + 1])
                        throw std::invalid_argument("weight: entries must be nonincreasing");
                if (entries_.size() >= 2 &&
                    entries_[entries_.size() - 2] < std::abs(entries_.back()))
                    throw std::invalid_argument(
                        "weight: next-to-last entry must dominate |last entry|");
                break;
        }
    }

    const GroupDescriptor& group() const { return group_; }
    const std::vector<int>& entries() const { return entries_; }

    friend bool operator==(const DominantWeight& a, const DominantWeight& b) {
        return a.group_.family == b.group_.family && a.group_.rank == b.group_.rank &&
               a.entries_ == b.entries_;
    }

private:
    void require_nonincreasing() const {
        for (std::size_t i = 0; i + 1 < entries_.size(); ++i)
            if (entries_[i] < entries_[i + 1])
                throw std::invalid_argument("weight: entries must be nonincreasing");
    }

    GroupDescriptor group_;
    std::vector<int> entries_;
};

/// Exponent vectors l = lambda + rho; half-integral only for SO_odd.
struct ExponentVector {
    std::vector<HalfInteger> entries;
};

/// The family's rho, shifted by t_shift*(1,...,1) for GL.
inline ExponentVector rho(const GroupDescriptor& group, int t_shift = 0) {
    if (t_shift < 0) throw std::invalid_argument("rho: t_shift must be >= 0");
    const int r = group.rank;
    ExponentVector out;
    switch (group.family) {
        case Family::GL:
            for (int i = 0; i <= r; ++i) out.entries.push_back(HalfInteger::whole(r - i + t_shift));
            break;
        case Family::SL:
            for (int i = 0; i <= r; ++i) out.entries.push_back(HalfInteger::whole(r - i));
            break;
        case Family::SOOdd:
            // (r - 1/2, ..., 3/2, 1/2)
            for (int i = 1; i <= r; ++i) out.entries.push_back(HalfInteger{2 * (r - i) + 1});
            break;
        case Family::Sp:
            for (int i = 1; i <= r; ++i) out.entries.push_back(HalfInteger::whole(r + 1 - i));
            break;
        case Family::SOEven:
            for (int i = 1; i <= r; ++i) out.entries.push_back(HalfInteger::whole(r - i));
            break;
    }
    return out;
}

inline ExponentVector exponents(const DominantWeight& lambda, int t_shift = 0) {
    ExponentVector out = rho(lambda.group(), t_shift);
    const auto& e = lambda.entries();
    for (std::size_t i = 0; i < e.size(); ++i) out.entries[i].twice += 2 * e[i];
    return out;
}

/// Membership: GL invertible, SL unimodular, SO/Sp preserve the form
/// (and SO additionally det = 1).
inline bool is_member(const ComplexMatrix& g, const GroupDescriptor& group, double tol) {
    if (g.rows() != group.matrix_dim || g.cols() != group.matrix_dim)
        throw DimensionMismatch("is_member: matrix dimension does not match group");
    require_finite(g, "is_member");
    const Complex det = g.determinant();
    switch (group.family) {
        case Family::GL: return std::abs(det) > tol;
        case Family::SL: return std::abs(det - Complex(1.0)) <= tol;
        case Family::SOOdd:
        case Family::SOEven: {
            const double drift = (g.transpose() * group.form * g - group.form).norm();
            return drift <= tol * group.form.norm() && std::abs(det - Complex(1.0)) <= tol;
        }
        case Family::Sp: {
            const double drift = (g.transpose() * group.form * g - group.form).norm();
            return drift <= tol * group.form.norm();
        }
    }
    return false;
}

/// Seeded Lie-algebra element, Frobenius-normalized to 1.
/// GL: arbitrary; SL: traceless; SO/Sp: X^T J + J X = 0.
inline ComplexMatrix algebra_element(const GroupDescriptor& group, Rng& rng) {
    const int n = group.matrix_dim;
    ComplexMatrix b = random_ginibre(rng, n);
    ComplexMatrix x;
    switch (group.family) {
        case Family::GL:
            x = b;
            break;
        case Family::SL:
            x = b - (b.trace() / double(n)) * ComplexMatrix::Identity(n, n);
            break;
        case Family::SOOdd:
        case Family::SOEven:
        case Family::Sp:
            x = b - group.form.inverse() * b.transpose() * group.form;
            break;
    }
    return x / x.norm();
}

/// exp(scale * X) for a seeded algebra element X; lands in the group to
/// machine precision. scale = 0 gives the identity.
inline ComplexMatrix sample(const GroupDescriptor& group, std::uint64_t seed, double scale) {
    if (scale < 0.0) throw std::invalid_argument("sample: scale must be >= 0");
    Rng rng(seed);
    const ComplexMatrix x = algebra_element(group, rng);
    return matrix_exp(scale * x);
}

/// Columns form a B-orthonormal basis of the split space: per hyperbolic
/// pair a_j = x_j + y_j and b_j = i(x_j - y_j), plus the unit z vector for
/// odd dimension. U^T J U = 1.
inline ComplexMatrix orthonormal_frame(const GroupDescriptor& group) {
    if (group.family != Family::SOOdd && group.family != Family::SOEven)
        throw WrongFamily("orthonormal_frame: orthogonal families only");
    const int n = group.matrix_dim;
    const Complex iu(0.0, 1.0);
    ComplexMatrix u = ComplexMatrix::Zero(n, n);
    for (int p = 0; p < group.rank; ++p) {
        u(2 * p, 2 * p) = 1.0;
        u(2 * p + 1, 2 * p) = 1.0;
        u(2 * p, 2 * p + 1) = iu;
        u(2 * p + 1, 2 * p + 1) = -iu;
    }
    if (group.family == Family::SOOdd) u(n - 1, n - 1) = 1.0;
    return u;
}

/// Basis-change plumbing: map an element written in the standard
/// orthonormal convention (g^T g = 1) into the split basis used here.
inline ComplexMatrix from_orthonormal(const ComplexMatrix& g_std, const GroupDescriptor& group) {
    if (g_std.rows() != group.matrix_dim || g_std.cols() != group.matrix_dim)
        throw DimensionMismatch("from_orthonormal: matrix dimension does not match group");
    const ComplexMatrix u = orthonormal_frame(group);
    return u * g_std * u.inverse();
}

/// D-type conjugate: negate the last entry.
inline DominantWeight bar(const DominantWeight& lambda) {
    if (lambda.group().family != Family::SOEven)
        throw WrongFamily("bar: defined for the even orthogonal family only");
    std::vector<int> e = lambda.entries();
    e.back() = -e.back();
    return DominantWeight(lambda.group(), std::move(e));
}

} // namespace charclass
