#pragma once

#include <string>
#include <vector>

#include "charclass/matrix.hpp"

namespace charclass {

/// An alternating k-linear form on n x n matrix space, realized as the
/// determinant of functional evaluations: form(A_1..A_k) = det[phi_i(A_j)].
/// Each functional is an n x n coefficient array, phi(A) = sum c .* A.
/// Identity-annihilating specs only hold functionals with phi(1) = 0
/// (off-diagonal entries and diagonal differences).
struct AlternatingFormSpec {
    std::vector<ComplexMatrix> functionals;
    bool identity_annihilating = false;

    int arity() const { return int(functionals.size()); }

    void validate() const {
        if (functionals.empty()) throw DimensionMismatch("form: needs at least one functional");
        const Eigen::Index n = functionals.front().rows();
        for (const auto& f : functionals) {
            if (f.rows() != n || f.cols() != n)
                throw DimensionMismatch("form: functionals must share one square shape");
            if (!(f.cwiseAbs().maxCoeff() > 0.0))
                throw Error("form: functional is identically zero");
            if (identity_annihilating && std::abs(f.diagonal().sum()) > 1e-12)
                throw Error("form: functional does not annihilate the identity");
        }
    }

    /// "(p,q)" for a single-entry functional, "d(p)-d(q)" for a diagonal
    /// difference, "dense" otherwise; comma-joined.
    std::string describe() const {
        std::string out;
        for (const auto& f : functionals) {
            if (!out.empty()) out += ",";
            std::vector<std::pair<int, int>> nz;
            for (Eigen::Index i = 0; i < f.rows(); ++i)
                for (Eigen::Index j = 0; j < f.cols(); ++j)
                    if (f(i, j) != Complex(0.0)) nz.emplace_back(int(i), int(j));
            if (nz.size() == 1) {
                out += "(" + std::to_string(nz[0].first) + "," + std::to_string(nz[0].second) + ")";
            } else if (nz.size() == 2 && nz[0].first == nz[0].second &&
                       nz[1].first == nz[1].second) {
                out += "d(" + std::to_string(nz[0].first) + ")-d(" + std::to_string(nz[1].first) + ")";
            } else {
                out += "dense";
            }
        }
        return out;
    }
};

inline Complex eval_functional(const ComplexMatrix& coeff, const ComplexMatrix& arg) {
    return (coeff.array() * arg.array()).sum();
}

/// det of the k x k matrix with (i,j) entry phi_i(args_j); alternating and
/// multilinear in the arguments by construction.
inline Complex eval_form(const AlternatingFormSpec& form, const std::vector<ComplexMatrix>& args) {
    const int k = form.arity();
    if (int(args.size()) != k)
        throw DimensionMismatch("eval_form: arity " + std::to_string(k) + " but " +
                                std::to_string(args.size()) + " arguments");
    const Eigen::Index n = form.functionals.front().rows();
    for (const auto& a : args)
        if (a.rows() != n || a.cols() != n)
            throw DimensionMismatch("eval_form: argument shape does not match functionals");
    ComplexMatrix f(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) f(i, j) = eval_functional(form.functionals[i], args[j]);
    return f.determinant();
}

struct PivotResult {
    AlternatingFormSpec form;
    double magnitude = 0.0; // |eval_form(form, args)| on the defining args
};

namespace detail {

struct Candidate {
    int p = 0, q = 0;
    bool diag_diff = false;

    Complex apply(const ComplexMatrix& a) const {
        return diag_diff ? a(p, p) - a(q, q) : a(p, q);
    }
    ComplexMatrix materialize(int n) const {
        ComplexMatrix c = ComplexMatrix::Zero(n, n);
        if (diag_diff) {
            c(p, p) = 1.0;
            c(q, q) = -1.0;
        } else {
            c(p, q) = 1.0;
        }
        return c;
    }
};

inline std::vector<Candidate> candidate_functionals(int n, bool identity_annihilating) {
    std::vector<Candidate> out;
    if (identity_annihilating) {
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q)
                if (p != q) out.push_back({p, q, false});
        for (int p = 0; p + 1 < n; ++p) out.push_back({p, p + 1, true});
    } else {
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q) out.push_back({p, q, false});
    }
    return out;
}

} // namespace detail

/// Choose k coordinate functionals making |eval_form| large on `args`,
/// by greedy column-pivoted elimination on the matrix of candidate values
/// (Gram-Schmidt residual pivoting). The seed picks among columns within a
/// factor 2 of the best at each step, so distinct seeds yield independent
/// but comparably conditioned selections.
inline PivotResult pivot_select(const std::vector<ComplexMatrix>& args, int k,
                                bool identity_annihilating, std::uint64_t seed = 0,
                                double degeneracy_threshold = 1e-10) {
    if (k <= 0 || int(args.size()) != k)
        throw DimensionMismatch("pivot_select: need exactly k arguments");
    const Eigen::Index n = args.front().rows();
    for (const auto& a : args) {
        require_square(a, "pivot_select");
        if (a.rows() != n) throw DimensionMismatch("pivot_select: mixed argument dimensions");
    }

    const auto cand = detail::candidate_functionals(int(n), identity_annihilating);
    const int m = int(cand.size());
    Eigen::MatrixXcd work(k, m);
    for (int j = 0; j < k; ++j)
        for (int c = 0; c < m; ++c) work(j, c) = cand[c].apply(args[j]);

    double norm_scale = 1.0;
    for (const auto& a : args) norm_scale *= a.norm();

    Rng rng(seed);
    std::vector<char> used(m, 0);
    std::vector<int> chosen;
    for (int step = 0; step < k; ++step) {
        double rmax = 0.0;
        for (int c = 0; c < m; ++c)
            if (!used[c]) rmax = std::max(rmax, work.col(c).norm());
        if (!(rmax > 0.0))
            throw DegenerateFamily("pivot_select: arguments span a degenerate family");
        std::vector<int> pool;
        for (int c = 0; c < m; ++c)
            if (!used[c] && work.col(c).norm() >= 0.5 * rmax) pool.push_back(c);
        const int c = pool[std::size_t(rng.uniform_int(0, int(pool.size()) - 1))];
        used[c] = 1;
        chosen.push_back(c);
        const Eigen::VectorXcd q = work.col(c) / work.col(c).norm();
        for (int c2 = 0; c2 < m; ++c2)
            if (!used[c2]) work.col(c2) -= q * q.dot(work.col(c2));
    }

    PivotResult out;
    out.form.identity_annihilating = identity_annihilating;
    for (int c : chosen) out.form.functionals.push_back(cand[std::size_t(c)].materialize(int(n)));
    out.magnitude = std::abs(eval_form(out.form, args));
    if (!(out.magnitude >= degeneracy_threshold * norm_scale) || out.magnitude == 0.0)
        throw DegenerateFamily("pivot_select: best determinant " + std::to_string(out.magnitude) +
                               " is below threshold");
    return out;
}

} // namespace charclass
