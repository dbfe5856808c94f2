#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <ostream>

#include "charclass/engine.hpp"
#include "charclass/matrix_io.hpp"
#include "charclass/oracle.hpp"

// Command implementations behind the charclass tool. Exit codes:
//   0 success, 1 usage/parse/validation error, 2 degenerate evaluation,
//   3 matrix not in the group, 5 verification failure.

namespace charclass::cli {

enum class Method { Paper, Oracle, Both };

struct EvalRequest {
    Family family = Family::GL;
    int rank = 1;
    std::vector<int> weight;
    Method method = Method::Paper;
    GlVariant variant = GlVariant::Full;
    int t_shift = 0;
    std::uint64_t seed = 0;
    double tol = 1e-8;
    bool fallback = false;
};

inline Family parse_family(const std::string& s) {
    if (s == "gl") return Family::GL;
    if (s == "sl") return Family::SL;
    if (s == "so-odd") return Family::SOOdd;
    if (s == "sp") return Family::Sp;
    if (s == "so-even") return Family::SOEven;
    throw std::invalid_argument("unknown group family: " + s);
}

inline double rel_discrepancy(Complex a, Complex b) {
    return std::abs(a - b) / std::max(1.0, std::abs(b));
}

/// CHARCLASS_MAX_EXP overrides the default exponent cap.
inline EngineConfig engine_config_from_env() {
    EngineConfig cfg;
    if (const char* cap = std::getenv("CHARCLASS_MAX_EXP")) {
        const int v = std::atoi(cap);
        if (v > 0) cfg.exponent_cap = v;
    }
    return cfg;
}

namespace detail {

inline std::vector<Complex> oracle_values(const ComplexMatrix& g, const DominantWeight& lambda) {
    const TorusCoordinates tc = torus_coords(g, lambda.group());
    if (lambda.group().family == Family::SOEven) {
        const auto [chi, chibar] = weyl_char_pair(tc, lambda);
        return {chi, chibar};
    }
    return {weyl_char(tc, lambda)};
}

/// Deterministic dominant weight with entries in [0, max_entry]
/// (last entry signed for the even orthogonal family).
inline std::vector<int> random_dominant_entries(Family family, int rank, Rng& rng,
                                                int max_entry = 6) {
    const int len = (family == Family::GL || family == Family::SL) ? rank + 1 : rank;
    std::vector<int> e(std::size_t(len), 0);
    for (int& v : e) v = rng.uniform_int(0, max_entry);
    std::sort(e.begin(), e.end(), std::greater<int>());
    if (family == Family::SOEven && rng.uniform_int(0, 1) == 1) e.back() = -e.back();
    return e;
}

} // namespace detail

inline int run_eval(const EvalRequest& req, const ComplexMatrix& matrix, std::ostream& os) {
    GroupDescriptor group;
    try {
        group = make_group(req.family, req.rank);
        if (matrix.rows() != group.matrix_dim || matrix.cols() != group.matrix_dim) {
            os << "error: matrix is " << matrix.rows() << "x" << matrix.cols() << " but "
               << family_name(req.family) << " rank " << req.rank << " needs "
               << group.matrix_dim << "x" << group.matrix_dim << "\n";
            return 1;
        }
        const DominantWeight lambda(group, req.weight);
        EngineConfig cfg = engine_config_from_env();
        cfg.pivot_seed = req.seed;

        std::vector<CharacterResult> paper;
        std::vector<Complex> oracle;
        if (req.method != Method::Oracle)
            paper = evaluate_character(matrix, lambda,
                                       {req.variant, req.t_shift, req.fallback}, cfg);
        if (req.method != Method::Paper) oracle = detail::oracle_values(matrix, lambda);

        const char* names[2] = {"value", "value_bar"};
        for (std::size_t i = 0; i < paper.size(); ++i) {
            os << names[i] << " = " << format_complex15(paper[i].value) << "\n";
        }
        if (!paper.empty()) {
            os << "method = " << paper.front().method << "\n";
            if (paper.front().perturbed) {
                os << "perturbed = true\n";
                os << "uncertainty = " << format_sci(paper.front().uncertainty) << "\n";
            } else {
                os << "denom_magnitude = " << format_sci(paper.front().denom_magnitude) << "\n";
                os << "pivot = " << paper.front().pivot_report << "\n";
            }
        }
        const char* onames[2] = {"oracle", "oracle_bar"};
        for (std::size_t i = 0; i < oracle.size(); ++i)
            os << onames[i] << " = " << format_complex15(oracle[i]) << "\n";
        if (req.method == Method::Both) {
            double disc = 0.0;
            for (std::size_t i = 0; i < paper.size(); ++i)
                disc = std::max(disc, rel_discrepancy(paper[i].value, oracle[i]));
            os << "discrepancy = " << format_sci(disc) << "\n";
            if (!(disc <= req.tol)) {
                os << "result: FAIL (tol " << format_sci(req.tol) << ")\n";
                return 5;
            }
        }
        return 0;
    } catch (const NotInGroup& e) {
        os << "error: " << e.what() << "\n";
        return 3;
    } catch (const Degenerate& e) {
        os << "error: " << e.what() << "\n";
        os << "hint: rerun with --fallback to evaluate the limit\n";
        return 2;
    } catch (const DegeneratePersistent& e) {
        os << "error: " << e.what() << "\n";
        return 2;
    } catch (const ExponentCapExceeded& e) {
        os << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        os << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        os << "error: " << e.what() << "\n";
        return 2;
    }
}

inline int run_verify(Family family, int rank, int trials, std::uint64_t seed, double tol,
                      std::ostream& os) {
    if (trials < 1) {
        os << "error: trials must be >= 1\n";
        return 1;
    }
    const GroupDescriptor group = make_group(family, rank);
    os << "verify: group=" << family_name(family) << " rank=" << rank << " trials=" << trials
       << " seed=" << seed << " tol=" << format_sci(tol) << "\n";

    double max_disc = 0.0, max_pf = 0.0;
    int evaluated = 0, skipped = 0;
    for (int trial = 0; trial < trials; ++trial) {
        const std::uint64_t gseed = seed * 1000003ull + std::uint64_t(trial);
        const ComplexMatrix g = sample(group, gseed, 0.5);
        Rng wrng(gseed ^ 0x9e3779b97f4a7c15ull);
        const DominantWeight lambda(group, detail::random_dominant_entries(family, rank, wrng));
        try {
            const auto paper = evaluate_character(g, lambda, {}, engine_config_from_env());
            const auto oracle = detail::oracle_values(g, lambda);
            for (std::size_t i = 0; i < paper.size(); ++i)
                max_disc = std::max(max_disc, rel_discrepancy(paper[i].value, oracle[i]));
            if (family == Family::SOEven) {
                const TorusCoordinates tc = torus_coords(g, group);
                Complex prod(1.0);
                for (const Complex& z : tc.z) prod *= z - Complex(1.0) / z;
                const Complex lhs =
                    cpow(Complex(0.0, 1.0), rank) * pfaffian_q(g - g.inverse(), group);
                max_pf = std::max(max_pf, rel_discrepancy(lhs, prod));
            }
            ++evaluated;
        } catch (const Degenerate&) {
            ++skipped;
        } catch (const PairingAmbiguous&) {
            ++skipped;
        } catch (const NotDiagonalizable&) {
            ++skipped;
        }
    }
    os << "trials: " << trials << "  evaluated: " << evaluated << "  skipped: " << skipped << "\n";
    os << "max_rel_discrepancy = " << format_sci(max_disc) << "\n";
    if (family == Family::SOEven) os << "pfaffian_identity_max = " << format_sci(max_pf) << "\n";
    const bool pass = max_disc <= tol && max_pf <= tol && evaluated > 0;
    os << "result: " << (pass ? "PASS" : "FAIL") << "\n";
    return pass ? 0 : 5;
}

inline int run_dim(Family family, int rank, const std::vector<int>& weight, bool check,
                   std::ostream& os) {
    try {
        const GroupDescriptor group = make_group(family, rank);
        const DominantWeight lambda(group, weight);
        const long long dim = weyl_dim(group, lambda);
        os << "dim = " << dim << "\n";
        if (check) {
            const ComplexMatrix one =
                ComplexMatrix::Identity(group.matrix_dim, group.matrix_dim);
            const auto res = evaluate_character(one, lambda, {GlVariant::Full, 0, true},
                                                engine_config_from_env());
            os << "fallback_value = " << format_complex15(res.front().value) << "\n";
            os << "fallback_discrepancy = "
               << format_sci(std::abs(res.front().value - Complex(double(dim))) /
                             std::max(1.0, double(dim)))
               << "\n";
        }
        return 0;
    } catch (const std::invalid_argument& e) {
        os << "error: " << e.what() << "\n";
        return 1;
    } catch (const DimensionMismatch& e) {
        os << "error: " << e.what() << "\n";
        return 1;
    }
}

inline int run_sample(Family family, int rank, std::uint64_t seed, double scale,
                      std::ostream& os) {
    if (scale < 0.0) {
        os << "error: scale must be >= 0\n";
        return 1;
    }
    os << write_matrix_json(sample(make_group(family, rank), seed, scale));
    return 0;
}

} // namespace charclass::cli
