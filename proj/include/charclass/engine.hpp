#pragma once

#include <functional>
#include <map>
#include <utility>

#include "charclass/forms.hpp"
#include "charclass/groups.hpp"

namespace charclass {

struct EngineConfig {
    int exponent_cap = 32;            // cap on |l_i|; CHARCLASS_MAX_EXP overrides in the CLI
    double membership_tol = 1e-8;
    double degeneracy_threshold = 1e-10;
    double sqrt_condition_bound = 1e6;
    std::uint64_t pivot_seed = 0;
};

struct CharacterResult {
    Complex value{};
    std::string method;
    double denom_magnitude = 0.0; // > 0 whenever perturbed is false
    std::string pivot_report;
    bool perturbed = false;
    double uncertainty = 0.0; // spread across perturbation directions
};

enum class GlVariant { Full, Reduced };

namespace detail {

/// Memoized integer powers of one base matrix.
class PowerCache {
public:
    PowerCache(ComplexMatrix base, int cap) : base_(std::move(base)), cap_(cap) {}

    const ComplexMatrix& get(int k) {
        auto it = memo_.find(k);
        if (it == memo_.end()) it = memo_.emplace(k, mat_power(base_, k, cap_)).first;
        return it->second;
    }

private:
    ComplexMatrix base_;
    int cap_;
    std::map<int, ComplexMatrix> memo_;
};

struct RatioResult {
    Complex value{};
    double denom_magnitude = 0.0;
    std::string pivot_report;
};

/// Pick functionals that maximize the denominator form, reuse them on the
/// numerator, and return the ratio. Degenerate denominators fail closed.
inline RatioResult form_ratio(const std::vector<ComplexMatrix>& num_args,
                              const std::vector<ComplexMatrix>& den_args,
                              bool identity_annihilating, const EngineConfig& cfg) {
    PivotResult pivot;
    try {
        pivot = pivot_select(den_args, int(den_args.size()), identity_annihilating,
                             cfg.pivot_seed, cfg.degeneracy_threshold);
    } catch (const DegenerateFamily& e) {
        throw Degenerate(e.what());
    }
    const Complex den = eval_form(pivot.form, den_args);
    const Complex num = eval_form(pivot.form, num_args);
    return {num / den, std::abs(den), pivot.form.describe()};
}

inline void check_cap(long long twice_exponent, const EngineConfig& cfg, const char* who) {
    if (std::abs(twice_exponent) > 2LL * cfg.exponent_cap)
        throw ExponentCapExceeded(std::string(who) + ": exponent " +
                                  std::to_string(0.5 * double(twice_exponent)) +
                                  " exceeds cap " + std::to_string(cfg.exponent_cap));
}

} // namespace detail

/// chi_lambda(g) for GL_{r+1} as the ratio
///   Omega(g^{l_0+t}, ..., g^{l_r+t}) / Omega(g^{r+t}, ..., g^t),  l_i = lambda_i + r - i.
/// The reduced variant (lambda_r = 0) drops the last argument and divides
///   omega(g^{l_0}, ..., g^{l_{r-1}}) / omega(g^r, ..., g)
/// with identity-annihilating functionals; it has no t freedom.
inline CharacterResult char_gl(const ComplexMatrix& g, const DominantWeight& lambda,
                               int t_shift = 0, GlVariant variant = GlVariant::Full,
                               const EngineConfig& cfg = {}) {
    if (lambda.group().family != Family::GL)
        throw WrongFamily("char_gl: weight is not a general linear weight");
    if (g.rows() != lambda.group().matrix_dim || g.cols() != lambda.group().matrix_dim)
        throw DimensionMismatch("char_gl: matrix dimension does not match group");
    if (t_shift < 0) throw std::invalid_argument("char_gl: t_shift must be >= 0");
    const int r = lambda.group().rank;
    const auto& lam = lambda.entries();

    std::vector<int> num_exp, den_exp;
    bool annihilating = false;
    if (variant == GlVariant::Reduced) {
        if (lam.back() != 0)
            throw std::invalid_argument("char_gl: reduced variant requires lambda_r = 0");
        for (int i = 0; i < r; ++i) num_exp.push_back(lam[std::size_t(i)] + r - i);
        for (int i = 0; i < r; ++i) den_exp.push_back(r - i);
        annihilating = true;
    } else {
        for (int i = 0; i <= r; ++i) num_exp.push_back(lam[std::size_t(i)] + r - i + t_shift);
        for (int i = 0; i <= r; ++i) den_exp.push_back(r - i + t_shift);
    }
    for (int e : num_exp) detail::check_cap(2LL * e, cfg, "char_gl");
    for (int e : den_exp) detail::check_cap(2LL * e, cfg, "char_gl");

    detail::PowerCache pc(g, cfg.exponent_cap);
    std::vector<ComplexMatrix> num_args, den_args;
    for (int e : num_exp) num_args.push_back(pc.get(e));
    for (int e : den_exp) den_args.push_back(pc.get(e));

    const auto ratio = detail::form_ratio(num_args, den_args, annihilating, cfg);
    return {ratio.value, variant == GlVariant::Reduced ? "gl/reduced" : "gl/full",
            ratio.denom_magnitude, ratio.pivot_report, false, 0.0};
}

/// SL character: the canonical representative (lambda_r = 0) evaluated by
/// the GL formula; representative independence is built into the weight.
inline CharacterResult char_sl(const ComplexMatrix& g, const DominantWeight& lambda,
                               const EngineConfig& cfg = {}) {
    if (lambda.group().family != Family::SL)
        throw WrongFamily("char_sl: weight is not a special linear weight");
    if (!is_member(g, lambda.group(), cfg.membership_tol))
        throw NotInGroup("char_sl: matrix is not unimodular");
    const DominantWeight gl_weight(make_group(Family::GL, lambda.group().rank), lambda.entries());
    CharacterResult res = char_gl(g, gl_weight, 0, GlVariant::Full, cfg);
    res.method = "sl";
    return res;
}

/// Odd orthogonal character with a caller-supplied square root of g.
/// All half-integer powers use this one root; the ratio is independent of
/// the branch choice.
inline CharacterResult char_b_with_sqrt(const ComplexMatrix& g, const ComplexMatrix& sqrt_g,
                                        const DominantWeight& lambda,
                                        const EngineConfig& cfg = {}) {
    if (lambda.group().family != Family::SOOdd)
        throw WrongFamily("char_b: weight is not an odd orthogonal weight");
    if (!is_member(g, lambda.group(), cfg.membership_tol))
        throw NotInGroup("char_b: matrix does not preserve the form");
    const int r = lambda.group().rank;
    const auto& lam = lambda.entries();

    std::vector<int> num_twice, den_twice; // twice the half-integer exponents
    for (int a = 0; a < r; ++a) {
        num_twice.push_back(2 * lam[std::size_t(a)] + 2 * (r - a) - 1);
        den_twice.push_back(2 * (r - a) - 1);
    }
    for (int t : num_twice) detail::check_cap(t, cfg, "char_b");

    detail::PowerCache pc(sqrt_g, 2 * cfg.exponent_cap);
    std::vector<ComplexMatrix> num_args, den_args;
    for (int t : num_twice) num_args.push_back(pc.get(t) - pc.get(-t));
    for (int t : den_twice) den_args.push_back(pc.get(t) - pc.get(-t));

    const auto ratio = detail::form_ratio(num_args, den_args, false, cfg);
    return {ratio.value, "so-odd", ratio.denom_magnitude, ratio.pivot_report, false, 0.0};
}

inline CharacterResult char_b(const ComplexMatrix& g, const DominantWeight& lambda,
                              const EngineConfig& cfg = {}) {
    if (lambda.group().family != Family::SOOdd)
        throw WrongFamily("char_b: weight is not an odd orthogonal weight");
    if (!is_member(g, lambda.group(), cfg.membership_tol))
        throw NotInGroup("char_b: matrix does not preserve the form");
    return char_b_with_sqrt(g, principal_sqrt(g, cfg.sqrt_condition_bound), lambda, cfg);
}

/// Symplectic character: ratio of wedges of g^l - g^-l with l = lambda + rho.
inline CharacterResult char_c(const ComplexMatrix& g, const DominantWeight& lambda,
                              const EngineConfig& cfg = {}) {
    if (lambda.group().family != Family::Sp)
        throw WrongFamily("char_c: weight is not a symplectic weight");
    if (!is_member(g, lambda.group(), cfg.membership_tol))
        throw NotInGroup("char_c: matrix does not preserve the form");
    const int r = lambda.group().rank;
    const auto& lam = lambda.entries();

    std::vector<int> num_exp, den_exp;
    for (int a = 0; a < r; ++a) {
        num_exp.push_back(lam[std::size_t(a)] + r - a);
        den_exp.push_back(r - a);
    }
    for (int e : num_exp) detail::check_cap(2LL * e, cfg, "char_c");

    detail::PowerCache pc(g, cfg.exponent_cap);
    std::vector<ComplexMatrix> num_args, den_args;
    for (int e : num_exp) num_args.push_back(pc.get(e) - pc.get(-e));
    for (int e : den_exp) den_args.push_back(pc.get(e) - pc.get(-e));

    const auto ratio = detail::form_ratio(num_args, den_args, false, cfg);
    return {ratio.value, "sp", ratio.denom_magnitude, ratio.pivot_report, false, 0.0};
}

/// Pfaffian of an even orthogonal algebra element with the orientation
/// convention that ordered Q-orthonormal bases of determinant (2i)^r are
/// positive. Per pair the orthonormal vectors are a_j = x_j + y_j and
/// b_j = i(x_j - y_j); their determinant is (-2i)^r, so one sign flip is
/// applied for odd r.
inline Complex pfaffian_q(const ComplexMatrix& a, const GroupDescriptor& group) {
    if (group.family != Family::SOEven)
        throw WrongFamily("pfaffian_q: defined for the even orthogonal family only");
    if (a.rows() != group.matrix_dim || a.cols() != group.matrix_dim)
        throw DimensionMismatch("pfaffian_q: matrix dimension does not match group");
    const ComplexMatrix& j = group.form;
    if ((a.transpose() * j + j * a).norm() > 1e-8 * std::max(1.0, a.norm()))
        throw NotInAlgebra("pfaffian_q: argument is not in the orthogonal Lie algebra");

    ComplexMatrix u = orthonormal_frame(group); // det (-2i)^r
    if (group.rank % 2 == 1) u.col(1) = -u.col(1);

    // u^T J u = 1, so u^{-1} = u^T J; the conjugated operator is skew.
    ComplexMatrix s = u.transpose() * j * a * u;
    s = 0.5 * (s - s.transpose().eval());
    return pfaffian(s);
}

/// Even orthogonal characters: returns (chi_lambda, chi_lambdabar) from
///   S+ = 2 W(g^l + g^-l) / W(g^{r-i} + g^{-(r-i)})          (last arg 2*1)
///   S- = i^r Pf_Q(g - g^-1) W(g^l - g^-l) / W(g^e - g^-e),   e = (r,...,1)
/// with S- = 0 by definition when lambda_r = 0.
inline std::pair<CharacterResult, CharacterResult> char_d(const ComplexMatrix& g,
                                                          const DominantWeight& lambda,
                                                          const EngineConfig& cfg = {}) {
    if (lambda.group().family != Family::SOEven)
        throw WrongFamily("char_d: weight is not an even orthogonal weight");
    if (!is_member(g, lambda.group(), cfg.membership_tol))
        throw NotInGroup("char_d: matrix does not preserve the form");
    const int r = lambda.group().rank;
    const auto& lam = lambda.entries();
    for (int a = 0; a < r; ++a) detail::check_cap(2LL * (lam[std::size_t(a)] + r - 1 - a), cfg, "char_d");

    detail::PowerCache pc(g, cfg.exponent_cap);
    std::vector<ComplexMatrix> nump, denp;
    for (int a = 0; a < r; ++a) {
        const int l = lam[std::size_t(a)] + r - 1 - a;
        const int d = r - 1 - a;
        nump.push_back(pc.get(l) + pc.get(-l));
        denp.push_back(pc.get(d) + pc.get(-d));
    }
    const auto plus = detail::form_ratio(nump, denp, false, cfg);
    const Complex splus = 2.0 * plus.value;

    Complex sminus(0.0);
    double denom_mag = plus.denom_magnitude;
    std::string report = "plus: " + plus.pivot_report;
    if (lam.back() != 0) {
        std::vector<ComplexMatrix> numm, denm;
        for (int a = 0; a < r; ++a) {
            const int l = lam[std::size_t(a)] + r - 1 - a;
            const int e = r - a;
            numm.push_back(pc.get(l) - pc.get(-l));
            denm.push_back(pc.get(e) - pc.get(-e));
        }
        const auto minus = detail::form_ratio(numm, denm, false, cfg);
        const Complex pf = pfaffian_q(g - pc.get(-1), lambda.group());
        sminus = cpow(Complex(0.0, 1.0), r) * pf * minus.value;
        denom_mag = std::min(denom_mag, minus.denom_magnitude);
        report += "; minus: " + minus.pivot_report;
    }

    CharacterResult first{0.5 * (splus + sminus), "so-even", denom_mag, report, false, 0.0};
    CharacterResult second{0.5 * (splus - sminus), "so-even", denom_mag, report, false, 0.0};
    return {first, second};
}

namespace detail {

struct FallbackEstimate {
    Complex value{};
    double spread = 0.0;
    bool ok = false;
};

/// One Richardson ladder: three seeded directions (retries allowed), each
/// extrapolated to eps = 0 through the given nodes, then the componentwise
/// median with the cross-direction spread.
inline FallbackEstimate run_ladder(const ComplexMatrix& g, const GroupDescriptor& group,
                                   const std::function<Complex(const ComplexMatrix&)>& evaluate_at,
                                   std::uint64_t seed, const std::vector<double>& nodes,
                                   const std::vector<double>& weights) {
    std::vector<Complex> values;
    for (std::uint64_t attempt = 0; attempt < 6 && values.size() < 3; ++attempt) {
        Rng rng(seed + attempt);
        const ComplexMatrix x = algebra_element(group, rng);
        try {
            Complex extrapolated(0.0);
            for (std::size_t i = 0; i < nodes.size(); ++i)
                extrapolated += weights[i] * evaluate_at(g * matrix_exp(nodes[i] * x));
            values.push_back(extrapolated);
        } catch (const Degenerate&) {
            continue;
        } catch (const NotDiagonalizable&) {
            continue;
        }
    }
    FallbackEstimate est;
    if (values.size() < 3) return est;
    const auto median3 = [](double a, double b, double c) {
        return std::max(std::min(a, b), std::min(std::max(a, b), c));
    };
    est.value = Complex(median3(values[0].real(), values[1].real(), values[2].real()),
                        median3(values[0].imag(), values[1].imag(), values[2].imag()));
    for (const Complex& v : values) est.spread = std::max(est.spread, std::abs(v - est.value));
    est.ok = est.spread <= 1e-4 * (1.0 + std::abs(est.value));
    return est;
}

} // namespace detail

/// Limit evaluation at degenerate points. First ladder: the small steps
/// eps in {1e-3, 5e-4} with linear extrapolation. Near central elements
/// the denominator determinants degenerate to high order and drown in
/// rounding noise at those steps, so when the small ladder fails its
/// spread gate the evaluation escalates to wider steps 0.4*{1,...,1/8}
/// with cubic extrapolation. The cross-direction spread is the quality
/// gate either way; DegeneratePersistent means both ladders failed it.
inline CharacterResult perturbation_fallback(
    const ComplexMatrix& g, const GroupDescriptor& group,
    const std::function<Complex(const ComplexMatrix&)>& evaluate_at, std::uint64_t seed = 2468) {
    const detail::FallbackEstimate small = detail::run_ladder(
        g, group, evaluate_at, seed, {1e-3, 5e-4}, {-1.0, 2.0});
    if (small.ok) return {small.value, "fallback", 0.0, "perturbed", true, small.spread};

    const detail::FallbackEstimate wide = detail::run_ladder(
        g, group, evaluate_at, seed + 100, {0.4, 0.2, 0.1, 0.05},
        {-1.0 / 21.0, 2.0 / 3.0, -8.0 / 3.0, 64.0 / 21.0});
    if (wide.ok) return {wide.value, "fallback", 0.0, "perturbed", true, wide.spread};
    throw DegeneratePersistent("perturbation_fallback: spread exceeded the gate on both ladders");
}

/// Family dispatch used by the CLI and the verification campaigns.
/// Returns one result, or two for the even orthogonal family. With
/// fallback enabled, Degenerate evaluations are retried through
/// perturbation_fallback (relaxed pivot threshold: the perturbed points
/// sit close to the degenerate locus by construction).
struct EvalOptions {
    GlVariant variant = GlVariant::Full;
    int t_shift = 0;
    bool fallback = false;
};

inline std::vector<CharacterResult> evaluate_character(const ComplexMatrix& g,
                                                       const DominantWeight& lambda,
                                                       const EvalOptions& opts = {},
                                                       const EngineConfig& cfg = {}) {
    const GroupDescriptor& group = lambda.group();
    const auto direct = [&]() -> std::vector<CharacterResult> {
        switch (group.family) {
            case Family::GL:
                return {char_gl(g, lambda, opts.t_shift, opts.variant, cfg)};
            case Family::SL:
                return {char_sl(g, lambda, cfg)};
            case Family::SOOdd:
                return {char_b(g, lambda, cfg)};
            case Family::Sp:
                return {char_c(g, lambda, cfg)};
            case Family::SOEven: {
                auto pr = char_d(g, lambda, cfg);
                return {pr.first, pr.second};
            }
        }
        throw Error("evaluate_character: unreachable");
    };

    try {
        return direct();
    } catch (const Degenerate&) {
        if (!opts.fallback) throw;
    } catch (const NotDiagonalizable&) {
        if (!opts.fallback) throw;
    }

    EngineConfig relaxed = cfg;
    relaxed.degeneracy_threshold = 1e-14;
    std::vector<CharacterResult> out;
    const int components = group.family == Family::SOEven ? 2 : 1;
    for (int comp = 0; comp < components; ++comp) {
        const auto eval_at = [&, comp](const ComplexMatrix& h) -> Complex {
            switch (group.family) {
                case Family::GL:
                    return char_gl(h, lambda, opts.t_shift, opts.variant, relaxed).value;
                case Family::SL:
                    return char_sl(h, lambda, relaxed).value;
                case Family::SOOdd:
                    return char_b(h, lambda, relaxed).value;
                case Family::Sp:
                    return char_c(h, lambda, relaxed).value;
                case Family::SOEven: {
                    auto pr = char_d(h, lambda, relaxed);
                    return comp == 0 ? pr.first.value : pr.second.value;
                }
            }
            throw Error("evaluate_character: unreachable");
        };
        CharacterResult res = perturbation_fallback(g, group, eval_at);
        res.method = std::string(family_name(group.family)) + "+fallback";
        out.push_back(std::move(res));
    }
    return out;
}

} // namespace charclass
