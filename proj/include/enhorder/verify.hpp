#pragma once

// Theorem harness. Each ordering result about parallel/series systems of
// heterogeneous ENH/ES components is a scenario: a hypothesis predicate on
// the parameters and a conclusion checked with the grid-certified order
// checkers. Scenarios run on explicit parameters or on seeded random
// hypothesis-satisfying trials; counterexample_scan samples parameters with
// the hypotheses optionally relaxed and reports every violated conclusion.

#include "copula.hpp"
#include "dist.hpp"
#include "extremes.hpp"
#include "majorize.hpp"
#include "orders.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace enhorder
{

enum class TheoremId { T3_2, T3_3, T3_4, T3_5, T3_6, T3_7, C_Lorenz, T3_8, C_PRH, C_ENH_copula, L3_1, L2_1 };

inline constexpr TheoremId kAllTheorems[] = {
    TheoremId::T3_2, TheoremId::T3_3, TheoremId::T3_4,  TheoremId::T3_5, TheoremId::T3_6,         TheoremId::T3_7,
    TheoremId::C_Lorenz, TheoremId::T3_8, TheoremId::C_PRH, TheoremId::C_ENH_copula, TheoremId::L3_1, TheoremId::L2_1,
};

inline std::string_view to_string(TheoremId id)
{
    switch (id) {
    case TheoremId::T3_2: return "T3_2";
    case TheoremId::T3_3: return "T3_3";
    case TheoremId::T3_4: return "T3_4";
    case TheoremId::T3_5: return "T3_5";
    case TheoremId::T3_6: return "T3_6";
    case TheoremId::T3_7: return "T3_7";
    case TheoremId::C_Lorenz: return "C_Lorenz";
    case TheoremId::T3_8: return "T3_8";
    case TheoremId::C_PRH: return "C_PRH";
    case TheoremId::C_ENH_copula: return "C_ENH_copula";
    case TheoremId::L3_1: return "L3_1";
    case TheoremId::L2_1: return "L2_1";
    }
    return "?";
}

inline std::optional<TheoremId> parse_theorem(std::string_view s)
{
    for (auto id : kAllTheorems)
        if (to_string(id) == s)
            return id;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Scenario parameters

/// Parallel systems, ENH(alpha_i, lambda, beta) vs ENH(alpha*_i, lambda, beta).
struct MaxShapeParams
{
    RealVector alphas, alphas_star;
    double lambda = 1.0, beta = 1.0;
};

/// Parallel systems, ENH(alpha, lambda_i, beta) vs ENH(alpha, lambda*_i, beta).
struct MaxScaleParams
{
    RealVector lambdas, lambdas_star;
    double alpha = 1.0, beta = 1.0;
};

/// Parallel systems, ENH(alpha, lambda, beta_i) vs ENH(alpha, lambda, beta*_i).
struct MaxPowerParams
{
    double alpha = 1.0, lambda = 1.0;
    RealVector betas, betas_star;
};

/// Parallel systems, ENH(alpha1, lambda1, beta_i) vs ENH(alpha2, lambda2, beta*_i).
struct ConvexParams
{
    double alpha1 = 1.0, alpha2 = 1.0, lambda1 = 1.0, lambda2 = 1.0;
    RealVector betas, betas_star;
};

/// Series systems, ES(alpha_i, lambda) with gen1 vs ES(alpha*_i, lambda) with gen2.
struct CopulaParams
{
    RealVector alphas, alphas_star;
    double lambda = 1.0;
    BaselineDist baseline = BaselineDist::exponential();
    ArchGenerator gen1, gen2;
};

/// Lemma 2.1 surrogate: f(alpha) = max_cdf at fixed x for ENH(alpha_i, lambda, beta).
struct SchurParams
{
    RealVector alphas;
    double lambda = 1.0, beta = 1.0, x = 1.0;
    std::uint64_t pair_seed = 0;
};

/// g(x) = x e^{1-x} / (1 - e^{1-x}) scanned on a uniform grid over [lo, hi].
struct LemmaParams
{
    double lo = 1.0 + 1e-6, hi = 50.0;
    std::size_t points = 10000;
};

using ScenarioParams =
    std::variant<MaxShapeParams, MaxScaleParams, MaxPowerParams, ConvexParams, CopulaParams, SchurParams, LemmaParams>;

// ---------------------------------------------------------------------------
// Reports

struct TrialOutcome
{
    bool hypotheses_ok = true;
    bool conclusion_ok = true; ///< the theorem's forward claim held
    OrderVerdict verdict;
    std::string detail;
};

struct TrialFailure
{
    std::uint64_t seed = 0; ///< trial seed; rerunning the trial with it reproduces the failure
    std::size_t trial = 0;
    double witness = 0.0;
    double margin = 0.0;
    std::string detail;
    ScenarioParams params;
};

struct ScenarioReport
{
    TheoremId theorem = TheoremId::T3_2;
    bool hypotheses_ok = true;
    OrderVerdict conclusion_verdict; ///< verdict with the smallest margin over all trials
    std::size_t trials = 0;
    std::vector<TrialFailure> failures;

    bool passed() const { return hypotheses_ok && failures.empty(); }
};

// ---------------------------------------------------------------------------
// Numeric lemma checks

/// x e^{1-x} / (1 - e^{1-x}) on (1, inf).
inline double lemma_g(double x)
{
    if (!(x > 1.0))
        throw std::domain_error("lemma g is defined on (1, inf)");
    return x * std::exp(1.0 - x) / -std::expm1(1.0 - x);
}

struct MonotoneScan
{
    bool holds = true;
    std::optional<double> witness;
};

/// g strictly decreasing across every consecutive pair of grid points.
inline MonotoneScan check_lemma_g_decreasing(std::span<const double> grid)
{
    if (grid.size() < 2 || !numeric::strictly_increasing(grid) || !(grid.front() > 1.0))
        throw std::invalid_argument("lemma grid must be strictly increasing inside (1, inf)");
    MonotoneScan out;
    double prev = lemma_g(grid[0]);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double cur = lemma_g(grid[i]);
        if (!(cur < prev)) {
            out.holds = false;
            out.witness = grid[i];
            return out;
        }
        prev = cur;
    }
    return out;
}

struct SchurCheck
{
    bool holds = true;
    double worst_margin = 0.0; ///< max over pairs of the scaled exchange term; <= tol means Schur-concave
    std::pair<std::size_t, std::size_t> witness{0, 0};
};

/// Schur-concavity exchange condition at one point:
/// (x_i - x_j)(df/dx_i - df/dx_j) <= 0 for all i != j, with central
/// differences of step h * max(1, |x_i|). The term is compared against
/// 1e-8 * |x_i - x_j| * (|df/dx_i| + |df/dx_j| + 1e-300).
template <typename F>
SchurCheck check_schur_concave_numeric(F&& f, std::span<const double> point, double h = 1e-5)
{
    const std::size_t n = point.size();
    if (n < 2)
        throw std::invalid_argument("Schur check needs at least two coordinates");
    RealVector x(point.begin(), point.end());
    RealVector grad(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double step = h * std::max(1.0, std::abs(x[i]));
        if (x[i] + step == x[i])
            throw std::domain_error("finite-difference step underflows");
        const double keep = x[i];
        x[i] = keep + step;
        const double up = f(std::span<const double>(x));
        x[i] = keep - step;
        const double down = f(std::span<const double>(x));
        x[i] = keep;
        grad[i] = (up - down) / (2.0 * step);
    }

    SchurCheck out;
    out.worst_margin = -kInf;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double term = (x[i] - x[j]) * (grad[i] - grad[j]);
            const double scale = std::abs(x[i] - x[j]) * (std::abs(grad[i]) + std::abs(grad[j])) + 1e-300;
            const double scaled = term / scale;
            if (scaled > out.worst_margin) {
                out.worst_margin = scaled;
                out.witness = {i, j};
            }
        }
    }
    out.holds = out.worst_margin <= 1e-8;
    return out;
}

// ---------------------------------------------------------------------------
// Scenario evaluation

namespace detail
{

inline double vsum(std::span<const double> v) { return std::accumulate(v.begin(), v.end(), 0.0); }

inline bool componentwise_le(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!(a[i] <= b[i]))
            return false;
    return true;
}

inline bool all_positive(std::span<const double> v)
{
    return !v.empty() && std::all_of(v.begin(), v.end(), [](double x) { return x > 0.0 && std::isfinite(x); });
}

inline ParallelSystem parallel_enh(std::span<const double> alphas, std::span<const double> lambdas,
                                   std::span<const double> betas)
{
    std::vector<ENHParams> ps;
    for (std::size_t i = 0; i < alphas.size(); ++i)
        ps.push_back({alphas[i], lambdas[i], betas[i]});
    return ParallelSystem(SampleSpec::from_enh(ps));
}

inline RealVector filled(std::size_t n, double v) { return RealVector(n, v); }

inline bool sums_equal(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)); }

inline TrialOutcome from_verdict(bool hyp, const OrderVerdict& v)
{
    TrialOutcome t;
    t.hypotheses_ok = hyp;
    t.verdict = v;
    t.conclusion_ok = v.holds;
    return t;
}

/// Hazard nonincreasing along the quantile-mapped grid (relative step tolerance 1e-9).
template <Distribution D>
MonotoneScan hazard_nonincreasing(const D& d, const ProbGrid& grid)
{
    MonotoneScan out;
    double prev = kInf;
    for (double u : grid) {
        const double x = d.quantile(u);
        const double h = hazard(d, x);
        if (!std::isfinite(h))
            continue;
        if (std::isfinite(prev) && h - prev > 1e-9 * std::max(std::abs(h), std::abs(prev))) {
            out.holds = false;
            out.witness = x;
            return out;
        }
        prev = h;
    }
    return out;
}

} // namespace detail

/// T3_2 / T3_3: alpha* weakly supermajorized by alpha (or alpha <= alpha*
/// componentwise) implies X*_{n:n} <=_st X_{n:n}.
inline TrialOutcome evaluate_max_st_shape(const MaxShapeParams& p, const ProbGrid& grid, bool componentwise_branch)
{
    const bool shapes_ok = p.alphas.size() == p.alphas_star.size() && detail::all_positive(p.alphas) &&
                           detail::all_positive(p.alphas_star) && p.lambda > 0.0 && p.beta > 0.0;
    if (!shapes_ok)
        throw std::invalid_argument("max_st_shape: vectors must be positive and of equal length");
    const bool hyp = componentwise_branch ? detail::componentwise_le(p.alphas, p.alphas_star)
                                          : is_weak_supermajorized(p.alphas_star, p.alphas);
    const auto n = p.alphas.size();
    const auto x = detail::parallel_enh(p.alphas, detail::filled(n, p.lambda), detail::filled(n, p.beta));
    const auto xs = detail::parallel_enh(p.alphas_star, detail::filled(n, p.lambda), detail::filled(n, p.beta));
    return detail::from_verdict(hyp, check_st(xs, x, grid));
}

/// T3_4: 0 < alpha <= 1 and lambda* weakly supermajorized by lambda (or
/// lambda <= lambda* componentwise) implies X*_{n:n} <=_st X_{n:n}.
inline TrialOutcome evaluate_max_st_scale(const MaxScaleParams& p, const ProbGrid& grid)
{
    if (!(p.lambdas.size() == p.lambdas_star.size() && detail::all_positive(p.lambdas) &&
          detail::all_positive(p.lambdas_star) && p.alpha > 0.0 && p.beta > 0.0))
        throw std::invalid_argument("max_st_scale: vectors must be positive and of equal length");
    const bool hyp = p.alpha <= 1.0 && (is_weak_supermajorized(p.lambdas_star, p.lambdas) ||
                                        detail::componentwise_le(p.lambdas, p.lambdas_star));
    const auto n = p.lambdas.size();
    const auto x = detail::parallel_enh(detail::filled(n, p.alpha), p.lambdas, detail::filled(n, p.beta));
    const auto xs = detail::parallel_enh(detail::filled(n, p.alpha), p.lambdas_star, detail::filled(n, p.beta));
    return detail::from_verdict(hyp, check_st(xs, x, grid));
}

/// T3_5: X_{n:n} >=_lr X*_{n:n} iff sum beta >= sum beta*. The hypothesis
/// flag is the sum inequality; the verdict is the lr check, cross-checked
/// against the closed-form density ratio on the same points.
inline TrialOutcome evaluate_max_lr(const MaxPowerParams& p, const ProbGrid& grid)
{
    if (!(detail::all_positive(p.betas) && detail::all_positive(p.betas_star) && p.alpha > 0.0 && p.lambda > 0.0))
        throw std::invalid_argument("max_lr: parameters must be positive");
    const double b = detail::vsum(p.betas), bs = detail::vsum(p.betas_star);
    const Enh x({p.alpha, p.lambda, b}), xs({p.alpha, p.lambda, bs});
    auto t = detail::from_verdict(b >= bs, check_lr(xs, x, grid));

    // closed-form ratio must agree on monotonicity
    bool ratio_increasing = true;
    double prev = -kInf;
    for (double u : grid) {
        const double r = max_density_ratio(p.alpha, p.lambda, p.betas, p.betas_star, x.quantile(u));
        if (r < prev * (1.0 - 1e-12))
            ratio_increasing = false;
        prev = r;
    }
    if (ratio_increasing != t.verdict.holds) {
        t.conclusion_ok = false;
        t.detail = "closed-form density ratio disagrees with the lr checker";
    }
    return t;
}

/// T3_6: alpha < 1 and sum beta* <= sum beta < 1 imply X*_{n:n} <=_disp X_{n:n};
/// the DHR property of X_{n:n} is asserted alongside.
inline TrialOutcome evaluate_max_disp(const MaxPowerParams& p, const ProbGrid& grid)
{
    if (!(detail::all_positive(p.betas) && detail::all_positive(p.betas_star) && p.alpha > 0.0 && p.lambda > 0.0))
        throw std::invalid_argument("max_disp: parameters must be positive");
    const double b = detail::vsum(p.betas), bs = detail::vsum(p.betas_star);
    const bool hyp = p.alpha < 1.0 && bs <= b && b < 1.0;
    const Enh x({p.alpha, p.lambda, b}), xs({p.alpha, p.lambda, bs});
    auto t = detail::from_verdict(hyp, check_disp(xs, x, grid));
    const auto dhr = detail::hazard_nonincreasing(x, grid);
    if (!dhr.holds) {
        t.conclusion_ok = false;
        t.detail = "hazard of the parallel system increases at x=" + std::to_string(*dhr.witness);
    }
    return t;
}

/// T3_7 / C_Lorenz: alpha1 <= alpha2 and equal beta sums imply
/// X*_{n:n} <=_c X_{n:n} (and hence the Lorenz order). The convex check is
/// cross-checked against h(x) = ((1 + lambda2 x)^(alpha2/alpha1) - 1)/lambda1.
inline TrialOutcome evaluate_max_convex(const ConvexParams& p, const ProbGrid& grid, bool lorenz)
{
    if (!(detail::all_positive(p.betas) && detail::all_positive(p.betas_star) && p.alpha1 > 0.0 &&
          p.alpha2 > 0.0 && p.lambda1 > 0.0 && p.lambda2 > 0.0))
        throw std::invalid_argument("max_convex: parameters must be positive");
    const double b = detail::vsum(p.betas), bs = detail::vsum(p.betas_star);
    const bool hyp = p.alpha1 <= p.alpha2 && detail::sums_equal(b, bs);
    const Enh x({p.alpha1, p.lambda1, b}), xs({p.alpha2, p.lambda2, bs});

    if (lorenz)
        return detail::from_verdict(hyp, check_lorenz(xs, x, grid));

    auto t = detail::from_verdict(hyp, check_convex_transform(xs, x, grid));
    if (hyp) {
        const double ratio = p.alpha2 / p.alpha1;
        for (double u : grid) {
            const double z = xs.quantile(u);
            const double h = std::expm1(ratio * std::log1p(p.lambda2 * z)) / p.lambda1;
            const double via_quantiles = x.quantile(u);
            const double h2 = p.lambda2 / p.lambda1 * ratio * p.lambda2 * (ratio - 1.0) *
                              std::pow(1.0 + p.lambda2 * z, ratio - 2.0);
            if (std::abs(h - via_quantiles) > 1e-8 * std::max(1.0, std::abs(h)) || h2 < 0.0) {
                t.conclusion_ok = false;
                t.detail = "closed-form transform disagrees at u=" + std::to_string(u);
                break;
            }
        }
    }
    return t;
}

/// T3_8 and corollaries: psi2 o phi1 super-additive and alpha* weakly
/// supermajorized by alpha imply X_{1:n} <=_st X*_{1:n}.
inline TrialOutcome evaluate_min_st_copula(const CopulaParams& p, const ProbGrid& grid)
{
    if (!(p.alphas.size() == p.alphas_star.size() && detail::all_positive(p.alphas) &&
          detail::all_positive(p.alphas_star) && p.lambda > 0.0))
        throw std::invalid_argument("min_st_copula: vectors must be positive and of equal length");
    const bool hyp =
        check_super_additive(p.gen2, p.gen1).super_additive && is_weak_supermajorized(p.alphas_star, p.alphas);
    std::vector<ESSpec> m, ms;
    for (double a : p.alphas)
        m.push_back({a, p.lambda, p.baseline});
    for (double a : p.alphas_star)
        ms.push_back({a, p.lambda, p.baseline});
    const SeriesSystem x(SampleSpec(std::move(m), p.gen1));
    const SeriesSystem xs(SampleSpec(std::move(ms), p.gen2));
    return detail::from_verdict(hyp, check_st(x, xs, grid));
}

/// max_cdf at fixed x as a function of the shape vector.
inline double max_cdf_in_alpha(std::span<const double> alphas, double lambda, double beta, double x)
{
    double acc = 0.0;
    for (double a : alphas)
        acc += enh_log_cdf({a, lambda, beta}, x);
    return std::exp(acc);
}

/// L2_1: f(alpha) = max_cdf is increasing in each coordinate and satisfies
/// the Schur-concave exchange condition; for a weakly supermajorized pair
/// (alpha* below alpha) f(alpha*) >= f(alpha).
inline TrialOutcome evaluate_lemma_schur(const SchurParams& p)
{
    auto f = [&](std::span<const double> a) { return max_cdf_in_alpha(a, p.lambda, p.beta, p.x); };
    TrialOutcome t;
    t.verdict.order = OrderKind::St;
    t.verdict.witness = p.x;

    const auto schur = check_schur_concave_numeric(f, p.alphas);
    RealVector a = p.alphas;
    double worst_partial = kInf;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double keep = a[i];
        const double d = numeric::central_diff(
            [&](double v) {
                a[i] = v;
                const double r = f(a);
                a[i] = keep;
                return r;
            },
            keep);
        worst_partial = std::min(worst_partial, d);
    }
    const auto [lo, hi] = random_comparable_pair(p.alphas.size(), MajorizationRelation::WeakSuper, p.pair_seed,
                                                 0.1, 4.0);
    const double gap = f(lo) - f(hi);

    t.verdict.worst_margin = std::min({-schur.worst_margin, worst_partial, gap});
    t.conclusion_ok = schur.holds && worst_partial >= -1e-10 && gap >= -1e-12;
    t.verdict.holds = t.conclusion_ok;
    if (!t.conclusion_ok)
        t.detail = !schur.holds ? "exchange condition fails" : worst_partial < -1e-10 ? "f decreases in a coordinate"
                                                                                      : "majorization pair misordered";
    return t;
}

inline TrialOutcome evaluate_lemma_g(const LemmaParams& p)
{
    const auto grid = numeric::linspace(p.lo, p.hi, p.points);
    const auto scan = check_lemma_g_decreasing(grid);
    TrialOutcome t;
    t.hypotheses_ok = p.lo > 1.0;
    t.conclusion_ok = scan.holds;
    t.verdict.holds = scan.holds;
    t.verdict.worst_margin = 0.0;
    if (scan.witness)
        t.verdict.witness = *scan.witness;
    return t;
}

/// Evaluates a theorem's conclusion on one parameter set, hypotheses or not.
inline TrialOutcome evaluate(TheoremId id, const ScenarioParams& params, const ProbGrid& grid)
{
    auto want = [&]<typename P>(std::type_identity<P>) -> const P& {
        if (const auto* p = std::get_if<P>(&params))
            return *p;
        throw std::invalid_argument("parameters do not match theorem " + std::string(to_string(id)));
    };
    switch (id) {
    case TheoremId::T3_2: return evaluate_max_st_shape(want(std::type_identity<MaxShapeParams>{}), grid, false);
    case TheoremId::T3_3: return evaluate_max_st_shape(want(std::type_identity<MaxShapeParams>{}), grid, true);
    case TheoremId::T3_4: return evaluate_max_st_scale(want(std::type_identity<MaxScaleParams>{}), grid);
    case TheoremId::T3_5: return evaluate_max_lr(want(std::type_identity<MaxPowerParams>{}), grid);
    case TheoremId::T3_6: return evaluate_max_disp(want(std::type_identity<MaxPowerParams>{}), grid);
    case TheoremId::T3_7: return evaluate_max_convex(want(std::type_identity<ConvexParams>{}), grid, false);
    case TheoremId::C_Lorenz: return evaluate_max_convex(want(std::type_identity<ConvexParams>{}), grid, true);
    case TheoremId::T3_8:
    case TheoremId::C_PRH:
    case TheoremId::C_ENH_copula: return evaluate_min_st_copula(want(std::type_identity<CopulaParams>{}), grid);
    case TheoremId::L2_1: return evaluate_lemma_schur(want(std::type_identity<SchurParams>{}));
    case TheoremId::L3_1: return evaluate_lemma_g(want(std::type_identity<LemmaParams>{}));
    }
    throw std::invalid_argument("unknown theorem");
}

inline bool verification_passes_lr(const TrialOutcome& t)
{
    // verdict must equal the sum test; a disagreeing closed form is a failure
    return t.detail.empty() && (t.verdict.holds == t.hypotheses_ok);
}

// ---------------------------------------------------------------------------
// Random parameter generation

/// Parameter ranges used by random trials and scans.
struct ParamRanges
{
    double shape_lo = 0.2, shape_hi = 3.0;
    double scale_lo = 0.2, scale_hi = 3.0;
    double power_lo = 0.1, power_hi = 3.0;
    double theta_lo = 1.0, theta_hi = 4.0;
    std::size_t n_min = 2, n_max = 5;

    void validate() const
    {
        auto check = [](double lo, double hi, const char* name) {
            if (!(lo > 0.0 && hi >= lo && std::isfinite(hi)))
                throw std::invalid_argument(std::string("range ") + name + " must satisfy 0 < lo <= hi");
        };
        check(shape_lo, shape_hi, "shape");
        check(scale_lo, scale_hi, "scale");
        check(power_lo, power_hi, "power");
        check(theta_lo, theta_hi, "theta");
        if (n_min < 2 || n_max < n_min)
            throw std::invalid_argument("sample sizes must satisfy 2 <= n_min <= n_max");
    }
};

/// What a sampler must guarantee.
struct SamplingRules
{
    bool vector_relations = true;   ///< majorization, componentwise, equal sums, super-additivity
    bool scalar_hypotheses = true;  ///< alpha <= 1, alpha < 1, beta-sum bounds, alpha1 <= alpha2
};

/// splitmix64 finalizer; derives independent per-trial seeds.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index)
{
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

namespace detail
{

class Sampler
{
  public:
    Sampler(std::uint64_t seed, const ParamRanges& r) : rng_(seed), r_(r) {}

    double uniform(double lo, double hi)
    {
        if (hi <= lo)
            return lo;
        return std::uniform_real_distribution<double>(lo, hi)(rng_);
    }
    bool coin() { return std::uniform_int_distribution<int>(0, 1)(rng_) == 1; }
    std::size_t size() { return std::uniform_int_distribution<std::size_t>(r_.n_min, r_.n_max)(rng_); }
    std::uint64_t next_seed() { return rng_(); }

    RealVector vec(std::size_t n, double lo, double hi)
    {
        RealVector v(n);
        for (auto& x : v)
            x = uniform(lo, hi);
        return v;
    }

    /// (below, above) with below weakly supermajorized by above, both in [lo, hi].
    std::pair<RealVector, RealVector> super_pair(std::size_t n, double lo, double hi)
    {
        if (hi <= lo)
            return {RealVector(n, lo), RealVector(n, lo)};
        return random_comparable_pair(n, MajorizationRelation::WeakSuper, next_seed(), lo, hi);
    }

    /// below <= above componentwise.
    std::pair<RealVector, RealVector> componentwise_pair(std::size_t n, double lo, double hi)
    {
        auto below = vec(n, lo, hi);
        auto above = below;
        for (auto& v : above)
            v += (hi - v) * uniform(0.0, 1.0);
        return {std::move(below), std::move(above)};
    }

    /// Positive weights scaled to the given total.
    RealVector with_sum(std::size_t n, double total)
    {
        RealVector w = vec(n, 0.2, 1.0);
        const double s = vsum(w);
        for (auto& v : w)
            v *= total / s;
        return w;
    }

    ArchGenerator generator(double theta_lo, double theta_hi)
    {
        switch (std::uniform_int_distribution<int>(0, 2)(rng_)) {
        case 0: return ArchGenerator::independence();
        case 1: return ArchGenerator::gumbel(std::max(1.0, uniform(theta_lo, theta_hi)));
        default: return ArchGenerator::clayton(uniform(theta_lo, theta_hi));
        }
    }

    /// (gen1, gen2) with psi2 o phi1 super-additive by construction.
    std::pair<ArchGenerator, ArchGenerator> ordered_generators()
    {
        const double lo = std::max(1.0, r_.theta_lo), hi = std::max(lo, r_.theta_hi);
        switch (std::uniform_int_distribution<int>(0, 2)(rng_)) {
        case 0: {
            auto g2 = generator(lo, hi);
            return {ArchGenerator::independence(), g2};
        }
        case 1: {
            const double t1 = uniform(lo, hi), t2 = uniform(t1, hi);
            return {ArchGenerator::gumbel(t1), ArchGenerator::gumbel(t2)};
        }
        default: {
            const double t1 = uniform(r_.theta_lo, r_.theta_hi), t2 = uniform(t1, r_.theta_hi);
            return {ArchGenerator::clayton(t1), ArchGenerator::clayton(t2)};
        }
        }
    }

    const ParamRanges& ranges() const { return r_; }

  private:
    std::mt19937_64 rng_;
    ParamRanges r_;
};

inline double clamp_hi(double hi, double cap, double lo) { return std::max(lo, std::min(hi, cap)); }

} // namespace detail

/// Draws one parameter set for a theorem under the given rules.
inline ScenarioParams sample_params(TheoremId id, std::uint64_t seed, const ParamRanges& ranges,
                                    const SamplingRules& rules)
{
    ranges.validate();
    detail::Sampler s(seed, ranges);
    const auto& r = ranges;
    const std::size_t n = s.size();

    switch (id) {
    case TheoremId::T3_2:
    case TheoremId::T3_3: {
        MaxShapeParams p;
        if (!rules.vector_relations) {
            p.alphas = s.vec(n, r.shape_lo, r.shape_hi);
            p.alphas_star = s.vec(n, r.shape_lo, r.shape_hi);
        } else if (id == TheoremId::T3_2) {
            std::tie(p.alphas_star, p.alphas) = s.super_pair(n, r.shape_lo, r.shape_hi);
        } else {
            std::tie(p.alphas, p.alphas_star) = s.componentwise_pair(n, r.shape_lo, r.shape_hi);
        }
        p.lambda = s.uniform(r.scale_lo, r.scale_hi);
        p.beta = s.uniform(r.power_lo, r.power_hi);
        return p;
    }
    case TheoremId::T3_4: {
        MaxScaleParams p;
        if (!rules.vector_relations) {
            p.lambdas = s.vec(n, r.scale_lo, r.scale_hi);
            p.lambdas_star = s.vec(n, r.scale_lo, r.scale_hi);
        } else if (s.coin()) {
            std::tie(p.lambdas_star, p.lambdas) = s.super_pair(n, r.scale_lo, r.scale_hi);
        } else {
            std::tie(p.lambdas, p.lambdas_star) = s.componentwise_pair(n, r.scale_lo, r.scale_hi);
        }
        const double hi = rules.scalar_hypotheses ? detail::clamp_hi(r.shape_hi, 1.0, r.shape_lo) : r.shape_hi;
        if (rules.scalar_hypotheses && r.shape_lo > 1.0)
            throw std::invalid_argument("T3_4 needs shapes <= 1 but the shape range starts above 1");
        p.alpha = s.uniform(r.shape_lo, hi);
        p.beta = s.uniform(r.power_lo, r.power_hi);
        return p;
    }
    case TheoremId::T3_5: {
        MaxPowerParams p;
        p.alpha = s.uniform(r.shape_lo, r.shape_hi);
        p.lambda = s.uniform(r.scale_lo, r.scale_hi);
        // keep the two sums visibly apart so a grid can resolve the ratio's trend
        do {
            p.betas = s.vec(n, r.power_lo, r.power_hi);
            p.betas_star = s.vec(n, r.power_lo, r.power_hi);
        } while (std::abs(detail::vsum(p.betas) - detail::vsum(p.betas_star)) < 1e-3 && r.power_hi > r.power_lo);
        if (rules.scalar_hypotheses && detail::vsum(p.betas) < detail::vsum(p.betas_star))
            std::swap(p.betas, p.betas_star);
        return p;
    }
    case TheoremId::T3_6: {
        MaxPowerParams p;
        p.lambda = s.uniform(r.scale_lo, r.scale_hi);
        if (rules.scalar_hypotheses) {
            if (r.shape_lo >= 1.0)
                throw std::invalid_argument("T3_6 needs shapes < 1 but the shape range starts at or above 1");
            // boundary alpha = 1 and sum beta = 1 are left to scans
            p.alpha = s.uniform(r.shape_lo, std::min(r.shape_hi, 0.95));
            const double total = s.uniform(0.05, 0.95);
            p.betas = s.with_sum(n, total);
            p.betas_star = s.with_sum(n, total * s.uniform(0.05, 1.0));
        } else {
            p.alpha = s.uniform(r.shape_lo, r.shape_hi);
            p.betas = s.vec(n, r.power_lo, r.power_hi);
            p.betas_star = s.vec(n, r.power_lo, r.power_hi);
        }
        return p;
    }
    case TheoremId::T3_7:
    case TheoremId::C_Lorenz: {
        ConvexParams p;
        p.alpha1 = s.uniform(r.shape_lo, r.shape_hi);
        p.alpha2 = s.uniform(r.shape_lo, r.shape_hi);
        if (rules.scalar_hypotheses && p.alpha1 > p.alpha2)
            std::swap(p.alpha1, p.alpha2);
        p.lambda1 = s.uniform(r.scale_lo, r.scale_hi);
        p.lambda2 = s.uniform(r.scale_lo, r.scale_hi);
        p.betas = s.vec(n, r.power_lo, r.power_hi);
        p.betas_star = rules.vector_relations ? s.with_sum(n, detail::vsum(p.betas)) : s.vec(n, r.power_lo, r.power_hi);
        return p;
    }
    case TheoremId::T3_8:
    case TheoremId::C_PRH:
    case TheoremId::C_ENH_copula: {
        CopulaParams p;
        const bool enh = id == TheoremId::C_ENH_copula;
        // in the ENH corollary the exponents are the beta powers
        const double lo = enh ? r.power_lo : r.shape_lo, hi = enh ? r.power_hi : r.shape_hi;
        if (rules.vector_relations) {
            std::tie(p.alphas_star, p.alphas) = s.super_pair(n, lo, hi);
            std::tie(p.gen1, p.gen2) = s.ordered_generators();
        } else {
            p.alphas = s.vec(n, lo, hi);
            p.alphas_star = s.vec(n, lo, hi);
            p.gen1 = s.generator(r.theta_lo, r.theta_hi);
            p.gen2 = s.generator(r.theta_lo, r.theta_hi);
        }
        p.lambda = id == TheoremId::C_PRH ? 1.0 : s.uniform(r.scale_lo, r.scale_hi);
        if (enh || s.coin())
            p.baseline = BaselineDist::nh(s.uniform(r.shape_lo, r.shape_hi));
        return p;
    }
    case TheoremId::L2_1: {
        SchurParams p;
        p.alphas = s.vec(n, r.shape_lo, r.shape_hi);
        p.lambda = s.uniform(r.scale_lo, r.scale_hi);
        p.beta = s.uniform(r.power_lo, r.power_hi);
        p.x = s.uniform(0.05, 5.0) / p.lambda;
        p.pair_seed = s.next_seed();
        return p;
    }
    case TheoremId::L3_1: return LemmaParams{};
    }
    throw std::invalid_argument("unknown theorem");
}

// ---------------------------------------------------------------------------
// Runners

struct TrialOptions
{
    std::size_t trials = 200;
    std::uint64_t seed = 1;
    ParamRanges ranges;
    ProbGrid grid;
};

namespace detail
{

inline void absorb(ScenarioReport& rep, const OrderVerdict& v)
{
    if (rep.trials == 0 || v.worst_margin < rep.conclusion_verdict.worst_margin)
        rep.conclusion_verdict = v;
}

} // namespace detail

/// Runs one explicit parameter set as a single-trial scenario.
inline ScenarioReport verify_instance(TheoremId id, const ScenarioParams& params, const ProbGrid& grid = {})
{
    ScenarioReport rep;
    rep.theorem = id;
    const auto t = evaluate(id, params, grid);
    detail::absorb(rep, t.verdict);
    rep.trials = 1;
    if (id == TheoremId::T3_5) {
        rep.hypotheses_ok = true;
        if (!verification_passes_lr(t))
            rep.failures.push_back({0, 0, t.verdict.witness, t.verdict.worst_margin, t.detail, params});
        return rep;
    }
    rep.hypotheses_ok = t.hypotheses_ok;
    if (t.hypotheses_ok && !t.conclusion_ok)
        rep.failures.push_back({0, 0, t.verdict.witness, t.verdict.worst_margin, t.detail, params});
    return rep;
}

/// Seeded hypothesis-satisfying random trials. Trial i uses seed
/// mix_seed(options.seed, i) and is independent of every other trial.
inline ScenarioReport verify_random(TheoremId id, const TrialOptions& opt)
{
    ScenarioReport rep;
    rep.theorem = id;
    const std::size_t trials = id == TheoremId::L3_1 ? 1 : opt.trials;
    for (std::size_t i = 0; i < trials; ++i) {
        const std::uint64_t trial_seed = mix_seed(opt.seed, i);
        // T3_5 is an equivalence: exercise both directions of it
        const SamplingRules rules{true, id != TheoremId::T3_5};
        const auto params = sample_params(id, trial_seed, opt.ranges, rules);
        const auto t = evaluate(id, params, opt.grid);
        detail::absorb(rep, t.verdict);
        ++rep.trials;
        const bool ok = id == TheoremId::T3_5 ? verification_passes_lr(t) : t.hypotheses_ok && t.conclusion_ok;
        if (id != TheoremId::T3_5 && !t.hypotheses_ok)
            rep.hypotheses_ok = false;
        if (!ok)
            rep.failures.push_back({trial_seed, i, t.verdict.witness, t.verdict.worst_margin, t.detail, params});
    }
    return rep;
}

/// Convenience wrappers for the individual theorems.
inline ScenarioReport verify_max_st_shape(const MaxShapeParams& p, const ProbGrid& grid = {})
{
    const bool componentwise = detail::componentwise_le(p.alphas, p.alphas_star);
    return verify_instance(componentwise ? TheoremId::T3_3 : TheoremId::T3_2, p, grid);
}
inline ScenarioReport verify_max_st_scale(const MaxScaleParams& p, const ProbGrid& grid = {})
{
    return verify_instance(TheoremId::T3_4, p, grid);
}
inline ScenarioReport verify_max_lr(const MaxPowerParams& p, const ProbGrid& grid = {})
{
    return verify_instance(TheoremId::T3_5, p, grid);
}
inline ScenarioReport verify_max_disp(const MaxPowerParams& p, const ProbGrid& grid = {})
{
    return verify_instance(TheoremId::T3_6, p, grid);
}
inline ScenarioReport verify_max_convex_transform(const ConvexParams& p, const ProbGrid& grid = {})
{
    auto rep = verify_instance(TheoremId::T3_7, p, grid);
    const auto lorenz = verify_instance(TheoremId::C_Lorenz, p, grid);
    rep.failures.insert(rep.failures.end(), lorenz.failures.begin(), lorenz.failures.end());
    return rep;
}
inline ScenarioReport verify_min_st_copula(const CopulaParams& p, const ProbGrid& grid = {})
{
    return verify_instance(TheoremId::T3_8, p, grid);
}

// ---------------------------------------------------------------------------
// Counterexample scan

enum class ScanMode {
    Free,        ///< everything drawn independently from the ranges
    Relations,   ///< vector relations kept, scalar hypotheses relaxed
    Constrained, ///< inside the hypothesis region
};

struct ScanOptions
{
    std::size_t samples = 100;
    std::uint64_t seed = 1;
    ScanMode mode = ScanMode::Free;
    ParamRanges ranges;
    ProbGrid grid;
};

struct Violation
{
    std::size_t sample = 0;
    std::uint64_t seed = 0;
    bool hypotheses_held = false;
    double witness = 0.0;
    double margin = 0.0;
    std::string detail;
    ScenarioParams params;
};

struct ScanResult
{
    TheoremId theorem = TheoremId::T3_2;
    ScanMode mode = ScanMode::Free;
    std::size_t samples = 0;
    std::size_t hypotheses_held = 0;
    std::vector<Violation> violations;
};

/// Samples parameters (hypotheses optionally relaxed) and records each one
/// whose conclusion fails. Only reports what it finds; no necessity claims.
inline ScanResult counterexample_scan(TheoremId id, const ScanOptions& opt)
{
    ScanResult out;
    out.theorem = id;
    out.mode = opt.mode;
    const SamplingRules rules{opt.mode != ScanMode::Free, opt.mode == ScanMode::Constrained};
    const std::size_t samples = id == TheoremId::L3_1 ? 1 : opt.samples;
    for (std::size_t i = 0; i < samples; ++i) {
        const std::uint64_t sample_seed = mix_seed(opt.seed, i);
        const auto params = sample_params(id, sample_seed, opt.ranges, rules);
        const auto t = evaluate(id, params, opt.grid);
        ++out.samples;
        if (t.hypotheses_ok)
            ++out.hypotheses_held;
        if (!t.conclusion_ok)
            out.violations.push_back(
                {i, sample_seed, t.hypotheses_ok, t.verdict.witness, t.verdict.worst_margin, t.detail, params});
    }
    return out;
}

} // namespace enhorder
