#pragma once

// Largest (parallel system) and smallest (series system) order statistics of
// heterogeneous ES samples. The maximum is supported for independent
// components; the minimum for independent components and for Archimedean
// survival copulas, where
//   P(X_{1:n} > x) = phi( sum_i psi(1 - G^{alpha_i}(lambda_i x)) ).

#include "copula.hpp"
#include "dist.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

namespace enhorder
{

struct Independent
{
    friend bool operator==(const Independent&, const Independent&) = default;
};

using Dependence = std::variant<Independent, ArchGenerator>;

enum class ExtremeKind { Max, Min };

enum class ScaleRegime { Common, Heterogeneous };

/// n ES marginals plus their dependence structure. An Archimedean generator
/// must pass the numerical n-monotonicity check for the sample size.
class SampleSpec
{
  public:
    SampleSpec(std::vector<ESSpec> marginals, Dependence dependence = Independent{})
        : marginals_(std::move(marginals)), dependence_(std::move(dependence))
    {
        if (marginals_.empty())
            throw std::invalid_argument("sample needs at least one marginal");
        for (const auto& m : marginals_)
            m.validate();
        if (const auto* g = std::get_if<ArchGenerator>(&dependence_); g && marginals_.size() >= 2) {
            const auto report = check_n_monotone(*g, static_cast<int>(marginals_.size()));
            if (!report.n_monotone)
                throw std::domain_error("generator " + g->name() + " is not " +
                                        std::to_string(marginals_.size()) + "-monotone");
        }
    }

    static SampleSpec from_enh(std::span<const ENHParams> ps, Dependence dependence = Independent{})
    {
        std::vector<ESSpec> es;
        es.reserve(ps.size());
        for (const auto& p : ps) {
            p.validate();
            es.push_back(to_es(p));
        }
        return SampleSpec(std::move(es), std::move(dependence));
    }

    std::size_t size() const { return marginals_.size(); }
    const std::vector<ESSpec>& marginals() const { return marginals_; }
    const Dependence& dependence() const { return dependence_; }
    bool independent() const { return std::holds_alternative<Independent>(dependence_); }
    const ArchGenerator* generator() const { return std::get_if<ArchGenerator>(&dependence_); }

    ScaleRegime scale_regime() const
    {
        const double l0 = marginals_.front().lambda;
        for (const auto& m : marginals_)
            if (m.lambda != l0)
                return ScaleRegime::Heterogeneous;
        return ScaleRegime::Common;
    }

    /// True when every marginal shares baseline and scale, so the maximum of
    /// independent components is again ES with the exponents summed.
    bool common_baseline_and_scale() const
    {
        const auto& m0 = marginals_.front();
        return std::all_of(marginals_.begin(), marginals_.end(), [&](const ESSpec& m) {
            return m.lambda == m0.lambda && m.baseline.nh_shape() == m0.baseline.nh_shape();
        });
    }

  private:
    std::vector<ESSpec> marginals_;
    Dependence dependence_;
};

namespace detail
{

inline void require_independent(const SampleSpec& s, const char* op)
{
    if (!s.independent())
        throw std::invalid_argument(std::string(op) + " requires independent components");
}

/// Root of an increasing function on [lo, hi] (f(lo) <= 0 <= f(hi)).
template <typename F>
double solve_increasing(F&& f, double lo, double hi)
{
    if (!(hi > lo))
        return lo;
    double flo = f(lo), fhi = f(hi);
    if (flo >= 0.0)
        return lo;
    if (fhi <= 0.0)
        return hi;
    std::uintmax_t iters = 200;
    auto [a, b] = boost::math::tools::toms748_solve(
        f, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(52), iters);
    return 0.5 * (a + b);
}

} // namespace detail

// ---------------------------------------------------------------------------
// Maximum

inline double max_log_cdf(const SampleSpec& s, double x)
{
    detail::require_independent(s, "max_cdf");
    detail::check_x(x);
    double acc = 0.0;
    for (const auto& m : s.marginals())
        acc += es_log_cdf(m, x);
    return acc;
}

/// prod_i F_i(x) for independent components.
inline double max_cdf(const SampleSpec& s, double x) { return std::exp(max_log_cdf(s, x)); }

/// Density of the maximum when all components share alpha and lambda:
/// the maximum is then ENH(alpha, lambda, sum beta).
inline double max_pdf_common(double alpha, double lambda, std::span<const double> betas, double x)
{
    if (betas.empty())
        throw std::invalid_argument("betas must be non-empty");
    double total = 0.0;
    for (double b : betas) {
        numeric::require_positive(b, "beta");
        total += b;
    }
    return enh_pdf({alpha, lambda, total}, x);
}

/// f_n / f*_n = (B / B*) (1 - e^{1 - (1 + lambda x)^alpha})^(B - B*),
/// B = sum betas, B* = sum betas_star. Increasing in x iff B >= B*.
inline double max_density_ratio(double alpha, double lambda, std::span<const double> betas,
                                std::span<const double> betas_star, double x)
{
    numeric::require_positive(alpha, "alpha");
    numeric::require_positive(lambda, "lambda");
    if (!(x > 0.0))
        throw std::domain_error("density ratio needs x > 0");
    auto sum = [](std::span<const double> v, const char* field) {
        if (v.empty())
            throw std::invalid_argument(std::string(field) + " must be non-empty");
        double t = 0.0;
        for (double b : v) {
            numeric::require_positive(b, field);
            t += b;
        }
        return t;
    };
    const double b = sum(betas, "betas");
    const double bs = sum(betas_star, "betas_star");
    const double log_base = detail::nh_log_cdf_of_t(detail::enh_t(alpha, lambda, x));
    return b / bs * std::exp((b - bs) * log_base);
}

// ---------------------------------------------------------------------------
// Minimum

struct MinSurvival
{
    double value;
    ScaleRegime regime; ///< Heterogeneous when the marginals carry different lambdas
};

inline double min_log_sf(const SampleSpec& s, double x)
{
    detail::check_x(x);
    if (s.independent()) {
        double acc = 0.0;
        for (const auto& m : s.marginals())
            acc += es_log_sf(m, x);
        return acc;
    }
    const auto& g = *s.generator();
    double total = 0.0;
    for (const auto& m : s.marginals())
        total += g.psi_from_log(es_log_sf(m, x));
    return total == kInf ? -kInf : g.log_phi(total);
}

/// phi(sum_i psi(1 - G^{alpha_i}(lambda_i x))), survivals taken in log form.
inline MinSurvival min_sf_archimedean(const SampleSpec& s, double x)
{
    if (s.independent())
        throw std::invalid_argument("min_sf_archimedean requires an Archimedean dependence");
    return {std::exp(min_log_sf(s, x)), s.scale_regime()};
}

inline double min_sf_independent(const SampleSpec& s, double x)
{
    detail::require_independent(s, "min_sf_independent");
    return std::exp(min_log_sf(s, x));
}

// ---------------------------------------------------------------------------
// Distribution handles for the two system lifetimes.

/// Lifetime of a parallel system of independent components.
class ParallelSystem
{
  public:
    explicit ParallelSystem(SampleSpec s) : s_(std::move(s))
    {
        detail::require_independent(s_, "ParallelSystem");
        if (s_.common_baseline_and_scale()) {
            const auto& m0 = s_.marginals().front();
            double total = 0.0;
            for (const auto& m : s_.marginals())
                total += m.alpha;
            closed_ = ESSpec{total, m0.lambda, m0.baseline};
        }
    }

    double log_cdf(double x) const { return closed_ ? es_log_cdf(*closed_, x) : max_log_cdf(s_, x); }
    double cdf(double x) const { return std::exp(log_cdf(x)); }
    double sf(double x) const { return -std::expm1(log_cdf(x)); }
    double log_sf(double x) const { return numeric::log1m_exp_of_log(log_cdf(x)); }

    double log_pdf(double x) const
    {
        if (closed_)
            return es_log_pdf(*closed_, x);
        // f = F * sum_i f_i / F_i
        double lse_max = -kInf;
        std::vector<double> terms;
        terms.reserve(s_.size());
        for (const auto& m : s_.marginals()) {
            const double t = es_log_pdf(m, x) - es_log_cdf(m, x);
            terms.push_back(t);
            lse_max = std::max(lse_max, t);
        }
        if (!std::isfinite(lse_max))
            return lse_max == kInf ? kInf : -kInf;
        double acc = 0.0;
        for (double t : terms)
            acc += std::exp(t - lse_max);
        return log_cdf(x) + lse_max + std::log(acc);
    }
    double pdf(double x) const { return std::exp(log_pdf(x)); }

    double quantile(double u) const
    {
        detail::check_u_open(u);
        if (closed_)
            return es_quantile(*closed_, u);
        // F_max <= min_i F_i and F_max >= u once every F_i >= u^(1/n)
        double lo = 0.0, hi = 0.0;
        const double root = std::pow(u, 1.0 / static_cast<double>(s_.size()));
        for (const auto& m : s_.marginals()) {
            lo = std::max(lo, es_quantile(m, u));
            hi = std::max(hi, es_quantile(m, std::min(root, std::nextafter(1.0, 0.0))));
        }
        const double lu = std::log(u);
        return detail::solve_increasing([&](double x) { return log_cdf(x) - lu; }, lo, hi);
    }

    const SampleSpec& sample() const { return s_; }

  private:
    SampleSpec s_;
    std::optional<ESSpec> closed_;
};

/// Lifetime of a series system, independent or Archimedean.
class SeriesSystem
{
  public:
    explicit SeriesSystem(SampleSpec s) : s_(std::move(s)) {}

    double log_sf(double x) const { return min_log_sf(s_, x); }
    double sf(double x) const { return std::exp(log_sf(x)); }
    double cdf(double x) const { return -std::expm1(log_sf(x)); }

    double pdf(double x) const
    {
        detail::check_x(x);
        if (s_.independent()) {
            double h = 0.0;
            for (const auto& m : s_.marginals())
                h += std::exp(es_log_pdf(m, x) - es_log_sf(m, x));
            return h * sf(x);
        }
        // f = phi'(S) * sum_i f_i / phi'(psi(s_i))
        const auto& g = *s_.generator();
        double total = 0.0, acc = 0.0;
        for (const auto& m : s_.marginals()) {
            const double p = g.psi_from_log(es_log_sf(m, x));
            total += p;
            acc += es_pdf(m, x) / g.phi_prime(p);
        }
        return g.phi_prime(total) * acc;
    }

    double quantile(double u) const
    {
        detail::check_u_open(u);
        // sf_min <= min_i sf_i, so the quantile is below every marginal one
        double hi = kInf;
        for (const auto& m : s_.marginals())
            hi = std::min(hi, es_quantile(m, u));
        const double target = std::log1p(-u);
        return detail::solve_increasing([&](double x) { return target - log_sf(x); }, 0.0, hi);
    }

    const SampleSpec& sample() const { return s_; }

  private:
    SampleSpec s_;
};

} // namespace enhorder
