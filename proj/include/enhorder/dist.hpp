#pragma once

// Exponentiated Nadarajah-Haghighi (ENH) lifetimes and the exponentiated-scale
// (ES) family built on an NH or exponential baseline.
//
//   ENH(alpha, lambda, beta):  F(x) = [1 - exp(1 - (1 + lambda x)^alpha)]^beta
//
// beta = 1 gives NH, alpha = 1 gives the generalized exponential (GE) law and
// alpha = beta = 1 the exponential law with rate lambda. Everything is
// evaluated through t(x) = (1 + lambda x)^alpha - 1 and log(1 - e^-t) so that
// neither tail loses precision for extreme shapes.

#include "distribution.hpp"
#include "grid.hpp"
#include "numeric.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace enhorder
{

struct ENHParams
{
    double alpha = 1.0;  ///< shape
    double lambda = 1.0; ///< scale (1/time)
    double beta = 1.0;   ///< power shape

    void validate() const
    {
        numeric::require_positive(alpha, "alpha");
        numeric::require_positive(lambda, "lambda");
        numeric::require_positive(beta, "beta");
    }

    static ENHParams nh(double alpha, double lambda) { return {alpha, lambda, 1.0}; }
    static ENHParams ge(double lambda, double beta) { return {1.0, lambda, beta}; }
    static ENHParams exponential(double rate) { return {1.0, rate, 1.0}; }

    friend bool operator==(const ENHParams&, const ENHParams&) = default;
};

namespace detail
{

// t = (1 + lambda x)^alpha - 1 >= 0
inline double enh_t(double alpha, double lambda, double x)
{
    return std::expm1(alpha * std::log1p(lambda * x));
}

// log of the NH cdf, log(1 - e^-t)
inline double nh_log_cdf_of_t(double t) { return numeric::log1mexp(t); }

inline void check_x(double x)
{
    if (!(x >= 0.0))
        throw std::domain_error("x must be >= 0, got " + std::to_string(x));
}

inline void check_u_open(double u)
{
    if (!(u > 0.0 && u < 1.0))
        throw std::domain_error("probability must lie in (0, 1), got " + std::to_string(u));
}

// Inverse of the NH cdf with unit scale, given log v = log of the target
// probability: ((1 - log(1 - v))^(1/alpha) - 1).
inline double nh_unit_quantile_from_log(double alpha, double log_v)
{
    const double log_one_minus_v = numeric::log1m_exp_of_log(log_v);
    return std::expm1(std::log1p(-log_one_minus_v) / alpha);
}

} // namespace detail

inline double enh_log_cdf(const ENHParams& p, double x)
{
    p.validate();
    detail::check_x(x);
    if (x == 0.0)
        return -kInf;
    return p.beta * detail::nh_log_cdf_of_t(detail::enh_t(p.alpha, p.lambda, x));
}

inline double enh_cdf(const ENHParams& p, double x) { return std::exp(enh_log_cdf(p, x)); }

inline double enh_log_sf(const ENHParams& p, double x)
{
    return numeric::log1m_exp_of_log(enh_log_cdf(p, x));
}

inline double enh_sf(const ENHParams& p, double x) { return -std::expm1(enh_log_cdf(p, x)); }

inline double enh_log_pdf(const ENHParams& p, double x)
{
    p.validate();
    detail::check_x(x);
    const double head = std::log(p.alpha * p.beta * p.lambda);
    if (x == 0.0) {
        if (p.beta < 1.0)
            return kInf;
        return p.beta == 1.0 ? head : -kInf;
    }
    const double lx = std::log1p(p.lambda * x);
    const double t = std::expm1(p.alpha * lx);
    return head + (p.alpha - 1.0) * lx - t + (p.beta - 1.0) * detail::nh_log_cdf_of_t(t);
}

/// Density; +inf at x = 0 when beta < 1.
inline double enh_pdf(const ENHParams& p, double x) { return std::exp(enh_log_pdf(p, x)); }

inline double enh_quantile(const ENHParams& p, double u)
{
    p.validate();
    detail::check_u_open(u);
    return detail::nh_unit_quantile_from_log(p.alpha, std::log(u) / p.beta) / p.lambda;
}

/// pdf / (1 - cdf); +inf once the survival function underflows.
inline double enh_hazard(const ENHParams& p, double x)
{
    const double ls = enh_log_sf(p, x);
    if (ls == -kInf)
        return kInf;
    return std::exp(enh_log_pdf(p, x) - ls);
}

// ---------------------------------------------------------------------------
// ES family: H(x) = [G(lambda x)]^alpha

struct BaselineDist
{
    enum class Kind { NH, Exponential };

    Kind kind = Kind::Exponential;
    double shape = 1.0; ///< NH shape; ignored for Exponential

    static BaselineDist nh(double shape) { return {Kind::NH, shape}; }
    static BaselineDist exponential() { return {Kind::Exponential, 1.0}; }

    double nh_shape() const { return kind == Kind::NH ? shape : 1.0; }

    void validate() const
    {
        if (kind == Kind::NH)
            numeric::require_positive(shape, "baseline shape");
    }

    double log_cdf(double y) const
    {
        if (y == 0.0)
            return -kInf;
        const double t = kind == Kind::NH ? detail::enh_t(shape, 1.0, y) : y;
        return detail::nh_log_cdf_of_t(t);
    }
    double cdf(double y) const { return std::exp(log_cdf(y)); }

    double log_pdf(double y) const
    {
        if (kind == Kind::Exponential)
            return -y;
        const double ly = std::log1p(y);
        return std::log(shape) + (shape - 1.0) * ly - std::expm1(shape * ly);
    }

    double quantile_from_log(double log_v) const
    {
        return detail::nh_unit_quantile_from_log(nh_shape(), log_v);
    }

    friend bool operator==(const BaselineDist&, const BaselineDist&) = default;
};

struct ESSpec
{
    double alpha = 1.0;  ///< exponent
    double lambda = 1.0; ///< scale
    BaselineDist baseline = BaselineDist::exponential();

    void validate() const
    {
        numeric::require_positive(alpha, "alpha");
        numeric::require_positive(lambda, "lambda");
        baseline.validate();
    }

    friend bool operator==(const ESSpec&, const ESSpec&) = default;
};

/// ENH(a, l, b) seen as ES(b, l) over an NH(a) baseline.
inline ESSpec to_es(const ENHParams& p)
{
    return {p.beta, p.lambda, p.alpha == 1.0 ? BaselineDist::exponential() : BaselineDist::nh(p.alpha)};
}

inline double es_log_cdf(const ESSpec& s, double x)
{
    s.validate();
    detail::check_x(x);
    return s.alpha * s.baseline.log_cdf(s.lambda * x);
}

inline double es_cdf(const ESSpec& s, double x) { return std::exp(es_log_cdf(s, x)); }
inline double es_sf(const ESSpec& s, double x) { return -std::expm1(es_log_cdf(s, x)); }
inline double es_log_sf(const ESSpec& s, double x)
{
    return numeric::log1m_exp_of_log(es_log_cdf(s, x));
}

inline double es_log_pdf(const ESSpec& s, double x)
{
    s.validate();
    detail::check_x(x);
    const double y = s.lambda * x;
    if (y == 0.0) {
        const double head = std::log(s.alpha * s.lambda) + s.baseline.log_pdf(0.0);
        if (s.alpha < 1.0)
            return kInf;
        return s.alpha == 1.0 ? head : -kInf;
    }
    return std::log(s.alpha * s.lambda) + s.baseline.log_pdf(y) +
           (s.alpha - 1.0) * s.baseline.log_cdf(y);
}

inline double es_pdf(const ESSpec& s, double x) { return std::exp(es_log_pdf(s, x)); }

inline double es_quantile(const ESSpec& s, double u)
{
    s.validate();
    detail::check_u_open(u);
    return s.baseline.quantile_from_log(std::log(u) / s.alpha) / s.lambda;
}

// ---------------------------------------------------------------------------
// Value types satisfying Distribution.

class Enh
{
  public:
    explicit Enh(ENHParams p) : p_(p) { p_.validate(); }

    double cdf(double x) const { return enh_cdf(p_, x); }
    double sf(double x) const { return enh_sf(p_, x); }
    double pdf(double x) const { return enh_pdf(p_, x); }
    double quantile(double u) const { return enh_quantile(p_, u); }
    double log_sf(double x) const { return enh_log_sf(p_, x); }
    double log_pdf(double x) const { return enh_log_pdf(p_, x); }
    double hazard(double x) const { return enh_hazard(p_, x); }

    const ENHParams& params() const { return p_; }

  private:
    ENHParams p_;
};

class Es
{
  public:
    explicit Es(ESSpec s) : s_(s) { s_.validate(); }

    double cdf(double x) const { return es_cdf(s_, x); }
    double sf(double x) const { return es_sf(s_, x); }
    double pdf(double x) const { return es_pdf(s_, x); }
    double quantile(double u) const { return es_quantile(s_, u); }
    double log_sf(double x) const { return es_log_sf(s_, x); }
    double log_pdf(double x) const { return es_log_pdf(s_, x); }

    const ESSpec& spec() const { return s_; }

  private:
    ESSpec s_;
};

// ---------------------------------------------------------------------------
// Hazard shape

enum class HazardShape { Constant, Increasing, Decreasing, Unimodal, Bathtub, Indeterminate };

inline std::string_view to_string(HazardShape s)
{
    switch (s) {
    case HazardShape::Constant: return "Constant";
    case HazardShape::Increasing: return "Increasing";
    case HazardShape::Decreasing: return "Decreasing";
    case HazardShape::Unimodal: return "Unimodal";
    case HazardShape::Bathtub: return "Bathtub";
    case HazardShape::Indeterminate: return "Indeterminate";
    }
    return "Indeterminate";
}

/// Shape of the hazard curve from the sign pattern of its successive
/// differences along the quantile-mapped grid. Differences within 1e-9 of the
/// larger neighbouring value count as zero; non-finite hazards are skipped.
template <Distribution D>
HazardShape classify_hazard_shape(const D& d, const ProbGrid& grid)
{
    if (grid.size() < 64)
        throw std::invalid_argument("hazard shape classification needs a grid of >= 64 points");

    std::vector<double> h;
    h.reserve(grid.size());
    for (double u : grid) {
        const double v = hazard(d, d.quantile(u));
        if (std::isfinite(v))
            h.push_back(v);
    }
    if (h.size() < 2)
        return HazardShape::Indeterminate;

    int first = 0, last = 0, changes = 0;
    for (std::size_t i = 1; i < h.size(); ++i) {
        const double diff = h[i] - h[i - 1];
        if (std::abs(diff) <= 1e-9 * std::max(std::abs(h[i]), std::abs(h[i - 1])))
            continue;
        const int sign = diff > 0 ? 1 : -1;
        if (first == 0)
            first = sign;
        else if (sign != last)
            ++changes;
        last = sign;
    }

    if (first == 0)
        return HazardShape::Constant;
    if (changes == 0)
        return first > 0 ? HazardShape::Increasing : HazardShape::Decreasing;
    if (changes == 1)
        return first > 0 ? HazardShape::Unimodal : HazardShape::Bathtub;
    return HazardShape::Indeterminate;
}

inline HazardShape classify_hazard_shape(const ENHParams& p, const ProbGrid& grid = {})
{
    return classify_hazard_shape(Enh(p), grid);
}

} // namespace enhorder
