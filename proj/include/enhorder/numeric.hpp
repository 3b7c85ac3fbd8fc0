#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace enhorder
{

inline constexpr double kInf = std::numeric_limits<double>::infinity();

namespace numeric
{

/// log(1 - exp(-a)) for a >= 0, accurate at both ends (Maechler's split).
inline double log1mexp(double a)
{
    if (a <= 0.0)
        return -kInf;
    return a <= M_LN2 ? std::log(-std::expm1(-a)) : std::log1p(-std::exp(-a));
}

/// log(1 - exp(l)) for l <= 0.
inline double log1m_exp_of_log(double l) { return log1mexp(-l); }

/// Central finite difference with step h = 1e-5 * max(1, |x|).
template <typename F>
double central_diff(F&& f, double x)
{
    const double h = 1e-5 * std::max(1.0, std::abs(x));
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

inline std::vector<double> linspace(double lo, double hi, std::size_t n)
{
    std::vector<double> out(n);
    if (n == 1) {
        out[0] = lo;
        return out;
    }
    for (std::size_t i = 0; i < n; ++i)
        out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    out.back() = hi;
    return out;
}

inline std::vector<double> logspace(double lo, double hi, std::size_t n)
{
    auto out = linspace(std::log(lo), std::log(hi), n);
    for (auto& v : out)
        v = std::exp(v);
    out.front() = lo;
    out.back() = hi;
    return out;
}

inline bool strictly_increasing(std::span<const double> xs)
{
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (!(xs[i] > xs[i - 1]))
            return false;
    return true;
}

inline void require_positive(double v, const char* field)
{
    if (!(v > 0.0) || !std::isfinite(v))
        throw std::domain_error(std::string(field) + " must be a positive finite number, got " +
                                std::to_string(v));
}

inline void require_nonnegative(double v, const char* field)
{
    if (!(v >= 0.0) || std::isnan(v))
        throw std::domain_error(std::string(field) + " must be >= 0, got " + std::to_string(v));
}

} // namespace numeric
} // namespace enhorder
