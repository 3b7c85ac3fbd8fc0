#pragma once

// Independent reference computations for the tests. Deliberately naive:
// direct formulas in long double and a hand-rolled adaptive Simpson rule,
// sharing no code with the library.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace oracle
{

using ld = long double;

inline ld enh_cdf(ld a, ld l, ld b, ld x)
{
    return std::pow(1.0L - std::exp(1.0L - std::pow(1.0L + l * x, a)), b);
}

inline ld enh_sf(ld a, ld l, ld b, ld x) { return 1.0L - enh_cdf(a, l, b, x); }

inline ld enh_pdf(ld a, ld l, ld b, ld x)
{
    const ld z = std::pow(1.0L + l * x, a);
    return a * b * l * std::pow(1.0L + l * x, a - 1.0L) * std::exp(1.0L - z) *
           std::pow(1.0L - std::exp(1.0L - z), b - 1.0L);
}

/// Solves enh_cdf = u by bisection.
inline ld enh_quantile(ld a, ld l, ld b, ld u)
{
    ld lo = 0.0L, hi = 1.0L;
    while (enh_cdf(a, l, b, hi) < u)
        hi *= 2.0L;
    for (int i = 0; i < 200; ++i) {
        const ld mid = 0.5L * (lo + hi);
        (enh_cdf(a, l, b, mid) < u ? lo : hi) = mid;
    }
    return 0.5L * (lo + hi);
}

namespace detail
{
inline ld simpson_step(const std::function<ld(ld)>& f, ld a, ld b, ld fa, ld fm, ld fb, ld whole, ld eps, int depth)
{
    const ld m = 0.5L * (a + b), lm = 0.5L * (a + m), rm = 0.5L * (m + b);
    const ld flm = f(lm), frm = f(rm);
    const ld left = (m - a) / 6.0L * (fa + 4.0L * flm + fm);
    const ld right = (b - m) / 6.0L * (fm + 4.0L * frm + fb);
    const ld delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0L * eps)
        return left + right + delta / 15.0L;
    return simpson_step(f, a, m, fa, flm, fm, left, eps / 2.0L, depth - 1) +
           simpson_step(f, m, b, fm, frm, fb, right, eps / 2.0L, depth - 1);
}
} // namespace detail

/// Adaptive Simpson quadrature on [a, b].
inline ld integrate(const std::function<ld(ld)>& f, ld a, ld b, ld eps = 1e-13L, int depth = 40)
{
    const ld fa = f(a), fb = f(b), fm = f(0.5L * (a + b));
    const ld whole = (b - a) / 6.0L * (fa + 4.0L * fm + fb);
    return detail::simpson_step(f, a, b, fa, fm, fb, whole, eps, depth);
}

/// Integral over [a, inf) through x = a + t/(1-t).
inline ld integrate_to_inf(const std::function<ld(ld)>& f, ld a, ld eps = 1e-13L)
{
    auto g = [&](ld t) -> ld {
        if (t >= 1.0L)
            return 0.0L;
        const ld s = 1.0L - t;
        const ld v = f(a + t / s) / (s * s);
        return std::isfinite(v) ? v : 0.0L;
    };
    return integrate(g, 0.0L, 1.0L, eps);
}

/// Central difference with a step relative to |x|.
inline ld central_diff(const std::function<ld(ld)>& f, ld x, ld h = 1e-6L)
{
    const ld step = h * (x != 0.0L ? std::fabs(x) : 1.0L);
    return (f(x + step) - f(x - step)) / (2.0L * step);
}

/// Sorted partial-sum comparison written out longhand.
inline bool weak_super(std::vector<double> x, std::vector<double> y)
{
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    ld sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        if (sx < sy - 1e-12L)
            return false;
    }
    return true;
}

} // namespace oracle
