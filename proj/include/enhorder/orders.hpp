#pragma once

// Grid-certified checkers for seven stochastic orders. Every checker tests
// "F is smaller than G" in its order and returns a verdict carrying the worst
// margin of the defining inequality and where it occurred. A verdict that
// holds only says no violation was found on the scanned grid.

#include "distribution.hpp"
#include "grid.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace enhorder
{

enum class OrderKind { St, Hr, Lr, Disp, Rs, ConvexTransform, Lorenz };

inline std::string_view to_string(OrderKind k)
{
    switch (k) {
    case OrderKind::St: return "st";
    case OrderKind::Hr: return "hr";
    case OrderKind::Lr: return "lr";
    case OrderKind::Disp: return "disp";
    case OrderKind::Rs: return "rs";
    case OrderKind::ConvexTransform: return "convex";
    case OrderKind::Lorenz: return "lorenz";
    }
    return "?";
}

inline std::optional<OrderKind> parse_order(std::string_view s)
{
    if (s == "st") return OrderKind::St;
    if (s == "hr") return OrderKind::Hr;
    if (s == "lr") return OrderKind::Lr;
    if (s == "disp") return OrderKind::Disp;
    if (s == "rs") return OrderKind::Rs;
    if (s == "convex" || s == "c" || s == "cx") return OrderKind::ConvexTransform;
    if (s == "lorenz") return OrderKind::Lorenz;
    return std::nullopt;
}

/// Tolerances on the (scaled) margins of each defining inequality.
namespace tol
{
inline constexpr double kProbability = 1e-9;  // st: survival differences
inline constexpr double kMonotone = 1e-9;     // lr, disp, hr, rs, lorenz
inline constexpr double kConvexity = 1e-7;    // convex transform slopes
} // namespace tol

struct OrderVerdict
{
    OrderKind order = OrderKind::St;
    bool holds = true;
    double worst_margin = kInf;
    double witness = 0.0;
    bool witness_is_probability = false; ///< witness is u rather than x
    bool applicable = true;
    std::size_t skipped = 0; ///< grid points with non-finite hazards/densities
    std::string note;

    // scan range
    std::size_t grid_points = 0;
    double u_min = 0.0;
    double u_max = 0.0;
};

namespace detail
{

inline OrderVerdict start_verdict(OrderKind k, const ProbGrid& grid, bool witness_u)
{
    OrderVerdict v;
    v.order = k;
    v.witness_is_probability = witness_u;
    v.grid_points = grid.size();
    v.u_min = grid.front();
    v.u_max = grid.back();
    return v;
}

inline void track(OrderVerdict& v, double margin, double where)
{
    if (margin < v.worst_margin) {
        v.worst_margin = margin;
        v.witness = where;
    }
}

inline void finish(OrderVerdict& v, double tolerance)
{
    if (v.worst_margin == kInf)
        v.worst_margin = 0.0;
    v.holds = v.applicable && v.worst_margin >= -tolerance;
}

/// Grid mapped through both quantile functions, sorted and deduplicated.
template <Distribution F, Distribution G>
std::vector<double> union_points(const F& f, const G& g, const ProbGrid& grid)
{
    std::vector<double> xs;
    xs.reserve(2 * grid.size());
    for (double u : grid) {
        xs.push_back(f.quantile(u));
        xs.push_back(g.quantile(u));
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

inline double rel_scale(double a, double b) { return std::max({1.0, std::abs(a), std::abs(b)}); }

struct QuadOutcome
{
    std::vector<double> values;
    bool converged = true;
};

// One 31-point Kronrod pass over a grid segment. Boost's adaptive driver
// compares the unscaled error estimate with a scaled tolerance, so it would
// bisect every segment to full depth; segments are short and the integrands
// smooth, so the single pass is used and its scaled error checked here.
template <typename F>
double segment_integral(F&& f, double a, double b, QuadOutcome& out)
{
    double err = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 0, 0.0, &err);
    if (!std::isfinite(v) || err * 0.5 * (b - a) > 1e-10 * std::max(1.0, std::abs(v)))
        out.converged = false;
    return v;
}

/// int_{Q(u_i)}^inf sf(x) dx for each grid point, accumulated from the right.
template <Distribution D>
QuadOutcome upper_sf_integrals(const D& d, const ProbGrid& grid)
{
    QuadOutcome out;
    out.values.resize(grid.size());
    auto sf = [&d](double x) { return std::exp(log_sf(d, x)); };

    std::vector<double> q(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        q[i] = d.quantile(grid[i]);

    boost::math::quadrature::exp_sinh<double> tail;
    double err = 0.0;
    double acc = tail.integrate(sf, q.back(), kInf, 1e-12, &err);
    if (!std::isfinite(acc) || err > 1e-8 * std::max(1.0, acc))
        out.converged = false;
    out.values.back() = acc;
    for (std::size_t i = grid.size() - 1; i-- > 0;) {
        if (q[i + 1] > q[i]) {
            acc += segment_integral(sf, q[i], q[i + 1], out);
        }
        out.values[i] = acc;
    }
    return out;
}

/// int_0^{u_i} Q(t) dt for each grid point, accumulated from the left.
template <Distribution D>
QuadOutcome lower_quantile_integrals(const D& d, const ProbGrid& grid)
{
    QuadOutcome out;
    out.values.resize(grid.size());
    auto q = [&d](double t) { return t <= 0.0 ? 0.0 : d.quantile(t); };

    boost::math::quadrature::tanh_sinh<double> head;
    double err = 0.0;
    double acc = head.integrate(q, 0.0, grid.front(), 1e-13, &err);
    if (!std::isfinite(acc))
        out.converged = false;
    out.values.front() = acc;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        acc += segment_integral(q, grid[i - 1], grid[i], out);
        out.values[i] = acc;
    }
    return out;
}

template <Distribution D>
double mean(const D& d, double* error = nullptr)
{
    boost::math::quadrature::exp_sinh<double> integrator;
    double err = 0.0;
    const double m = integrator.integrate([&d](double x) { return std::exp(log_sf(d, x)); }, 0.0, kInf, 1e-12,
                                          &err);
    if (error)
        *error = err;
    return m;
}

} // namespace detail

/// Usual stochastic order: sf_F(x) <= sf_G(x) everywhere.
template <Distribution F, Distribution G>
OrderVerdict check_st(const F& f, const G& g, const ProbGrid& grid = {})
{
    auto v = detail::start_verdict(OrderKind::St, grid, false);
    for (double x : detail::union_points(f, g, grid))
        detail::track(v, g.sf(x) - f.sf(x), x);
    detail::finish(v, tol::kProbability);
    return v;
}

/// Hazard rate order: h_F(x) >= h_G(x) everywhere. Margins are relative to
/// max(1, |h_F|, |h_G|); points where either hazard overflows are skipped.
template <Distribution F, Distribution G>
OrderVerdict check_hr(const F& f, const G& g, const ProbGrid& grid = {})
{
    auto v = detail::start_verdict(OrderKind::Hr, grid, false);
    for (double x : detail::union_points(f, g, grid)) {
        const double hf = hazard(f, x), hg = hazard(g, x);
        if (!std::isfinite(hf) || !std::isfinite(hg)) {
            ++v.skipped;
            continue;
        }
        detail::track(v, (hf - hg) / detail::rel_scale(hf, hg), x);
    }
    detail::finish(v, tol::kMonotone);
    return v;
}

/// Likelihood ratio order: g/f nondecreasing. Checked on the log ratio
/// across consecutive points; zero or infinite densities are skipped.
template <Distribution F, Distribution G>
OrderVerdict check_lr(const F& f, const G& g, const ProbGrid& grid = {})
{
    auto v = detail::start_verdict(OrderKind::Lr, grid, false);
    std::optional<double> prev;
    for (double x : detail::union_points(f, g, grid)) {
        const double r = log_pdf(g, x) - log_pdf(f, x);
        if (!std::isfinite(r)) {
            ++v.skipped;
            continue;
        }
        if (prev)
            detail::track(v, r - *prev, x);
        prev = r;
    }
    detail::finish(v, tol::kMonotone);
    return v;
}

/// Dispersive order via monotonicity of G^-1(u) - F^-1(u), with steps
/// scaled by max(1, |quantiles|). Every law here lives on [0, inf), so the
/// difference is anchored at u = 0 where both quantiles vanish.
template <Distribution F, Distribution G>
OrderVerdict check_disp(const F& f, const G& g, const ProbGrid& grid = {})
{
    auto v = detail::start_verdict(OrderKind::Disp, grid, true);
    double prev = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double qf = f.quantile(grid[i]), qg = g.quantile(grid[i]);
        const double diff = qg - qf;
        detail::track(v, (diff - prev) / detail::rel_scale(qf, qg), grid[i]);
        prev = diff;
    }
    detail::finish(v, tol::kMonotone);
    return v;
}

/// Right-spread order: int_{F^-1(u)}^inf sf_F <= int_{G^-1(u)}^inf sf_G.
template <Distribution F, Distribution G>
OrderVerdict check_rs(const F& f, const G& g, const ProbGrid& grid = {})
{
    auto v = detail::start_verdict(OrderKind::Rs, grid, true);
    const auto rf = detail::upper_sf_integrals(f, grid);
    const auto rg = detail::upper_sf_integrals(g, grid);
    if (!rf.converged || !rg.converged)
        v.note = "quadrature did not reach the requested tolerance";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double a = rf.values[i], b = rg.values[i];
        if (!std::isfinite(a) || !std::isfinite(b)) {
            ++v.skipped;
            continue;
        }
        detail::track(v, (b - a) / detail::rel_scale(a, b), grid[i]);
    }
    detail::finish(v, tol::kMonotone);
    return v;
}

/// Convex transform order: x -> G^-1(F(x)) convex. Along x_i = F^-1(u_i) the
/// composition takes the values G^-1(u_i); convexity is checked as
/// nondecreasing chord slopes, relative to max(1, |slope|).
template <Distribution F, Distribution G>
OrderVerdict check_convex_transform(const F& f, const G& g, const ProbGrid& grid = {})
{
    auto v = detail::start_verdict(OrderKind::ConvexTransform, grid, false);
    std::vector<double> xs, hs;
    for (double u : grid) {
        const double x = f.quantile(u);
        if (!xs.empty() && !(x > xs.back())) {
            ++v.skipped;
            continue;
        }
        xs.push_back(x);
        hs.push_back(g.quantile(u));
    }
    double prev_slope = 0.0;
    for (std::size_t i = 1; i < xs.size(); ++i) {
        const double slope = (hs[i] - hs[i - 1]) / (xs[i] - xs[i - 1]);
        if (i > 1)
            detail::track(v, (slope - prev_slope) / detail::rel_scale(slope, prev_slope), xs[i - 1]);
        prev_slope = slope;
    }
    detail::finish(v, tol::kConvexity);
    return v;
}

/// Lorenz curve L(u) = (1/E) int_0^u Q(t) dt.
template <Distribution D>
std::optional<std::vector<double>> lorenz_curve(const D& d, const ProbGrid& grid)
{
    const double m = detail::mean(d);
    if (!std::isfinite(m) || !(m > 0.0))
        return std::nullopt;
    auto partial = detail::lower_quantile_integrals(d, grid);
    for (auto& val : partial.values)
        val /= m;
    return std::move(partial.values);
}

/// Lorenz order: L_F(u) >= L_G(u) on the grid.
template <Distribution F, Distribution G>
OrderVerdict check_lorenz(const F& f, const G& g, const ProbGrid& grid = {})
{
    auto v = detail::start_verdict(OrderKind::Lorenz, grid, true);
    const auto lf = lorenz_curve(f, grid);
    const auto lg = lorenz_curve(g, grid);
    if (!lf || !lg) {
        v.applicable = false;
        v.note = "mean is not finite";
        v.worst_margin = 0.0;
        v.holds = false;
        return v;
    }
    for (std::size_t i = 0; i < grid.size(); ++i)
        detail::track(v, (*lf)[i] - (*lg)[i], grid[i]);
    detail::finish(v, tol::kMonotone);
    return v;
}

template <Distribution F, Distribution G>
OrderVerdict check_order(OrderKind k, const F& f, const G& g, const ProbGrid& grid = {})
{
    switch (k) {
    case OrderKind::St: return check_st(f, g, grid);
    case OrderKind::Hr: return check_hr(f, g, grid);
    case OrderKind::Lr: return check_lr(f, g, grid);
    case OrderKind::Disp: return check_disp(f, g, grid);
    case OrderKind::Rs: return check_rs(f, g, grid);
    case OrderKind::ConvexTransform: return check_convex_transform(f, g, grid);
    case OrderKind::Lorenz: return check_lorenz(f, g, grid);
    }
    return {};
}

} // namespace enhorder
