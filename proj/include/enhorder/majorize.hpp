#pragma once

// Majorization preorders on real vectors, compared through partial sums of
// the increasing arrangement x_(1) <= ... <= x_(n).
//
//   x weakly submajorized by y:   sum_{i>=j} x_(i) <= sum_{i>=j} y_(i)  for all j
//   x weakly supermajorized by y: sum_{i<=j} x_(i) >= sum_{i<=j} y_(i)  for all j
//   x majorized by y:             equal totals and the supermajorization
//                                 inequalities for j <= n-1
//
// Partial sums are compared with a relative slack of 1e-12 * n.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace enhorder
{

using RealVector = std::vector<double>;

enum class MajorizationRelation { Majorized, WeakSub, WeakSuper };

namespace detail
{

inline RealVector sorted_copy(std::span<const double> v)
{
    RealVector out(v.begin(), v.end());
    for (double x : out)
        if (!std::isfinite(x))
            throw std::invalid_argument("majorization vectors must have finite entries");
    std::sort(out.begin(), out.end());
    return out;
}

inline void check_lengths(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size())
        throw std::invalid_argument("majorization needs vectors of equal length");
    if (x.empty())
        throw std::invalid_argument("majorization needs non-empty vectors");
}

inline double sum_slack(const RealVector& xs, const RealVector& ys)
{
    double mag = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i)
        mag += std::abs(xs[i]) + std::abs(ys[i]);
    return 1e-12 * static_cast<double>(xs.size()) * std::max(mag, 1e-300);
}

// true iff every prefix sum of xs (sorted) is >= that of ys, for j < upto
inline bool prefix_dominates(const RealVector& xs, const RealVector& ys, std::size_t upto, double slack)
{
    double px = 0.0, py = 0.0;
    for (std::size_t j = 0; j < upto; ++j) {
        px += xs[j];
        py += ys[j];
        if (px < py - slack)
            return false;
    }
    return true;
}

} // namespace detail

inline bool is_weak_supermajorized(std::span<const double> x, std::span<const double> y)
{
    detail::check_lengths(x, y);
    const auto xs = detail::sorted_copy(x), ys = detail::sorted_copy(y);
    return detail::prefix_dominates(xs, ys, xs.size(), detail::sum_slack(xs, ys));
}

inline bool is_weak_submajorized(std::span<const double> x, std::span<const double> y)
{
    detail::check_lengths(x, y);
    const auto xs = detail::sorted_copy(x), ys = detail::sorted_copy(y);
    const double slack = detail::sum_slack(xs, ys);
    double sx = 0.0, sy = 0.0;
    for (std::size_t j = xs.size(); j-- > 0;) {
        sx += xs[j];
        sy += ys[j];
        if (sx > sy + slack)
            return false;
    }
    return true;
}

inline bool is_majorized(std::span<const double> x, std::span<const double> y)
{
    detail::check_lengths(x, y);
    const auto xs = detail::sorted_copy(x), ys = detail::sorted_copy(y);
    const double slack = detail::sum_slack(xs, ys);
    double tx = 0.0, ty = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        tx += xs[i];
        ty += ys[i];
    }
    if (std::abs(tx - ty) > slack)
        return false;
    return detail::prefix_dominates(xs, ys, xs.size() - 1, slack);
}

/// Random pair (x, y) satisfying the requested relation "x <= y" with every
/// entry inside [lo, hi]. y is drawn uniformly; x comes from 1-5 Robin Hood
/// transfers applied to y (which can only make it more equal), then for the
/// weak relations each entry is pushed down (WeakSub) or up (WeakSuper).
/// Deterministic for a given seed.
inline std::pair<RealVector, RealVector> random_comparable_pair(std::size_t n, MajorizationRelation rel,
                                                                std::uint64_t seed, double lo = 0.1,
                                                                double hi = 5.0)
{
    if (n < 2)
        throw std::invalid_argument("random_comparable_pair needs n >= 2");
    if (!(lo > 0.0 && hi > lo && std::isfinite(hi)))
        throw std::invalid_argument("domain must satisfy 0 < lo < hi");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::uniform_int_distribution<int> transfers(1, 5);

    RealVector y(n);
    for (auto& v : y)
        v = lo + (hi - lo) * unit(rng);

    RealVector x = y;
    for (int t = transfers(rng); t > 0; --t) {
        const std::size_t i = pick(rng), j = pick(rng);
        if (x[i] == x[j])
            continue;
        const std::size_t rich = x[i] > x[j] ? i : j, poor = rich == i ? j : i;
        // moving at most half the gap keeps the donor at least as large
        const double delta = 0.5 * (x[rich] - x[poor]) * unit(rng);
        x[rich] -= delta;
        x[poor] += delta;
    }

    if (rel == MajorizationRelation::WeakSuper) {
        for (auto& v : x)
            v += (hi - v) * 0.5 * unit(rng);
    } else if (rel == MajorizationRelation::WeakSub) {
        for (auto& v : x)
            v -= (v - lo) * 0.5 * unit(rng);
    }
    std::shuffle(x.begin(), x.end(), rng);
    return {std::move(x), std::move(y)};
}

} // namespace enhorder
