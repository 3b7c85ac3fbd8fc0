#pragma once

// Archimedean generators phi with inverse psi, and the copula
//   C(u_1, ..., u_n) = phi(psi(u_1) + ... + psi(u_n)).
// Built-in strict families:
//   Independence  phi(t) = exp(-t)
//   Gumbel(theta) phi(t) = exp(-t^(1/theta)),  theta >= 1
//   Clayton(theta) phi(t) = (1 + t)^(-1/theta), theta > 0

#include "numeric.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <type_traits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace enhorder
{

class ArchGenerator
{
  public:
    enum class Family { Independence, Gumbel, Clayton };

    ArchGenerator() = default;

    static ArchGenerator independence() { return {}; }
    static ArchGenerator gumbel(double theta) { return ArchGenerator(Family::Gumbel, theta); }
    static ArchGenerator clayton(double theta) { return ArchGenerator(Family::Clayton, theta); }

    Family family() const { return family_; }
    double theta() const { return theta_; }

    std::string name() const
    {
        switch (family_) {
        case Family::Gumbel: return "gumbel(" + format_theta() + ")";
        case Family::Clayton: return "clayton(" + format_theta() + ")";
        default: return "independence";
        }
    }

    /// log phi(t), exact in the right tail where phi itself underflows.
    double log_phi(double t) const
    {
        numeric::require_nonnegative(t, "t");
        switch (family_) {
        case Family::Gumbel: return -std::pow(t, 1.0 / theta_);
        case Family::Clayton: return -std::log1p(t) / theta_;
        default: return -t;
        }
    }

    double phi(double t) const { return std::exp(log_phi(t)); }

    /// phi'(t), always <= 0.
    double phi_prime(double t) const
    {
        numeric::require_nonnegative(t, "t");
        switch (family_) {
        case Family::Gumbel:
            if (t == 0.0)
                return theta_ == 1.0 ? -1.0 : -kInf;
            return -std::pow(t, 1.0 / theta_ - 1.0) / theta_ * phi(t);
        case Family::Clayton: return -std::pow(1.0 + t, -1.0 / theta_ - 1.0) / theta_;
        default: return -std::exp(-t);
        }
    }

    /// psi(u) given log u, for u in (0, 1].
    double psi_from_log(double log_u) const
    {
        if (!(log_u <= 0.0))
            throw std::domain_error("psi argument must lie in (0, 1]");
        switch (family_) {
        case Family::Gumbel: return std::pow(-log_u, theta_);
        case Family::Clayton: return std::expm1(-theta_ * log_u);
        default: return -log_u;
        }
    }

    /// Inverse of phi on (0, 1]; psi(0) = +inf.
    double psi(double u) const
    {
        if (!(u >= 0.0 && u <= 1.0))
            throw std::domain_error("psi argument must lie in (0, 1], got " + std::to_string(u));
        if (u == 0.0)
            return kInf;
        return psi_from_log(std::log(u));
    }

    friend bool operator==(const ArchGenerator&, const ArchGenerator&) = default;

  private:
    ArchGenerator(Family f, double theta) : family_(f), theta_(theta)
    {
        if (f == Family::Gumbel && !(theta >= 1.0 && std::isfinite(theta)))
            throw std::domain_error("gumbel theta must be >= 1, got " + std::to_string(theta));
        if (f == Family::Clayton && !(theta > 0.0 && std::isfinite(theta)))
            throw std::domain_error("clayton theta must be > 0, got " + std::to_string(theta));
    }

    std::string format_theta() const
    {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", theta_);
        return buf;
    }

    Family family_ = Family::Independence;
    double theta_ = 1.0;
};

inline double gen_phi(const ArchGenerator& g, double t) { return g.phi(t); }
inline double gen_psi(const ArchGenerator& g, double u)
{
    if (u == 0.0)
        throw std::domain_error("psi argument must lie in (0, 1], got 0");
    return g.psi(u);
}

// ---------------------------------------------------------------------------
// n-monotonicity

struct MonotoneReport
{
    bool n_monotone = true;
    std::optional<double> witness; ///< left end of the first failing stencil
    int failing_order = -1;        ///< derivative order whose sign condition failed
};

/// Default abscissae for n-monotonicity scans.
inline std::vector<double> default_monotone_grid() { return numeric::logspace(1e-2, 1e2, 64); }

/// Numerical n-monotonicity: (-1)^k phi^(k) >= 0 for k <= n-2, with
/// (-1)^(n-2) phi^(n-2) decreasing and convex. The k-th divided difference
/// equals phi^(k)(xi)/k! for some xi in its stencil, so the conditions reduce
/// to (-1)^k D_k >= -tol for k = 0..n. The tolerance is 1e-8 plus a
/// propagated rounding bound for each divided difference.
template <typename Phi>
    requires std::is_invocable_r_v<double, Phi, double>
MonotoneReport check_n_monotone(Phi&& phi, int n, std::span<const double> grid)
{
    if (n < 2)
        throw std::invalid_argument("n-monotonicity needs n >= 2");
    if (!numeric::strictly_increasing(grid))
        throw std::invalid_argument("n-monotonicity grid must be strictly increasing");

    constexpr double eps = std::numeric_limits<double>::epsilon();
    std::vector<double> d(grid.size()), err(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        d[i] = phi(grid[i]);
        err[i] = 4.0 * eps * std::abs(d[i]);
    }

    MonotoneReport report;
    for (int k = 0; k <= n && static_cast<std::size_t>(k) < grid.size(); ++k) {
        if (k > 0) {
            for (std::size_t i = 0; i + k < grid.size(); ++i) {
                const double span = grid[i + k] - grid[i];
                d[i] = (d[i + 1] - d[i]) / span;
                err[i] = (err[i + 1] + err[i]) / span + eps * std::abs(d[i]);
            }
        }
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        for (std::size_t i = 0; i + k < grid.size(); ++i) {
            if (sign * d[i] < -(1e-8 + 8.0 * err[i])) {
                report.n_monotone = false;
                report.witness = grid[i];
                report.failing_order = k;
                return report;
            }
        }
    }
    return report;
}

inline MonotoneReport check_n_monotone(const ArchGenerator& g, int n,
                                       std::span<const double> grid)
{
    return check_n_monotone([&g](double t) { return g.phi(t); }, n, grid);
}

inline MonotoneReport check_n_monotone(const ArchGenerator& g, int n)
{
    const auto grid = default_monotone_grid();
    return check_n_monotone(g, n, grid);
}

// ---------------------------------------------------------------------------
// Super-additivity of psi_outer o phi_inner

struct CompositionReport
{
    bool super_additive = true;
    /// min over the scanned pairs of (f(x+y) - f(x) - f(y)) / max(1, |f(x+y)|)
    double worst_margin = kInf;
    std::pair<double, double> witness{0.0, 0.0};
    double scan_min = 0.0;
    double scan_max = 0.0;
};

inline constexpr double kSuperAdditiveTol = 1e-10;

inline std::vector<double> default_super_additive_grid() { return numeric::logspace(1e-4, 1e4, 64); }

/// Scans f = psi_outer o phi_inner over all pairs of grid points. The
/// composition goes through log phi so that it stays exact where phi
/// underflows.
inline CompositionReport check_super_additive(const ArchGenerator& outer, const ArchGenerator& inner,
                                              std::span<const double> grid)
{
    if (grid.empty())
        throw std::invalid_argument("super-additivity grid is empty");
    for (double v : grid)
        if (!(v > 0.0))
            throw std::invalid_argument("super-additivity grid must be positive");

    // identical generators compose to the identity exactly
    const bool identity = outer == inner;
    auto f = [&](double t) { return identity ? t : outer.psi_from_log(inner.log_phi(t)); };

    CompositionReport r;
    r.scan_min = grid.front();
    r.scan_max = grid.back();
    std::vector<double> fv(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        fv[i] = f(grid[i]);

    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t j = i; j < grid.size(); ++j) {
            const double fxy = f(grid[i] + grid[j]);
            const double parts = fv[i] + fv[j];
            double margin;
            if (std::isfinite(fxy) && std::isfinite(parts))
                margin = (fxy - parts) / std::max(1.0, std::abs(fxy));
            else if (!std::isfinite(fxy) && std::isfinite(parts))
                margin = 1.0;
            else
                continue;
            if (margin < r.worst_margin) {
                r.worst_margin = margin;
                r.witness = {grid[i], grid[j]};
            }
        }
    }
    r.super_additive = r.worst_margin >= -kSuperAdditiveTol;
    return r;
}

inline CompositionReport check_super_additive(const ArchGenerator& outer, const ArchGenerator& inner)
{
    const auto grid = default_super_additive_grid();
    return check_super_additive(outer, inner, grid);
}

// ---------------------------------------------------------------------------

/// phi(sum psi(u_i)).
inline double copula_value(const ArchGenerator& g, std::span<const double> u)
{
    double s = 0.0;
    for (double ui : u) {
        if (!(ui >= 0.0 && ui <= 1.0))
            throw std::domain_error("copula argument must lie in [0, 1], got " + std::to_string(ui));
        s += g.psi(ui);
    }
    return s == kInf ? 0.0 : g.phi(s);
}

} // namespace enhorder
