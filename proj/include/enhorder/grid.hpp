#pragma once

#include "numeric.hpp"

#include <span>
#include <stdexcept>
#include <vector>

namespace enhorder
{

/// Strictly increasing probabilities inside (0, 1). All grid-based checks in
/// the library certify their verdicts only over the points held here.
class ProbGrid
{
  public:
    static constexpr std::size_t kDefaultPoints = 512;
    static constexpr double kDefaultMin = 1e-4;
    static constexpr double kDefaultMax = 1.0 - 1e-4;

    ProbGrid() : ProbGrid(uniform(kDefaultPoints, kDefaultMin, kDefaultMax)) {}

    explicit ProbGrid(std::vector<double> u) : u_(std::move(u))
    {
        if (u_.size() < 2)
            throw std::invalid_argument("probability grid needs at least 2 points");
        if (!numeric::strictly_increasing(u_))
            throw std::invalid_argument("probability grid must be strictly increasing");
        if (!(u_.front() > 0.0) || !(u_.back() < 1.0))
            throw std::invalid_argument("probability grid must lie inside (0, 1)");
    }

    static ProbGrid uniform(std::size_t points, double u_min = kDefaultMin, double u_max = kDefaultMax)
    {
        if (points < 2)
            throw std::invalid_argument("grid_points must be >= 2");
        if (!(u_min > 0.0 && u_min < u_max && u_max < 1.0))
            throw std::invalid_argument("u_min/u_max must satisfy 0 < u_min < u_max < 1");
        return ProbGrid(numeric::linspace(u_min, u_max, points));
    }

    /// Same range, twice the resolution.
    ProbGrid refined() const { return uniform(2 * u_.size(), u_.front(), u_.back()); }

    std::span<const double> values() const { return u_; }
    std::size_t size() const { return u_.size(); }
    double front() const { return u_.front(); }
    double back() const { return u_.back(); }
    double operator[](std::size_t i) const { return u_[i]; }
    auto begin() const { return u_.begin(); }
    auto end() const { return u_.end(); }

  private:
    std::vector<double> u_;
};

} // namespace enhorder
