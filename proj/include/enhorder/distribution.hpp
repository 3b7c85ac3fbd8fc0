#pragma once

#include "numeric.hpp"

#include <cmath>
#include <concepts>
#include <functional>
#include <memory>
#include <string>
#include <utility>

namespace enhorder
{

/// Anything with a CDF, survival function, density and quantile on [0, inf).
template <typename D>
concept Distribution = requires(const D& d, double x) {
    { d.cdf(x) } -> std::convertible_to<double>;
    { d.sf(x) } -> std::convertible_to<double>;
    { d.pdf(x) } -> std::convertible_to<double>;
    { d.quantile(x) } -> std::convertible_to<double>;
};

// Accessors that prefer a type's log-domain members when it provides them.

template <Distribution D>
double log_sf(const D& d, double x)
{
    if constexpr (requires { { d.log_sf(x) } -> std::convertible_to<double>; })
        return d.log_sf(x);
    else
        return std::log(d.sf(x));
}

template <Distribution D>
double log_pdf(const D& d, double x)
{
    if constexpr (requires { { d.log_pdf(x) } -> std::convertible_to<double>; })
        return d.log_pdf(x);
    else
        return std::log(d.pdf(x));
}

/// f / (1 - F); +inf once the survival function underflows.
template <Distribution D>
double hazard(const D& d, double x)
{
    if constexpr (requires { { d.hazard(x) } -> std::convertible_to<double>; }) {
        return d.hazard(x);
    } else {
        const double ls = log_sf(d, x);
        if (ls == -kInf)
            return kInf;
        return std::exp(log_pdf(d, x) - ls);
    }
}

/// Type-erased distribution, used where the concrete family is chosen at run time.
class DistHandle
{
  public:
    using Fn = std::function<double(double)>;

    DistHandle() = default;

    template <Distribution D>
        requires(!std::same_as<std::remove_cvref_t<D>, DistHandle>)
    explicit DistHandle(D d, std::string name = {}) : name_(std::move(name))
    {
        auto shared = std::make_shared<const D>(std::move(d));
        cdf_ = [shared](double x) { return shared->cdf(x); };
        sf_ = [shared](double x) { return shared->sf(x); };
        pdf_ = [shared](double x) { return shared->pdf(x); };
        quantile_ = [shared](double u) { return shared->quantile(u); };
        log_sf_ = [shared](double x) { return enhorder::log_sf(*shared, x); };
        log_pdf_ = [shared](double x) { return enhorder::log_pdf(*shared, x); };
        hazard_ = [shared](double x) { return enhorder::hazard(*shared, x); };
    }

    double cdf(double x) const { return cdf_(x); }
    double sf(double x) const { return sf_(x); }
    double pdf(double x) const { return pdf_(x); }
    double quantile(double u) const { return quantile_(u); }
    double log_sf(double x) const { return log_sf_(x); }
    double log_pdf(double x) const { return log_pdf_(x); }
    double hazard(double x) const { return hazard_(x); }
    const std::string& name() const { return name_; }

  private:
    std::string name_;
    Fn cdf_, sf_, pdf_, quantile_, log_sf_, log_pdf_, hazard_;
};

} // namespace enhorder
