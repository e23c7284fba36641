#include "mmaf/moments.hpp"

#include <algorithm>
#include <cmath>

#include "mmaf/error.hpp"

namespace mmaf {

void validate(const StouModel& model)
{
    require(model.A > 0.0 && std::isfinite(model.A), ErrorKind::invalid_parameter, "stou: A must be positive");
    require(model.c > 0.0 && std::isfinite(model.c), ErrorKind::invalid_parameter, "stou: c must be positive");
    validate(model.seed);
}

void validate(const MstouGammaModel& model)
{
    require(model.alpha > 2.0, ErrorKind::invalid_parameter, "mstou: alpha must exceed 2");
    require(model.beta > 0.0, ErrorKind::invalid_parameter, "mstou: beta must be positive");
    require(model.c > 0.0, ErrorKind::invalid_parameter, "mstou: c must be positive");
    require(model.var_seed > 0.0, ErrorKind::invalid_parameter, "mstou: var_seed must be positive");
}

double stou_corr(const StouModel& model, double tau, double u)
{
    validate(model);
    return std::min(std::exp(-model.A * std::abs(tau)), std::exp(-model.A * std::abs(u) / model.c));
}

double stou_variance(const StouModel& model)
{
    validate(model);
    return seed_moments(model.seed).variance * model.c / (2.0 * model.A * model.A);
}

double stou_cov(const StouModel& model, double tau, double u)
{
    return stou_variance(model) * stou_corr(model, tau, u);
}

double mstou_cov(const MstouGammaModel& model, double tau, double u)
{
    validate(model);
    const double a = model.alpha;
    const double lag = std::max(std::abs(tau), std::abs(u) / model.c);
    return model.var_seed * model.c * std::pow(model.beta, a)
           / (2.0 * std::pow(model.beta + lag, a - 2.0) * (a - 2.0) * (a - 1.0));
}

double mstou_corr(const MstouGammaModel& model, double tau, double u)
{
    validate(model);
    const double lag = std::max(std::abs(tau), std::abs(u) / model.c);
    return std::pow(model.beta / (model.beta + lag), model.alpha - 2.0);
}

double variogram_theoretical(const StouModel& model, double lag, Axis axis)
{
    validate(model);
    const double scaled = axis == Axis::time ? std::abs(lag) : std::abs(lag) / model.c;
    return 2.0 * (1.0 - std::exp(-model.A * scaled));
}

}  // namespace mmaf
