#include "mmaf/levy.hpp"

#include <cmath>
#include <string>

#include "mmaf/error.hpp"

namespace mmaf {

namespace {

double gamma_bar(const NigSeed& s)
{
    return std::sqrt(s.alpha * s.alpha - s.beta * s.beta);
}

}  // namespace

void validate(const SeedDistribution& seed)
{
    if (const auto* g = std::get_if<GaussianSeed>(&seed)) {
        require(std::isfinite(g->mu), ErrorKind::invalid_parameter, "gaussian seed: mu must be finite");
        require(g->sigma > 0.0 && std::isfinite(g->sigma), ErrorKind::invalid_parameter,
                "gaussian seed: sigma must be positive");
        return;
    }
    const auto& n = std::get<NigSeed>(seed);
    require(n.alpha > 0.0 && std::isfinite(n.alpha), ErrorKind::invalid_parameter, "nig seed: alpha must be positive");
    require(std::abs(n.beta) < n.alpha, ErrorKind::invalid_parameter, "nig seed: need |beta| < alpha");
    require(n.delta > 0.0 && std::isfinite(n.delta), ErrorKind::invalid_parameter, "nig seed: delta must be positive");
    require(std::isfinite(n.mu), ErrorKind::invalid_parameter, "nig seed: mu must be finite");
}

SeedMoments seed_moments(const SeedDistribution& seed)
{
    validate(seed);
    if (const auto* g = std::get_if<GaussianSeed>(&seed))
        return {g->mu, g->sigma * g->sigma};
    const auto& n = std::get<NigSeed>(seed);
    const double gb = gamma_bar(n);
    return {n.mu + n.delta * n.beta / gb, n.delta * n.alpha * n.alpha / (gb * gb * gb)};
}

double sample_inverse_gaussian(double mean, double shape, RandomStream& rng)
{
    const double nu = rng.normal();
    const double y = nu * nu;
    // Smaller root of the quadratic, written without cancellation for large w.
    const double w = mean * y / (2.0 * shape);
    const double x = mean / (1.0 + w + std::sqrt(w * w + 2.0 * w));
    // Root selection: keep x with probability mean / (mean + x).
    if (rng.uniform() * (mean + x) <= mean)
        return x;
    return mean * mean / x;
}

double sample_increment(const SeedDistribution& seed, double measure, RandomStream& rng)
{
    if (!(measure >= 0.0 && std::isfinite(measure)))
        throw Error(ErrorKind::invalid_parameter,
                    "cell measure must be finite and non-negative, got " + std::to_string(measure));
    if (measure == 0.0)
        return 0.0;
    if (const auto* g = std::get_if<GaussianSeed>(&seed))
        return g->mu * measure + g->sigma * std::sqrt(measure) * rng.normal();
    const auto& n = std::get<NigSeed>(seed);
    const double dv = n.delta * measure;
    const double v = sample_inverse_gaussian(dv / gamma_bar(n), dv * dv, rng);
    return n.mu * measure + n.beta * v + std::sqrt(v) * rng.normal();
}

}  // namespace mmaf
