#pragma once

#include <variant>

#include "mmaf/random.hpp"

namespace mmaf {

struct GaussianSeed {
    double mu = 0.0;
    double sigma = 1.0;
};

// NIG(alpha, beta, mu, delta) with |beta| < alpha.
struct NigSeed {
    double alpha = 1.0;
    double beta = 0.0;
    double mu = 0.0;
    double delta = 1.0;
};

using SeedDistribution = std::variant<GaussianSeed, NigSeed>;

struct SeedMoments {
    double mean = 0.0;
    double variance = 0.0;
};

void validate(const SeedDistribution& seed);

SeedMoments seed_moments(const SeedDistribution& seed);

// Draws Lambda(B) for a cell B of Lebesgue measure `measure`.
double sample_increment(const SeedDistribution& seed, double measure, RandomStream& rng);

// Inverse Gaussian with the given mean and shape (Michael, Schucany & Haas).
double sample_inverse_gaussian(double mean, double shape, RandomStream& rng);

}  // namespace mmaf
