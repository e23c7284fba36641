#pragma once

#include "mmaf/levy.hpp"

namespace mmaf {

// Spatio-temporal OU field on a 1-D space: exponential kernel exp(-A(t - s))
// integrated over the light cone |x - xi| <= c (t - s).
struct StouModel {
    double A = 1.0;
    double c = 1.0;
    SeedDistribution seed = GaussianSeed{};
};

// Mixed STOU: the rate A is Gamma(alpha, beta) distributed.
struct MstouGammaModel {
    double alpha = 3.0;
    double beta = 1.0;
    double c = 1.0;
    double var_seed = 1.0;
};

enum class Axis { time, space };

void validate(const StouModel& model);
void validate(const MstouGammaModel& model);

double stou_corr(const StouModel& model, double tau, double u);
double stou_variance(const StouModel& model);
double stou_cov(const StouModel& model, double tau, double u);

double mstou_cov(const MstouGammaModel& model, double tau, double u);
double mstou_corr(const MstouGammaModel& model, double tau, double u);

// Normalized variogram 2(1 - corr) along one axis.
double variogram_theoretical(const StouModel& model, double lag, Axis axis);

}  // namespace mmaf
