#pragma once

#include "mmaf/moments.hpp"
#include "mmaf/raster.hpp"

namespace mmaf {

struct EstimationReport {
    double A_hat = 0.0;
    double c_hat = 0.0;
    double lambda_hat = 0.0;
    double var_seed_hat = 0.0;
    double tau = 0.0;
    double u = 0.0;
    double k2_hat = 0.0;
    double vario_t = 0.0;  // normalized empirical variogram at tau
    double vario_s = 0.0;  // normalized empirical variogram at u
};

// Sum of squares over D - 1; the field is taken to be zero mean.
double empirical_variance(const RasterCube& cube);

// Normalized empirical variogram at an integer multiple of h_t or h_s.
double empirical_variogram(const RasterCube& cube, double lag, Axis axis);

// Variogram matching at one time lag tau and one space lag u.
EstimationReport estimate_parameters(const RasterCube& cube, double tau, double u);

// The same map applied to given variogram values.
EstimationReport estimate_from_variograms(double vario_t, double vario_s, double tau, double u, double k2);

}  // namespace mmaf
