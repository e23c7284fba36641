#include "mmaf/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mmaf/error.hpp"

namespace mmaf {

double empirical_variance(const RasterCube& cube)
{
    require(cube.size() >= 2, ErrorKind::insufficient_data, "empirical_variance: need at least 2 values");
    double s = 0.0;
    for (double v : cube.values)
        s += v * v;
    return s / static_cast<double>(cube.size() - 1);
}

namespace {

int lag_steps(double lag, double step, const char* axis)
{
    require(lag >= 0.0 && std::isfinite(lag), ErrorKind::non_multiple_lag,
            std::string("variogram: ") + axis + " lag must be finite and non-negative");
    const double n = lag / step;
    const double rn = std::round(n);
    require(std::abs(n - rn) <= 1e-9 * std::max(1.0, n), ErrorKind::non_multiple_lag,
            std::string("variogram: ") + axis + " lag " + std::to_string(lag) + " is not a multiple of "
                + std::to_string(step));
    return static_cast<int>(rn);
}

}  // namespace

double empirical_variogram(const RasterCube& cube, double lag, Axis axis)
{
    const bool time = axis == Axis::time;
    const int n = lag_steps(lag, time ? cube.h_t : cube.h_s, time ? "time" : "space");
    const int extent = time ? cube.n_t : cube.n_x;
    require(n < extent && cube.size() > 0, ErrorKind::empty_pair_set,
            "variogram: no pairs at lag " + std::to_string(lag));
    const double k2 = empirical_variance(cube);
    if (n == 0)
        return 0.0;
    require(k2 > 0.0, ErrorKind::estimation_failure, "variogram: zero empirical variance");

    double s = 0.0;
    std::size_t pairs = 0;
    if (time) {
        for (int i = 0; i + n < cube.n_t; ++i)
            for (int j = 0; j < cube.n_x; ++j) {
                const double d = cube.at(i + n, j) - cube.at(i, j);
                s += d * d;
            }
        pairs = static_cast<std::size_t>(cube.n_t - n) * cube.n_x;
    } else {
        for (int i = 0; i < cube.n_t; ++i)
            for (int j = 0; j + n < cube.n_x; ++j) {
                const double d = cube.at(i, j + n) - cube.at(i, j);
                s += d * d;
            }
        pairs = static_cast<std::size_t>(cube.n_x - n) * cube.n_t;
    }
    return s / static_cast<double>(pairs) / k2;
}

EstimationReport estimate_from_variograms(double vario_t, double vario_s, double tau, double u, double k2)
{
    require(tau > 0.0 && u > 0.0, ErrorKind::invalid_parameter, "estimation: lags must be positive");
    const double at = 1.0 - vario_t / 2.0;
    const double as = 1.0 - vario_s / 2.0;
    require(at > 0.0 && as > 0.0, ErrorKind::estimation_failure, "estimation: empirical variogram at or above the sill");
    EstimationReport r;
    r.tau = tau;
    r.u = u;
    r.k2_hat = k2;
    r.vario_t = vario_t;
    r.vario_s = vario_s;
    r.A_hat = -std::log(at) / tau;
    require(r.A_hat > 0.0 && std::isfinite(r.A_hat), ErrorKind::estimation_failure,
            "estimation: non-positive A estimate " + std::to_string(r.A_hat));
    r.c_hat = -r.A_hat * u / std::log(as);
    require(r.c_hat > 0.0 && std::isfinite(r.c_hat), ErrorKind::estimation_failure,
            "estimation: non-positive c estimate " + std::to_string(r.c_hat));
    r.lambda_hat = r.A_hat * std::min(2.0, r.c_hat) / (2.0 * r.c_hat);
    r.var_seed_hat = 2.0 * k2 * r.A_hat * r.A_hat / r.c_hat;
    return r;
}

EstimationReport estimate_parameters(const RasterCube& cube, double tau, double u)
{
    const double vt = empirical_variogram(cube, tau, Axis::time);
    const double vs = empirical_variogram(cube, u, Axis::space);
    return estimate_from_variograms(vt, vs, tau, u, empirical_variance(cube));
}

}  // namespace mmaf
