#pragma once

#include <cstddef>
#include <vector>

namespace mmaf {

// Field values on a regular (time x space) lattice, row-major by time.
// Row i sits at t0 + i*h_t, column j at x0 + j*h_s.
struct RasterCube {
    int n_t = 0;
    int n_x = 0;
    double h_t = 1.0;
    double h_s = 1.0;
    double t0 = 0.0;
    double x0 = 0.0;
    std::vector<double> values;

    RasterCube() = default;
    RasterCube(int n_t, int n_x, double h_t, double h_s, double t0 = 0.0, double x0 = 0.0);

    double& at(int i, int j) { return values[static_cast<std::size_t>(i) * n_x + j]; }
    double at(int i, int j) const { return values[static_cast<std::size_t>(i) * n_x + j]; }

    double time(int i) const { return t0 + i * h_t; }
    double space(int j) const { return x0 + j * h_s; }
    std::size_t size() const { return values.size(); }

    // First `rows` frames.
    RasterCube head(int rows) const;
    // Frames [first, first + rows).
    RasterCube slice(int first, int rows) const;
};

}  // namespace mmaf
