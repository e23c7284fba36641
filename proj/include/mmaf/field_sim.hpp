#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "mmaf/moments.hpp"
#include "mmaf/raster.hpp"

namespace mmaf {

struct SimConfig {
    StouModel model;
    double h_t = 0.05;
    double h_s = 0.05;
    int n_t = 100;
    int n_x = 21;
    double t0 = 0.0;
    double x0 = 0.0;
    double tail_tol = 1e-4;
    std::uint64_t rng_seed = 0;
    // Cap on values held in memory at once (rolling window plus output cube).
    std::size_t max_memory_values = 400'000'000;
};

void validate(const SimConfig& cfg);

double truncation_depth(double A, double tail_tol);

enum class CellScheme { rectangular, diamond };

struct AmbitCell {
    double s;
    double xi;
    double measure;
    double kernel;
};

// Cells of the truncated ambit cone of (t, x). The rectangular scheme uses
// h_t x h_s cells centered on the lattice through (t, x) with the kernel at
// the center. The diamond scheme returns the cells the simulator actually
// integrates over: squares in light-cone coordinates with side h' and measure
// h'^2/(2c), the center kernel scaled so each cell carries the exact second
// moment of its kernel.
std::vector<AmbitCell> ambit_cells(double t, double x, const StouModel& model, double h_t, double h_s,
                                   double tail_tol, CellScheme scheme = CellScheme::rectangular);

// Geometry of the light-cone lattice used by simulate_stou.
struct DiamondPlan {
    double hp = 0.0;          // side h' in light-cone coordinates
    int steps_t = 1;          // c*h_t = steps_t * h'
    int steps_s = 1;          // h_s = steps_s * h'
    double rho = 0.0;         // exp(-A h' / (2c)), kernel ratio per half row
    double weight = 0.0;      // second-moment correction sinh(q)/q
    double cell_measure = 0.0;
    long rows = 0;            // rows 0 .. rows-1, each h'/(2c) apart in time
    long width = 0;           // vertices per row
    long first_output_row = 0;
    long margin = 0;          // column of pixel 0

    long output_row(int frame) const { return first_output_row + 2L * steps_t * frame; }
    long output_col(int pixel) const { return margin + static_cast<long>(steps_s) * pixel; }
};

DiamondPlan make_diamond_plan(const SimConfig& cfg);

// Runs the diamond recursion. `fill_row(r, cells)` must write the raw
// increments of the cells just below row r; `on_row(r, z)` sees the field on
// row r. Values outside the lattice are zero.
void run_diamond(const DiamondPlan& plan, const std::function<void(long, std::span<double>)>& fill_row,
                 const std::function<void(long, std::span<const double>)>& on_row);

RasterCube simulate_stou(const SimConfig& cfg);

}  // namespace mmaf
