#include "mmaf/field_sim.hpp"

#include <cmath>
#include <string>

#include "mmaf/error.hpp"

namespace mmaf {

void validate(const SimConfig& cfg)
{
    validate(cfg.model);
    require(cfg.h_t > 0.0 && cfg.h_s > 0.0, ErrorKind::invalid_parameter, "simulation: steps must be positive");
    require(cfg.n_t >= 1 && cfg.n_x >= 1, ErrorKind::invalid_parameter, "simulation: need n_t >= 1 and n_x >= 1");
    require(cfg.tail_tol > 0.0 && cfg.tail_tol < 1.0, ErrorKind::invalid_parameter,
            "simulation: tail_tol must lie in (0, 1)");
    require(std::isfinite(cfg.t0) && std::isfinite(cfg.x0), ErrorKind::invalid_parameter,
            "simulation: origin must be finite");
}

double truncation_depth(double A, double tail_tol)
{
    require(A > 0.0, ErrorKind::invalid_parameter, "truncation_depth: A must be positive");
    require(tail_tol > 0.0 && tail_tol < 1.0, ErrorKind::invalid_parameter, "truncation_depth: tail_tol must lie in (0, 1)");
    return -std::log(tail_tol) / A;
}

namespace {

constexpr double kLatticeSlack = 1e-9;

struct Steps {
    int t;
    int s;
    double hp;
};

// Smallest h' with c*h_t = t*h' and h_s = s*h' for integers t, s.
Steps commensurate_steps(double c, double h_t, double h_s)
{
    const double ratio = h_s / (c * h_t);
    for (int t = 1; t <= 64; ++t) {
        const double s = t * ratio;
        const double rs = std::round(s);
        if (rs >= 1.0 && std::abs(s - rs) <= 1e-9 * s)
            return {t, static_cast<int>(rs), h_s / rs};
    }
    throw Error(ErrorKind::invalid_parameter,
                "simulation: h_s / (c h_t) = " + std::to_string(ratio)
                    + " is not a ratio of integers up to 64; the light-cone lattice needs commensurate steps");
}

}  // namespace

std::vector<AmbitCell> ambit_cells(double t, double x, const StouModel& model, double h_t, double h_s,
                                   double tail_tol, CellScheme scheme)
{
    validate(model);
    require(h_t > 0.0 && h_s > 0.0, ErrorKind::invalid_parameter, "ambit_cells: steps must be positive");
    const double tmax = truncation_depth(model.A, tail_tol);
    const double A = model.A;
    const double c = model.c;
    std::vector<AmbitCell> cells;

    if (scheme == CellScheme::rectangular) {
        const long depth = static_cast<long>(std::floor(tmax / h_t + kLatticeSlack));
        for (long i = 0; i <= depth; ++i) {
            const double lag = i * h_t;
            const long half = static_cast<long>(std::floor(c * lag / h_s + kLatticeSlack));
            for (long j = -half; j <= half; ++j)
                cells.push_back({t - lag, x + j * h_s, h_t * h_s, std::exp(-A * lag)});
        }
        return cells;
    }

    const Steps st = commensurate_steps(c, h_t, h_s);
    const double q = A * st.hp / (2.0 * c);
    const double weight = std::sinh(q) / q;
    const double measure = st.hp * st.hp / (2.0 * c);
    // Cell (a, b), a, b >= 1, lies a - 1/2 and b - 1/2 sides below the vertex
    // along the two light-cone axes.
    const long max_sum = static_cast<long>(std::floor(2.0 * c * tmax / st.hp + kLatticeSlack)) + 1;
    for (long n = 2; n <= max_sum; ++n) {
        const double lag = (n - 1) * st.hp / (2.0 * c);
        for (long a = 1; a < n; ++a) {
            const long b = n - a;
            cells.push_back({t - lag, x + (a - b) * st.hp / 2.0, measure, weight * std::exp(-A * lag)});
        }
    }
    return cells;
}

DiamondPlan make_diamond_plan(const SimConfig& cfg)
{
    validate(cfg);
    const double c = cfg.model.c;
    const Steps st = commensurate_steps(c, cfg.h_t, cfg.h_s);
    DiamondPlan p;
    p.hp = st.hp;
    p.steps_t = st.t;
    p.steps_s = st.s;
    const double q = cfg.model.A * st.hp / (2.0 * c);
    p.rho = std::exp(-q);
    p.weight = std::sinh(q) / q;
    p.cell_measure = st.hp * st.hp / (2.0 * c);

    const double row_dt = st.hp / (2.0 * c);
    const double tmax = truncation_depth(cfg.model.A, cfg.tail_tol);
    long first = static_cast<long>(std::ceil(tmax / row_dt - kLatticeSlack));
    first += first % 2;  // output vertices sit on even rows
    p.first_output_row = first;
    p.rows = p.output_row(cfg.n_t - 1) + 1;
    // Boundary error travels one column every two rows.
    p.margin = p.rows / 2 + 2;
    p.width = 2 * p.margin + static_cast<long>(st.s) * (cfg.n_x - 1) + 1;
    return p;
}

void run_diamond(const DiamondPlan& plan, const std::function<void(long, std::span<double>)>& fill_row,
                 const std::function<void(long, std::span<const double>)>& on_row)
{
    const long K = plan.width;
    std::vector<double> prev2(K, 0.0), prev1(K, 0.0), cur(K, 0.0), cells(K, 0.0);
    const double rho = plan.rho;
    const double rho2 = rho * rho;
    const double src = plan.weight * rho;
    for (long r = 0; r < plan.rows; ++r) {
        std::fill(cells.begin(), cells.end(), 0.0);
        fill_row(r, cells);
        // Column k of row r has offset d = 2k + (r & 1); its two parents on
        // row r-1 are (k, k+1) for odd r and (k-1, k) for even r.
        const long shift = (r & 1) ? 0 : -1;
        for (long k = 0; k < K; ++k) {
            const long l = k + shift;
            const double left = l >= 0 ? prev1[l] : 0.0;
            const double right = l + 1 < K ? prev1[l + 1] : 0.0;
            cur[k] = src * cells[k] + rho * (left + right) - rho2 * prev2[k];
        }
        on_row(r, cur);
        std::swap(prev2, prev1);
        std::swap(prev1, cur);
    }
}

RasterCube simulate_stou(const SimConfig& cfg)
{
    const DiamondPlan plan = make_diamond_plan(cfg);
    const std::size_t held = 4 * static_cast<std::size_t>(plan.width)
                             + static_cast<std::size_t>(cfg.n_t) * static_cast<std::size_t>(cfg.n_x);
    require(held <= cfg.max_memory_values, ErrorKind::memory_budget,
            "simulation needs " + std::to_string(held) + " values in memory, cap is "
                + std::to_string(cfg.max_memory_values));

    RasterCube cube(cfg.n_t, cfg.n_x, cfg.h_t, cfg.h_s, cfg.t0, cfg.x0);
    const auto& seed = cfg.model.seed;
    // Centering the seed makes the field mean zero; a no-op for symmetric seeds.
    const double centre = seed_moments(seed).mean * plan.cell_measure;
    const RandomStream root(cfg.rng_seed);

    run_diamond(
        plan,
        [&](long r, std::span<double> cells) {
            RandomStream rng = root.split(static_cast<std::uint64_t>(r));
            for (double& v : cells)
                v = sample_increment(seed, plan.cell_measure, rng) - centre;
        },
        [&](long r, std::span<const double> z) {
            const long rel = r - plan.first_output_row;
            if (rel < 0 || rel % (2L * plan.steps_t) != 0)
                return;
            const int frame = static_cast<int>(rel / (2L * plan.steps_t));
            for (int j = 0; j < cfg.n_x; ++j)
                cube.at(frame, j) = z[plan.output_col(j)];
        });
    return cube;
}

}  // namespace mmaf
