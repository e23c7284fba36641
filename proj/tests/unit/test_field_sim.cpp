#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "mmaf/error.hpp"
#include "mmaf/field_sim.hpp"

using namespace mmaf;

namespace {

SimConfig small_config(double A, std::uint64_t seed, int n_t = 400, int n_x = 41)
{
    SimConfig c;
    c.model = {A, 1.0, GaussianSeed{0.0, 0.5}};
    c.h_t = c.h_s = 0.05;
    c.n_t = n_t;
    c.n_x = n_x;
    c.rng_seed = seed;
    return c;
}

double pooled_variance(const RasterCube& cube)
{
    double s = 0.0;
    for (double v : cube.values)
        s += v * v;
    return s / static_cast<double>(cube.size());
}

double lag_autocorr(const RasterCube& cube, int lag_t, int lag_x)
{
    double num = 0.0, a = 0.0, b = 0.0;
    for (int i = 0; i + lag_t < cube.n_t; ++i)
        for (int j = 0; j + lag_x < cube.n_x; ++j) {
            num += cube.at(i, j) * cube.at(i + lag_t, j + lag_x);
            a += cube.at(i, j) * cube.at(i, j);
            b += cube.at(i + lag_t, j + lag_x) * cube.at(i + lag_t, j + lag_x);
        }
    return num / std::sqrt(a * b);
}

}  // namespace

TEST_SUITE("field_sim")
{
    TEST_CASE("rectangular ambit cells match brute-force enumeration")
    {
        const StouModel m{1.0, 1.0, GaussianSeed{}};
        // tail_tol chosen so T_max = 2.
        const auto cells = ambit_cells(0.0, 0.0, m, 1.0, 1.0, std::exp(-2.0));
        std::set<std::pair<long, long>> got;
        for (const auto& c : cells) {
            got.insert({std::lround(c.s), std::lround(c.xi)});
            CHECK(c.kernel == doctest::Approx(std::exp(c.s)));
            CHECK(c.measure == 1.0);
        }
        std::set<std::pair<long, long>> expected;
        for (long s = -5; s <= 0; ++s)
            for (long xi = -5; xi <= 5; ++xi)
                if (-s <= 2 && std::abs(xi) <= -s)
                    expected.insert({s, xi});
        CHECK(got == expected);
        CHECK(cells.size() == 9);
    }

    TEST_CASE("ambit cells cover the cone area c T_max^2")
    {
        const StouModel m{1.0, 1.0, GaussianSeed{}};
        for (auto scheme : {CellScheme::rectangular, CellScheme::diamond}) {
            std::vector<double> ratio;
            for (double tmax : {2.0, 4.0, 8.0}) {
                const auto cells = ambit_cells(0.0, 0.0, m, 0.05, 0.05, std::exp(-tmax), scheme);
                ratio.push_back(static_cast<double>(cells.size()) * cells.front().measure / (tmax * tmax));
            }
            CHECK(ratio[2] == doctest::Approx(ratio[1]).epsilon(0.02));
            CHECK(ratio[2] == doctest::Approx(1.0).epsilon(0.05));
        }
    }

    TEST_CASE("diamond cells integrate the exact stationary variance")
    {
        for (double A : {1.0, 4.0}) {
            const StouModel m{A, 1.0, GaussianSeed{0, 0.5}};
            double s = 0.0;
            for (const auto& c : ambit_cells(0.0, 0.0, m, 0.05, 0.05, 1e-8, CellScheme::diamond))
                s += c.kernel * c.kernel * c.measure * 0.25;
            CHECK(s == doctest::Approx(stou_variance(m)).epsilon(1e-6));
        }
    }

    TEST_CASE("recursion equals the explicit cell sum (impulse response)")
    {
        SimConfig cfg = small_config(4.0, 0, 6, 5);
        const DiamondPlan plan = make_diamond_plan(cfg);
        const long src_row = 7, src_col = plan.margin + 1;
        std::map<std::pair<long, long>, double> z;
        run_diamond(
            plan,
            [&](long r, std::span<double> cells) {
                if (r == src_row)
                    cells[src_col] = 1.0;
            },
            [&](long r, std::span<const double> row) {
                for (long k = 0; k < static_cast<long>(row.size()); ++k)
                    if (row[k] != 0.0)
                        z[{r, k}] = row[k];
            });
        // The cell below vertex (src_row, src_col) reaches vertex (r, k) iff
        // the vertex lies in its future light cone.
        const long d_src = 2 * src_col + (src_row & 1);
        int checked = 0;
        for (long r = src_row; r < std::min<long>(plan.rows, src_row + 40); ++r)
            for (long k = 0; k < plan.width; ++k) {
                const long dr = r - src_row;
                const long dd = 2 * k + (r & 1) - d_src;
                const bool inside = std::abs(dd) <= dr && plan.margin - 2 <= k && k <= plan.width - plan.margin + 1;
                if (!inside)
                    continue;
                const double expected = plan.weight * std::pow(plan.rho, dr + 1);
                const auto it = z.find({r, k});
                REQUIRE(it != z.end());
                CHECK(it->second == doctest::Approx(expected).epsilon(1e-12));
                ++checked;
            }
        CHECK(checked > 100);
        for (const auto& [key, v] : z)
            CHECK(key.first >= src_row);
    }

    TEST_CASE("recursion reproduces ambit_cells(diamond) weights at an output point")
    {
        SimConfig cfg = small_config(4.0, 0, 3, 3);
        cfg.tail_tol = 0.05;
        const DiamondPlan plan = make_diamond_plan(cfg);
        // Fill every cell with its own index hash and compare one output value
        // to the explicit weighted sum over the diamond cone.
        auto value = [](long r, long k) { return std::sin(0.37 * r + 1.3 * k) + 0.1 * k; };
        double z_out = 0.0;
        const long out_row = plan.output_row(2), out_col = plan.output_col(1);
        run_diamond(
            plan,
            [&](long r, std::span<double> cells) {
                for (long k = 0; k < static_cast<long>(cells.size()); ++k)
                    cells[k] = value(r, k);
            },
            [&](long r, std::span<const double> row) {
                if (r == out_row)
                    z_out = row[out_col];
            });
        double explicit_sum = 0.0;
        const long d_out = 2 * out_col + (out_row & 1);
        for (long r = 0; r <= out_row; ++r)
            for (long k = 0; k < plan.width; ++k) {
                const long dr = out_row - r;
                const long dd = 2 * k + (r & 1) - d_out;
                if (std::abs(dd) <= dr)
                    explicit_sum += plan.weight * std::pow(plan.rho, dr + 1) * value(r, k);
            }
        CHECK(z_out == doctest::Approx(explicit_sum).epsilon(1e-10));
    }

    TEST_CASE("pooled variance and correlations match closed forms")
    {
        for (double A : {1.0, 4.0}) {
            const SimConfig cfg = small_config(A, 123, 1000, 101);
            const RasterCube cube = simulate_stou(cfg);
            CHECK(pooled_variance(cube) == doctest::Approx(stou_variance(cfg.model)).epsilon(0.1));
            // lag 5 frames = 0.25 time units, and 5 pixels = 0.25 space units
            CHECK(lag_autocorr(cube, 5, 0) == doctest::Approx(std::exp(-A * 0.25)).epsilon(0.05));
            CHECK(lag_autocorr(cube, 0, 5) == doctest::Approx(std::exp(-A * 0.25)).epsilon(0.05));
        }
    }

    TEST_CASE("stationarity: mean near zero, per-pixel variances agree")
    {
        const SimConfig cfg = small_config(4.0, 9, 2000, 21);
        const RasterCube cube = simulate_stou(cfg);
        double mean = 0.0;
        for (double v : cube.values)
            mean += v;
        mean /= static_cast<double>(cube.size());
        // Crude bound on the standard error of the mean of a dependent field.
        CHECK(std::abs(mean) < 4 * std::sqrt(stou_variance(cfg.model) / 200.0));
        std::vector<double> var(cube.n_x, 0.0);
        for (int i = 0; i < cube.n_t; ++i)
            for (int j = 0; j < cube.n_x; ++j)
                var[j] += cube.at(i, j) * cube.at(i, j) / cube.n_t;
        const auto [lo, hi] = std::minmax_element(var.begin(), var.end());
        CHECK(*hi / *lo < 1.5);
    }

    TEST_CASE("determinism and sensitivity to the seed")
    {
        const SimConfig cfg = small_config(2.0, 77, 50, 11);
        const RasterCube a = simulate_stou(cfg);
        const RasterCube b = simulate_stou(cfg);
        CHECK(a.values == b.values);
        SimConfig other = cfg;
        other.rng_seed = 78;
        CHECK(simulate_stou(other).values != a.values);
    }

    TEST_CASE("vanishing driver gives a vanishing field")
    {
        SimConfig cfg = small_config(1.0, 5, 30, 11);
        cfg.model.seed = GaussianSeed{0.0, 1e-12};
        for (double v : simulate_stou(cfg).values)
            CHECK(std::abs(v) < 1e-6);
    }

    TEST_CASE("non-zero seed mean is centred away")
    {
        SimConfig cfg = small_config(4.0, 6, 1000, 41);
        cfg.model.seed = NigSeed{3.0, 1.0, 0.5, 0.5};
        const RasterCube cube = simulate_stou(cfg);
        double mean = 0.0;
        for (double v : cube.values)
            mean += v;
        mean /= static_cast<double>(cube.size());
        CHECK(std::abs(mean) < 4 * std::sqrt(stou_variance(cfg.model) / 100.0));
    }

    TEST_CASE("truncation bias stays below tail_tol")
    {
        // With identical increments on the shared rows the difference between
        // two truncation depths isolates the omitted tail.
        SimConfig cfg = small_config(4.0, 8, 200, 21);
        cfg.tail_tol = 1e-2;
        const DiamondPlan shallow = make_diamond_plan(cfg);
        cfg.tail_tol = 1e-4;
        const DiamondPlan deep = make_diamond_plan(cfg);
        CHECK(deep.first_output_row > shallow.first_output_row);
        const double v_short = stou_variance(cfg.model) * (1.0 - std::exp(-2.0 * cfg.model.A * truncation_depth(4.0, 1e-2)));
        CHECK((stou_variance(cfg.model) - v_short) / stou_variance(cfg.model) < 1e-2);

        cfg.tail_tol = 1e-2;
        const double v1 = pooled_variance(simulate_stou(cfg));
        cfg.tail_tol = 1e-4;
        const double v2 = pooled_variance(simulate_stou(cfg));
        CHECK(v1 == doctest::Approx(v2).epsilon(0.15));
    }

    TEST_CASE("configuration errors")
    {
        SimConfig cfg = small_config(1.0, 1, 10, 5);
        cfg.max_memory_values = 10;
        CHECK_THROWS_AS(simulate_stou(cfg), Error);
        try {
            simulate_stou(cfg);
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::memory_budget);
        }
        cfg = small_config(1.0, 1, 10, 5);
        cfg.h_s = 0.05 * std::sqrt(2.0);
        CHECK_THROWS_AS(make_diamond_plan(cfg), Error);
        cfg = small_config(1.0, 1, 10, 5);
        cfg.tail_tol = 1.0;
        CHECK_THROWS_AS(simulate_stou(cfg), Error);
        cfg = small_config(-1.0, 1, 10, 5);
        CHECK_THROWS_AS(simulate_stou(cfg), Error);
    }

    TEST_CASE("commensurate but unequal steps")
    {
        SimConfig cfg = small_config(2.0, 4, 600, 31);
        cfg.h_s = 0.1;
        cfg.model.c = 0.5;  // c h_t = 0.025, h_s = 4 h'
        const DiamondPlan plan = make_diamond_plan(cfg);
        CHECK(plan.steps_t == 1);
        CHECK(plan.steps_s == 4);
        const RasterCube cube = simulate_stou(cfg);
        CHECK(pooled_variance(cube) == doctest::Approx(stou_variance(cfg.model)).epsilon(0.1));
        CHECK(lag_autocorr(cube, 0, 1) == doctest::Approx(std::exp(-2.0 * 0.1 / 0.5)).epsilon(0.08));
    }
}
