#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "mmaf/embed.hpp"
#include "mmaf/error.hpp"

using namespace mmaf;

namespace {

ErrorKind kind_of(auto&& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::io_error;
}

// Cube whose value encodes its own index.
RasterCube index_cube(int n_t, int n_x, double h_t = 1.0, double h_s = 1.0)
{
    RasterCube c(n_t, n_x, h_t, h_s);
    for (int i = 0; i < n_t; ++i)
        for (int j = 0; j < n_x; ++j)
            c.at(i, j) = 1000.0 * i + j;
    return c;
}

// Lattice points (row, col) with 0 < t - s <= p and |x - xi| <= c (t - s),
// checked directly on coordinates.
std::vector<LatticeIndex> brute_cone(const RasterCube& cube, int row, int pixel, const EmbeddingSpec& spec)
{
    std::vector<LatticeIndex> out;
    const double t = cube.time(row), x = cube.space(pixel), p = spec.p_t * spec.h_t;
    for (int i = 0; i < cube.n_t; ++i)
        for (int j = 0; j < cube.n_x; ++j) {
            const double dt = t - cube.time(i);
            if (dt > 1e-12 && dt <= p + 1e-12 && std::abs(x - cube.space(j)) <= spec.c * dt + 1e-12)
                out.push_back({i, j});
        }
    std::sort(out.begin(), out.end(), [](auto a, auto b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });
    return out;
}

}  // namespace

TEST_SUITE("embed")
{
    TEST_CASE("cone sizes")
    {
        EmbeddingSpec s;
        s.p_t = 1;
        CHECK(cone_offsets(s).size() == 3);
        s.c = 0.5;
        CHECK(cone_offsets(s).size() == 1);
        s.c = 1.0;
        s.p_t = 2;
        CHECK(cone_offsets(s).size() == 8);
        const auto o = cone_offsets(s);
        CHECK(o.front() == ConeOffset{2, -2});
        CHECK(o.back() == ConeOffset{1, 1});
    }

    TEST_CASE("cone index sets equal brute-force enumeration")
    {
        for (double h_t : {0.05, 0.1})
            for (double h_s : {0.05, 0.03, 0.2})
                for (double c : {0.3, 1.0, 1.7})
                    for (int p_t : {1, 2, 5}) {
                        const RasterCube cube = index_cube(30, 61, h_t, h_s);
                        EmbeddingSpec s{2, p_t, c, h_t, h_s, 30, 0.0};
                        const int row = 20;
                        CHECK(cone_index_set(cube, cube.time(row), 30, s) == brute_cone(cube, row, 30, s));
                    }
    }

    TEST_CASE("cone indices are lexicographically increasing")
    {
        const RasterCube cube = index_cube(20, 20);
        const EmbeddingSpec s{4, 3, 1.0, 1.0, 1.0, 10, 0.0};
        const auto idx = cone_index_set(cube, 10.0, 10, s);
        for (std::size_t i = 1; i < idx.size(); ++i)
            CHECK((idx[i - 1].row < idx[i].row || (idx[i - 1].row == idx[i].row && idx[i - 1].col < idx[i].col)));
        CHECK(kind_of([&] { cone_index_set(cube, 10.0, 1, s); }) == ErrorKind::cone_out_of_bounds);
        CHECK(kind_of([&] { cone_index_set(cube, 2.0, 10, s); }) == ErrorKind::cone_out_of_bounds);
    }

    TEST_CASE("training set sizes")
    {
        const RasterCube cube = index_cube(20001, 3);
        EmbeddingSpec s{92, 1, 1.0, 1.0, 1.0, 1, 0.0};
        const TrainingSet a = build_training_set(cube, s);
        CHECK(a.m == 217);
        CHECK(a.a_pc == 3);
        s.a_t = 34;
        const TrainingSet b = build_training_set(cube, s);
        CHECK(b.m == 588);
        CHECK(b.inputs.size() == 588u * 3u);
        s.a_t = 1;
        CHECK(kind_of([&] { build_training_set(cube, s); }) == ErrorKind::constraint_violation);
        s.a_t = 10001;
        CHECK(kind_of([&] { build_training_set(cube, s); }) == ErrorKind::constraint_violation);
    }

    TEST_CASE("training set contents, disjointness and causality")
    {
        const RasterCube cube = index_cube(101, 11);
        const EmbeddingSpec s{7, 3, 1.0, 1.0, 1.0, 5, 10.0};
        const TrainingSet ts = build_training_set(cube, s);
        CHECK(embedding_frames(cube, s) == 90);
        CHECK(ts.m == 12);
        std::set<double> seen;
        for (int i = 0; i < ts.m; ++i) {
            const int row = 10 + (i + 1) * 7;
            CHECK(ts.target_rows[i] == row);
            CHECK(ts.outputs[i] == cube.at(row, 5));
            const auto idx = cone_index_set(cube, cube.time(row), 5, s);
            const auto x = ts.x(i);
            REQUIRE(x.size() == idx.size());
            for (std::size_t q = 0; q < idx.size(); ++q) {
                CHECK(x[q] == cube.at(idx[q].row, idx[q].col));
                CHECK(idx[q].row < row);
                CHECK(seen.insert(x[q]).second);
            }
        }
        EmbeddingSpec edge = s;
        edge.pixel = 1;
        CHECK(kind_of([&] { build_training_set(cube, edge); }) == ErrorKind::cone_out_of_bounds);
    }

    TEST_CASE("forecast features")
    {
        const RasterCube cube = index_cube(50, 9);
        const EmbeddingSpec s{3, 1, 1.0, 1.0, 1.0, 4, 0.0};
        const auto f = forecast_features(cube, s);
        CHECK(f == std::vector<double>{49003.0, 49004.0, 49005.0});

        // Appending the next frame and asking for the cone at that time gives
        // the same indices.
        const EmbeddingSpec s2{3, 4, 0.6, 1.0, 1.0, 4, 0.0};
        RasterCube longer = index_cube(51, 9);
        const auto idx = cone_index_set(longer, longer.time(50), 4, s2);
        const auto f2 = forecast_features(cube, s2);
        REQUIRE(f2.size() == idx.size());
        for (std::size_t q = 0; q < idx.size(); ++q)
            CHECK(f2[q] == cube.at(idx[q].row, idx[q].col));

        EmbeddingSpec wide = s;
        wide.p_t = 5;
        CHECK(kind_of([&] { forecast_features(cube, wide); }) == ErrorKind::cone_out_of_bounds);
    }

    TEST_CASE("selection rule examples")
    {
        const ThetaDecay gau1a4{ThetaDecay::Kind::exponential, 1.0, 1.9715};
        CHECK(select_a_t(SelectionRule::typeI, gau1a4, 0.05, 1, 1999).a_t == 124);
        CHECK(select_a_t(SelectionRule::typeI, gau1a4, 0.05, 1, 1999).m == 16);
        CHECK(select_a_t(SelectionRule::typeII, gau1a4, 0.05, 1, 1999).a_t == 47);

        const ThetaDecay half{ThetaDecay::Kind::exponential, 1.0, 0.5};
        const Selection t1 = select_a_t(SelectionRule::typeI, half, 1.0, 1, 20000);
        CHECK((t1.a_t == 91 || t1.a_t == 92));
        const Selection th = select_a_t(SelectionRule::theta_threshold, half, 1.0, 1, 20000, 1,
                                        {0.05 / 3.0, 100});
        CHECK(th.a_t == 34);
        CHECK(th.m == 588);
        const ThetaDecay pw = theta_power(1.0, 0.5);
        CHECK(select_a_t(SelectionRule::typeII, pw, 1.0, 1, 20000).a_t == 1170);
        CHECK(select_a_t(SelectionRule::typeII, pw, 1.0, 1, 20000).m == 17);
        CHECK(select_a_t(SelectionRule::typeI, pw, 1.0, 1, 20000).a_t == doctest::Approx(8742).epsilon(2.0 / 8742));

        CHECK(kind_of([&] { select_a_t(SelectionRule::typeI, {ThetaDecay::Kind::exponential, 1.0, 1e-4}, 0.05, 1, 100); })
              == ErrorKind::no_feasible_a_t);
    }

    TEST_CASE("selection minimality and monotonicity")
    {
        for (auto rule : {SelectionRule::typeI, SelectionRule::typeII})
            for (auto kind : {ThetaDecay::Kind::exponential, ThetaDecay::Kind::power}) {
                int prev_lambda = 1 << 30;
                for (double lam : {0.5, 1.0, 2.0, 4.0}) {
                    const ThetaDecay d{kind, 1.0, lam};
                    const double h = kind == ThetaDecay::Kind::exponential ? 0.05 : 1.0;
                    const Selection s = select_a_t(rule, d, h, 1, 20000);
                    CHECK(selection_satisfied(rule, d, h, 1, 20000, 1, s.a_t));
                    if (s.a_t - 1 >= 2)
                        CHECK_FALSE(selection_satisfied(rule, d, h, 1, 20000, 1, s.a_t - 1));
                    CHECK(s.a_t <= prev_lambda);
                    prev_lambda = s.a_t;
                }
                int prev_p = 0;
                for (int p : {1, 4, 8, 15}) {
                    const ThetaDecay d{kind, 1.0, 1.0};
                    const double h = kind == ThetaDecay::Kind::exponential ? 0.05 : 1.0;
                    const Selection s = select_a_t(rule, d, h, p, 20000);
                    CHECK(s.a_t >= prev_p);
                    prev_p = s.a_t;
                }
            }
    }
}
