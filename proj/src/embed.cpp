#include "mmaf/embed.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "mmaf/error.hpp"

namespace mmaf {

namespace {

constexpr double kSlack = 1e-9;

int time_to_row(const RasterCube& cube, double t)
{
    const double n = (t - cube.t0) / cube.h_t;
    const double rn = std::round(n);
    require(std::abs(n - rn) <= 1e-7, ErrorKind::invalid_parameter,
            "embedding: time " + std::to_string(t) + " is not on the cube's time lattice");
    return static_cast<int>(rn);
}

void check_steps(const RasterCube& cube, const EmbeddingSpec& spec)
{
    require(std::abs(cube.h_t - spec.h_t) <= 1e-12 * spec.h_t && std::abs(cube.h_s - spec.h_s) <= 1e-12 * spec.h_s,
            ErrorKind::invalid_parameter, "embedding: spec steps differ from the cube's steps");
}

}  // namespace

std::vector<ConeOffset> cone_offsets(const EmbeddingSpec& spec)
{
    require(spec.p_t >= 1, ErrorKind::invalid_parameter, "embedding: p_t must be >= 1");
    require(spec.c > 0.0 && spec.h_t > 0.0 && spec.h_s > 0.0, ErrorKind::invalid_parameter,
            "embedding: c, h_t and h_s must be positive");
    std::vector<ConeOffset> out;
    for (int back = spec.p_t; back >= 1; --back) {
        const double reach = spec.c * back * spec.h_t;
        const int half = static_cast<int>(std::floor(reach / spec.h_s * (1.0 + kSlack) + kSlack));
        for (int dx = -half; dx <= half; ++dx)
            out.push_back({back, dx});
    }
    return out;
}

std::vector<LatticeIndex> cone_index_set(const RasterCube& cube, double t, int pixel, const EmbeddingSpec& spec)
{
    check_steps(cube, spec);
    const int row = time_to_row(cube, t);
    std::vector<LatticeIndex> out;
    for (const auto& o : cone_offsets(spec)) {
        const LatticeIndex li{row - o.back, pixel + o.dx};
        if (li.row < 0 || li.row >= cube.n_t || li.col < 0 || li.col >= cube.n_x)
            throw Error(ErrorKind::cone_out_of_bounds,
                        "cone of (row " + std::to_string(row) + ", column " + std::to_string(pixel)
                            + ") leaves the cube at (" + std::to_string(li.row) + ", " + std::to_string(li.col) + ")");
        out.push_back(li);
    }
    return out;
}

int embedding_frames(const RasterCube& cube, const EmbeddingSpec& spec)
{
    check_steps(cube, spec);
    return cube.n_t - 1 - time_to_row(cube, spec.t0);
}

void validate(const EmbeddingSpec& spec, int N)
{
    const int half = N / 2;
    require(spec.p_t >= 1 && spec.p_t < half - 1, ErrorKind::constraint_violation,
            "embedding: need 1 <= p_t < floor(N/2) - 1, got p_t = " + std::to_string(spec.p_t) + " with N = "
                + std::to_string(N));
    require(spec.a_t >= spec.p_t + 1 && spec.a_t <= half, ErrorKind::constraint_violation,
            "embedding: need p_t + 1 <= a_t <= floor(N/2), got a_t = " + std::to_string(spec.a_t) + ", p_t = "
                + std::to_string(spec.p_t) + ", N = " + std::to_string(N));
}

TrainingSet build_training_set(const RasterCube& cube, const EmbeddingSpec& spec)
{
    const int N = embedding_frames(cube, spec);
    validate(spec, N);
    const auto offsets = cone_offsets(spec);
    const int r0 = time_to_row(cube, spec.t0);

    TrainingSet ts;
    ts.m = N / spec.a_t;
    ts.a_pc = static_cast<int>(offsets.size());
    ts.inputs.reserve(static_cast<std::size_t>(ts.m) * ts.a_pc);
    for (int i = 1; i <= ts.m; ++i) {
        const int row = r0 + i * spec.a_t;
        for (const auto& o : offsets) {
            const int rr = row - o.back;
            const int cc = spec.pixel + o.dx;
            if (rr < 0 || cc < 0 || cc >= cube.n_x)
                throw Error(ErrorKind::cone_out_of_bounds,
                            "embedding: example " + std::to_string(i) + " needs cube index (" + std::to_string(rr)
                                + ", " + std::to_string(cc) + ") outside the cube");
            ts.inputs.push_back(cube.at(rr, cc));
        }
        ts.outputs.push_back(cube.at(row, spec.pixel));
        ts.target_rows.push_back(row);
    }
    return ts;
}

std::vector<double> forecast_features(const RasterCube& cube, const EmbeddingSpec& spec)
{
    const auto idx = cone_index_set(cube, cube.time(cube.n_t), spec.pixel, spec);
    std::vector<double> out;
    out.reserve(idx.size());
    for (const auto& li : idx)
        out.push_back(cube.at(li.row, li.col));
    return out;
}

double selection_criterion(SelectionRule rule, const ThetaDecay& decay, double h_t, int p_t, int N, int k, int a_t,
                           const SelectionExtras& extras)
{
    const bool power = decay.kind == ThetaDecay::Kind::power;
    const double lam = decay.lambda;
    auto gap = [&](double span) {
        if (!power)
            return -lam * span;
        return span > 0.0 ? -lam * std::log(span) : std::numeric_limits<double>::infinity();
    };
    switch (rule) {
    case SelectionRule::typeI:
        return gap(h_t * (static_cast<double>(k) * a_t - p_t)) + 3.0 * std::sqrt(static_cast<double>(N) / a_t);
    case SelectionRule::typeII:
        return gap(h_t * (a_t - p_t)) - std::log(a_t / (2.0 * N));
    case SelectionRule::theta_threshold: {
        const int m = N / a_t;
        if (m < 1)
            return std::numeric_limits<double>::infinity();
        return decay(a_t * h_t - p_t * h_t) - extras.delta / (4.0 * extras.M * m);
    }
    }
    return std::numeric_limits<double>::infinity();
}

bool selection_satisfied(SelectionRule rule, const ThetaDecay& decay, double h_t, int p_t, int N, int k, int a_t,
                         const SelectionExtras& extras)
{
    const double v = selection_criterion(rule, decay, h_t, p_t, N, k, a_t, extras);
    return rule == SelectionRule::typeI ? v < 0.0 : v <= 0.0;
}

Selection select_a_t(SelectionRule rule, const ThetaDecay& decay, double h_t, int p_t, int N, int k,
                     const SelectionExtras& extras)
{
    validate(decay);
    require(h_t > 0.0, ErrorKind::invalid_parameter, "select_a_t: h_t must be positive");
    require(N >= 4, ErrorKind::invalid_parameter, "select_a_t: need N >= 4");
    require(p_t >= 1, ErrorKind::invalid_parameter, "select_a_t: need p_t >= 1");
    require(k >= 1, ErrorKind::invalid_parameter, "select_a_t: need k >= 1");
    if (rule == SelectionRule::theta_threshold)
        require(extras.delta > 0.0 && extras.delta < 1.0 && extras.M >= 1, ErrorKind::invalid_parameter,
                "select_a_t: theta_threshold needs delta in (0,1) and M >= 1");
    for (int a = p_t + 1; a <= N / 2; ++a)
        if (selection_satisfied(rule, decay, h_t, p_t, N, k, a, extras))
            return {a, N / a};
    throw Error(ErrorKind::no_feasible_a_t, "select_a_t: no a_t in [" + std::to_string(p_t + 1) + ", "
                                                + std::to_string(N / 2) + "] satisfies the rule");
}

}  // namespace mmaf
