#pragma once

#include <span>
#include <vector>

#include "mmaf/raster.hpp"
#include "mmaf/theta.hpp"

namespace mmaf {

// Cone-shaped sampling parameters. Example i (i = 1..m) targets time
// t0 + i*a_t*h_t at column `pixel`; its input is the truncated past cone of
// depth p_t*h_t.
struct EmbeddingSpec {
    int a_t = 2;
    int p_t = 1;
    double c = 1.0;
    double h_t = 1.0;
    double h_s = 1.0;
    int pixel = 0;
    double t0 = 0.0;
};

// Lattice offset relative to the target point: `back` frames earlier and
// `dx` columns to the side.
struct ConeOffset {
    int back;
    int dx;

    friend bool operator==(const ConeOffset&, const ConeOffset&) = default;
};

struct LatticeIndex {
    int row;
    int col;

    friend bool operator==(const LatticeIndex&, const LatticeIndex&) = default;
};

struct TrainingSet {
    int m = 0;
    int a_pc = 0;
    std::vector<double> inputs;   // m x a_pc, row-major
    std::vector<double> outputs;  // length m
    std::vector<int> target_rows;

    std::span<const double> x(int i) const
    {
        return {inputs.data() + static_cast<std::size_t>(i) * a_pc, static_cast<std::size_t>(a_pc)};
    }
};

// Past-cone offsets in lexicographic order: earliest frame first, then
// space ascending. Enumerated on the lattice, never by formula.
std::vector<ConeOffset> cone_offsets(const EmbeddingSpec& spec);

// Absolute cube indices of the cone of (t, column pixel); t must lie on the
// cube's time lattice, possibly one step past the last frame.
std::vector<LatticeIndex> cone_index_set(const RasterCube& cube, double t, int pixel, const EmbeddingSpec& spec);

// Frames after t0 available for targets.
int embedding_frames(const RasterCube& cube, const EmbeddingSpec& spec);

void validate(const EmbeddingSpec& spec, int N);

TrainingSet build_training_set(const RasterCube& cube, const EmbeddingSpec& spec);

// Input of the one-step-ahead forecast from the last frames of `cube`.
std::vector<double> forecast_features(const RasterCube& cube, const EmbeddingSpec& spec);

enum class SelectionRule { typeI, typeII, theta_threshold };

struct SelectionExtras {
    double delta = 0.05;
    int M = 100;
};

struct Selection {
    int a_t = 0;
    int m = 0;
};

// Smallest a_t >= p_t + 1 (up to floor(N/2)) satisfying the rule.
Selection select_a_t(SelectionRule rule, const ThetaDecay& decay, double h_t, int p_t, int N, int k = 1,
                     const SelectionExtras& extras = {});

// Left-hand side of the rule inequality at a_t (negative or zero when satisfied).
double selection_criterion(SelectionRule rule, const ThetaDecay& decay, double h_t, int p_t, int N, int k, int a_t,
                           const SelectionExtras& extras = {});

bool selection_satisfied(SelectionRule rule, const ThetaDecay& decay, double h_t, int p_t, int N, int k, int a_t,
                         const SelectionExtras& extras = {});

}  // namespace mmaf
