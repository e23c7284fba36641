#pragma once

#include <vector>

#include "mmaf/embed.hpp"
#include "mmaf/field_sim.hpp"
#include "mmaf/learn.hpp"

namespace mmaf {

struct ExpValidationConfig {
    SimConfig sim;          // rng_seed is the root of the per-path seeds
    EmbeddingSpec spec;     // steps are taken from the simulated cube
    LinearPredictor beta;   // fixed predictor defining f = truncated loss
    double epsilon = 1.0;
    int k = 1;
    int n_paths = 200;
    std::vector<double> s_grid;  // empty: 10 points up to 95% of the admissible limit
    bool iid_surrogate = false;  // example i of path p taken from path (p + i) mod n_paths
    int threads = 1;
};

struct ExpValidationRow {
    double s = 0.0;
    double lhs_plus = 0.0;   // E exp(s/m sum (f - Ef))
    double se_plus = 0.0;
    double lhs_minus = 0.0;  // E exp(s/m sum (Ef - f))
    double se_minus = 0.0;
    double rhs = 0.0;
};

struct ExpValidationReport {
    int m = 0;
    int l = 0;
    int a_pc = 0;
    double mean_f = 0.0;
    double variance_f = 0.0;
    double theta_k = 0.0;
    std::vector<ExpValidationRow> rows;
    double max_excess = 0.0;  // max over rows and signs of (lhs - rhs) / se, or lhs - rhs when se = 0

    // LHS <= RHS + 3 standard errors everywhere.
    bool passed() const;
};

std::vector<double> default_s_grid(int m, int k, double range_len, int points = 10);

ExpValidationReport validate_exp_inequality(const ExpValidationConfig& cfg);

}  // namespace mmaf
