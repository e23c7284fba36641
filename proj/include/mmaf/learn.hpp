#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "mmaf/embed.hpp"
#include "mmaf/random.hpp"

namespace mmaf {

struct LinearPredictor {
    double beta0 = 0.0;
    std::vector<double> beta1;

    double predict(std::span<const double> x) const;
    double l1_norm() const;  // |beta0| + ||beta1||_1
};

class PredictorGrid {
public:
    explicit PredictorGrid(std::vector<LinearPredictor> members);

    const std::vector<LinearPredictor>& members() const { return members_; }
    std::size_t size() const { return members_.size(); }
    const LinearPredictor& operator[](std::size_t i) const { return members_[i]; }

private:
    std::vector<LinearPredictor> members_;
};

struct GaussianReference {};
struct UniformGridReference {
    const PredictorGrid* grid = nullptr;
};
using Reference = std::variant<GaussianReference, UniformGridReference>;

struct EnsembleForecast {
    std::vector<double> draws;
    double q25 = 0.0;
    double q50 = 0.0;
    double q75 = 0.0;
    double min = 0.0;
    double max = 0.0;

    double iqr() const { return q75 - q25; }
};

double truncated_loss(double prediction, double truth, double epsilon);

double empirical_risk(const LinearPredictor& beta, const TrainingSet& S, double epsilon);

// First grid member of minimal empirical risk.
LinearPredictor erm(const PredictorGrid& grid, const TrainingSet& S, double epsilon);

// Normalized weights exp(-sqrt(m) r(beta)) over a grid; the exact target of
// gibbs_draw under a uniform grid reference.
std::vector<double> gibbs_weights(const PredictorGrid& grid, const TrainingSet& S, double epsilon);

// Draws from the density proportional to exp(-sqrt(m) r(beta)) with respect
// to the reference by acceptance-rejection.
LinearPredictor gibbs_draw(const TrainingSet& S, double epsilon, const Reference& reference, RandomStream& rng,
                           std::size_t max_proposals = 1'000'000);

// Oracle sampler for the grid case: inverse-CDF draw of the grid index.
std::size_t gibbs_draw_exact(const std::vector<double>& weights, RandomStream& rng);

// Linear interpolation between closest ranks of sorted data, p in [0, 1].
double quantile_sorted(std::span<const double> sorted, double p);

// Draw d uses rng.split(d), so results do not depend on `threads`.
EnsembleForecast ensemble_forecast(const TrainingSet& S, std::span<const double> features, int n_draws,
                                   double epsilon, const Reference& reference, const RandomStream& rng,
                                   int threads = 1);

double aver_rmae(std::span<const double> forecasts, std::span<const double> truths);

}  // namespace mmaf
