#include "mmaf/learn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "mmaf/error.hpp"
#include "mmaf/parallel.hpp"

namespace mmaf {

double LinearPredictor::predict(std::span<const double> x) const
{
    if (x.size() != beta1.size())
        throw Error(ErrorKind::length_mismatch, "predictor has " + std::to_string(beta1.size())
                                                    + " slopes, input has " + std::to_string(x.size()));
    double s = beta0;
    for (std::size_t i = 0; i < x.size(); ++i)
        s += beta1[i] * x[i];
    return s;
}

double LinearPredictor::l1_norm() const
{
    double s = std::abs(beta0);
    for (double b : beta1)
        s += std::abs(b);
    return s;
}

PredictorGrid::PredictorGrid(std::vector<LinearPredictor> members) : members_(std::move(members))
{
    require(!members_.empty(), ErrorKind::empty_grid, "predictor grid is empty");
    const std::size_t dim = members_.front().beta1.size();
    for (std::size_t i = 0; i < members_.size(); ++i) {
        const auto& b = members_[i];
        require(b.beta1.size() == dim, ErrorKind::length_mismatch, "predictor grid members differ in dimension");
        require(std::isfinite(b.l1_norm()), ErrorKind::invalid_parameter, "predictor grid member has non-finite entries");
        require(b.l1_norm() <= 1.0 + 1e-12, ErrorKind::invalid_parameter,
                "predictor grid member " + std::to_string(i) + " has l1 norm above 1");
    }
}

double truncated_loss(double prediction, double truth, double epsilon)
{
    require(epsilon > 0.0, ErrorKind::invalid_parameter, "truncated_loss: epsilon must be positive");
    return std::min(std::abs(prediction - truth), epsilon);
}

double empirical_risk(const LinearPredictor& beta, const TrainingSet& S, double epsilon)
{
    require(S.m >= 1, ErrorKind::empty_training_set, "empirical_risk: empty training set");
    require(epsilon > 0.0, ErrorKind::invalid_parameter, "empirical_risk: epsilon must be positive");
    require(static_cast<int>(beta.beta1.size()) == S.a_pc, ErrorKind::length_mismatch,
            "empirical_risk: predictor dimension differs from a(p,c)");
    double s = 0.0;
    for (int i = 0; i < S.m; ++i)
        s += truncated_loss(beta.predict(S.x(i)), S.outputs[i], epsilon);
    return s / S.m;
}

LinearPredictor erm(const PredictorGrid& grid, const TrainingSet& S, double epsilon)
{
    std::size_t best = 0;
    double best_risk = empirical_risk(grid[0], S, epsilon);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double r = empirical_risk(grid[i], S, epsilon);
        if (r < best_risk) {
            best = i;
            best_risk = r;
        }
    }
    return grid[best];
}

std::vector<double> gibbs_weights(const PredictorGrid& grid, const TrainingSet& S, double epsilon)
{
    const double sm = std::sqrt(static_cast<double>(S.m));
    std::vector<double> risk(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        risk[i] = empirical_risk(grid[i], S, epsilon);
    const double rmin = *std::min_element(risk.begin(), risk.end());
    std::vector<double> w(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        w[i] = std::exp(-sm * (risk[i] - rmin));
    const double z = std::accumulate(w.begin(), w.end(), 0.0);
    for (double& v : w)
        v /= z;
    return w;
}

LinearPredictor gibbs_draw(const TrainingSet& S, double epsilon, const Reference& reference, RandomStream& rng,
                           std::size_t max_proposals)
{
    require(S.m >= 1, ErrorKind::empty_training_set, "gibbs_draw: empty training set");
    require(epsilon > 0.0, ErrorKind::invalid_parameter, "gibbs_draw: epsilon must be positive");
    const double sm = std::sqrt(static_cast<double>(S.m));
    const auto* grid_ref = std::get_if<UniformGridReference>(&reference);
    if (grid_ref)
        require(grid_ref->grid != nullptr, ErrorKind::empty_grid, "gibbs_draw: grid reference without a grid");

    LinearPredictor proposal;
    proposal.beta1.resize(S.a_pc);
    for (std::size_t n = 0; n < max_proposals; ++n) {
        if (grid_ref) {
            const auto& g = *grid_ref->grid;
            const auto i = static_cast<std::size_t>(rng.uniform() * static_cast<double>(g.size()));
            proposal = g[std::min(i, g.size() - 1)];
        } else {
            proposal.beta0 = rng.normal();
            for (double& b : proposal.beta1)
                b = rng.normal();
        }
        const double accept = std::exp(-sm * empirical_risk(proposal, S, epsilon));
        if (rng.uniform() < accept)
            return proposal;
    }
    std::ostringstream msg;
    msg << "gibbs_draw: no acceptance in " << max_proposals << " proposals (acceptance rate < "
        << 1.0 / static_cast<double>(max_proposals) << ")";
    throw Error(ErrorKind::sampling_failure, msg.str());
}

std::size_t gibbs_draw_exact(const std::vector<double>& weights, RandomStream& rng)
{
    require(!weights.empty(), ErrorKind::empty_grid, "gibbs_draw_exact: no weights");
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    double u = rng.uniform() * total;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        u -= weights[i];
        if (u < 0.0)
            return i;
    }
    return weights.size() - 1;
}

double quantile_sorted(std::span<const double> sorted, double p)
{
    require(!sorted.empty(), ErrorKind::insufficient_data, "quantile of empty data");
    require(p >= 0.0 && p <= 1.0, ErrorKind::invalid_parameter, "quantile level must lie in [0, 1]");
    const double h = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

EnsembleForecast ensemble_forecast(const TrainingSet& S, std::span<const double> features, int n_draws,
                                   double epsilon, const Reference& reference, const RandomStream& rng, int threads)
{
    require(static_cast<int>(features.size()) == S.a_pc, ErrorKind::length_mismatch,
            "ensemble_forecast: features length differs from a(p,c)");
    require(n_draws >= 1, ErrorKind::invalid_parameter, "ensemble_forecast: need at least one draw");
    EnsembleForecast f;
    f.draws.resize(n_draws);
    parallel_for(static_cast<std::size_t>(n_draws), threads, [&](std::size_t d) {
        RandomStream r = rng.split(d);
        f.draws[d] = gibbs_draw(S, epsilon, reference, r).predict(features);
    });
    std::vector<double> sorted = f.draws;
    std::sort(sorted.begin(), sorted.end());
    f.min = sorted.front();
    f.max = sorted.back();
    f.q25 = quantile_sorted(sorted, 0.25);
    f.q50 = quantile_sorted(sorted, 0.5);
    f.q75 = quantile_sorted(sorted, 0.75);
    return f;
}

double aver_rmae(std::span<const double> forecasts, std::span<const double> truths)
{
    require(forecasts.size() == truths.size(), ErrorKind::length_mismatch, "aver_rmae: length mismatch");
    require(!truths.empty(), ErrorKind::insufficient_data, "aver_rmae: no values");
    double s = 0.0;
    for (std::size_t i = 0; i < truths.size(); ++i) {
        require(truths[i] != 0.0, ErrorKind::zero_denominator,
                "aver_rmae: zero truth at position " + std::to_string(i));
        s += std::abs(truths[i] - forecasts[i]) / std::abs(truths[i]);
    }
    return s / static_cast<double>(truths.size());
}

}  // namespace mmaf
