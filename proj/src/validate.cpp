#include "mmaf/validate.hpp"

#include <cmath>
#include <string>

#include "mmaf/bounds.hpp"
#include "mmaf/error.hpp"
#include "mmaf/parallel.hpp"
#include "mmaf/theta.hpp"

namespace mmaf {

bool ExpValidationReport::passed() const
{
    for (const auto& r : rows)
        if (r.lhs_plus > r.rhs + 3.0 * r.se_plus || r.lhs_minus > r.rhs + 3.0 * r.se_minus)
            return false;
    return true;
}

std::vector<double> default_s_grid(int m, int k, double range_len, int points)
{
    const double limit = exp_inequality_s_limit(m, k, range_len);
    std::vector<double> s(points);
    for (int j = 0; j < points; ++j)
        s[j] = 0.95 * limit * (j + 1) / points;
    return s;
}

namespace {

struct MeanSe {
    double mean;
    double se;
};

MeanSe mean_se(const std::vector<double>& v)
{
    const double n = static_cast<double>(v.size());
    double mean = 0.0;
    for (double x : v)
        mean += x;
    mean /= n;
    double ss = 0.0;
    for (double x : v)
        ss += (x - mean) * (x - mean);
    return {mean, v.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0};
}

}  // namespace

ExpValidationReport validate_exp_inequality(const ExpValidationConfig& cfg)
{
    require(cfg.n_paths >= 2, ErrorKind::invalid_parameter, "validation: need at least 2 paths");
    require(cfg.epsilon > 0.0, ErrorKind::invalid_parameter, "validation: epsilon must be positive");
    validate(cfg.sim);

    const RandomStream root(cfg.sim.rng_seed);
    const int P = cfg.n_paths;
    std::vector<std::vector<double>> f(P);
    int m = 0;
    int a_pc = 0;
    parallel_for(static_cast<std::size_t>(P), cfg.threads, [&](std::size_t p) {
        SimConfig sc = cfg.sim;
        sc.rng_seed = root.split(p).engine()();
        const RasterCube cube = simulate_stou(sc);
        EmbeddingSpec spec = cfg.spec;
        spec.h_t = cube.h_t;
        spec.h_s = cube.h_s;
        const TrainingSet ts = build_training_set(cube, spec);
        std::vector<double> fp(ts.m);
        for (int i = 0; i < ts.m; ++i)
            fp[i] = truncated_loss(cfg.beta.predict(ts.x(i)), ts.outputs[i], cfg.epsilon);
        f[p] = std::move(fp);
        if (p == 0) {
            m = ts.m;
            a_pc = ts.a_pc;
        }
    });

    if (cfg.iid_surrogate) {
        require(P >= m, ErrorKind::invalid_parameter,
                "validation: the surrogate needs at least m = " + std::to_string(m) + " paths");
        std::vector<std::vector<double>> g(P, std::vector<double>(m));
        for (int p = 0; p < P; ++p)
            for (int i = 0; i < m; ++i)
                g[p][i] = f[(p + i) % P][i];
        f = std::move(g);
    }

    ExpValidationReport rep;
    rep.m = m;
    rep.l = m / cfg.k;
    rep.a_pc = a_pc;
    double sum = 0.0;
    for (const auto& fp : f)
        for (double v : fp)
            sum += v;
    const double n = static_cast<double>(P) * m;
    rep.mean_f = sum / n;
    double ss = 0.0;
    for (const auto& fp : f)
        for (double v : fp)
            ss += (v - rep.mean_f) * (v - rep.mean_f);
    rep.variance_f = ss / (n - 1.0);

    if (!cfg.iid_surrogate) {
        const ThetaDecay decay = theta_lex_stou(cfg.sim.model);
        const double r = (cfg.k * cfg.spec.a_t - cfg.spec.p_t) * cfg.sim.h_t;
        double l1 = 0.0;
        for (double b : cfg.beta.beta1)
            l1 += std::abs(b);
        rep.theta_k = theta_loss(l1, a_pc, decay(r), LossMode::linear);
    }

    const auto grid = cfg.s_grid.empty() ? default_s_grid(m, cfg.k, cfg.epsilon) : cfg.s_grid;
    rep.max_excess = -INFINITY;
    for (double s : grid) {
        std::vector<double> plus(P), minus(P);
        for (int p = 0; p < P; ++p) {
            double dev = 0.0;
            for (double v : f[p])
                dev += v - rep.mean_f;
            dev *= s / m;
            plus[p] = std::exp(dev);
            minus[p] = std::exp(-dev);
        }
        ExpValidationRow row;
        row.s = s;
        const auto mp = mean_se(plus);
        const auto mm = mean_se(minus);
        row.lhs_plus = mp.mean;
        row.se_plus = mp.se;
        row.lhs_minus = mm.mean;
        row.se_minus = mm.se;
        row.rhs = exp_inequality_rhs(s, m, cfg.k, rep.variance_f, cfg.epsilon, rep.theta_k);
        for (auto [lhs, se] : {std::pair{mp.mean, mp.se}, std::pair{mm.mean, mm.se}}) {
            const double excess = se > 0.0 ? (lhs - row.rhs) / se : lhs - row.rhs;
            rep.max_excess = std::max(rep.max_excess, excess);
        }
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace mmaf
