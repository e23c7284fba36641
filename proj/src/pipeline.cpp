#include "mmaf/pipeline.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "mmaf/bounds.hpp"
#include "mmaf/error.hpp"
#include "mmaf/estimate.hpp"
#include "mmaf/io.hpp"
#include "mmaf/learn.hpp"
#include "mmaf/parallel.hpp"
#include "mmaf/theta.hpp"
#include "mmaf/validate.hpp"

namespace mmaf {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const json& section(const json& raw, const char* name)
{
    static const json empty = json::object();
    if (!raw.contains(name))
        return empty;
    const json& s = raw.at(name);
    require(s.is_object(), ErrorKind::config_parse, std::string("config section '") + name + "' must be an object");
    return s;
}

template <class T>
T get_or(const json& s, const char* key, T fallback)
{
    if (!s.contains(key) || s.at(key).is_null())
        return fallback;
    try {
        return s.at(key).get<T>();
    } catch (const json::exception&) {
        throw Error(ErrorKind::config_parse, std::string("config key '") + key + "' has the wrong type");
    }
}

template <class T>
T get_req(const json& s, const char* key, const char* where)
{
    require(s.contains(key) && !s.at(key).is_null(), ErrorKind::config_parse,
            std::string("config section '") + where + "' lacks '" + key + "'");
    return get_or<T>(s, key, T{});
}

io::Provenance provenance(const PipelineConfig& pc)
{
    return {pc.hash, pc.rng_seed};
}

json stamp(json j, const PipelineConfig& pc)
{
    j["config_hash"] = pc.hash;
    j["rng_seed"] = pc.rng_seed;
    return j;
}

fs::path cube_path(const PipelineConfig& pc)
{
    const json& in = section(pc.raw, "input");
    if (in.contains("cube"))
        return fs::path(get_or<std::string>(in, "cube", ""));
    return pc.out_dir / "cube.csv";
}

RasterCube load_cube(const PipelineConfig& pc)
{
    const fs::path p = cube_path(pc);
    require(fs::exists(p), ErrorKind::missing_input,
            "input cube " + p.string() + " not found; run simulate first or set input.cube");
    return io::read_cube_csv(p);
}

json report_json(const EstimationReport& r)
{
    return {{"A_hat", r.A_hat},     {"c_hat", r.c_hat},   {"lambda_hat", r.lambda_hat},
            {"var_seed_hat", r.var_seed_hat}, {"k2_hat", r.k2_hat}, {"tau", r.tau},
            {"u", r.u},             {"vario_t", r.vario_t}, {"vario_s", r.vario_s}};
}

EstimationReport estimate_cube(const PipelineConfig& pc, const RasterCube& cube)
{
    const json& s = section(pc.raw, "estimation");
    return estimate_parameters(cube, get_or<double>(s, "tau", cube.h_t), get_or<double>(s, "u", cube.h_s));
}

// Everything needed to build per-pixel training sets.
struct ResolvedEmbedding {
    RasterCube train;
    std::optional<RasterCube> test_frame;
    std::optional<EstimationReport> estimate;
    SelectionRule rule = SelectionRule::typeII;
    std::string rule_name;
    ThetaDecay decay;
    double c = 1.0;
    double epsilon = 2.99;
    int p_t = 1;
    int k = 1;
    int N = 0;
    Selection selection;

    EmbeddingSpec spec(int pixel) const
    {
        return {selection.a_t, p_t, c, train.h_t, train.h_s, pixel, train.t0};
    }
};

SelectionExtras extras_from(const json& e)
{
    return {get_or<double>(e, "delta", 0.05), get_or<int>(e, "M", 100)};
}

ThetaDecay decay_from(const json& e, const std::optional<EstimationReport>& est)
{
    const std::string kind = get_or<std::string>(e, "decay", "exponential");
    require(kind == "exponential" || kind == "power", ErrorKind::config_parse,
            "embedding.decay must be 'exponential' or 'power'");
    double lambda = 0.0;
    double alpha_bar = 1.0;
    if (e.contains("lambda")) {
        lambda = get_or<double>(e, "lambda", 0.0);
    } else {
        require(est.has_value(), ErrorKind::config_parse, "embedding.lambda is required without an input cube");
        lambda = est->lambda_hat;
    }
    if (e.contains("alpha_bar"))
        alpha_bar = get_or<double>(e, "alpha_bar", 1.0);
    else if (est && kind == "exponential")
        alpha_bar = theta_lex_stou(est->A_hat, est->c_hat, est->var_seed_hat).alpha_bar;
    ThetaDecay d{kind == "power" ? ThetaDecay::Kind::power : ThetaDecay::Kind::exponential, alpha_bar, lambda};
    validate(d);
    return d;
}

ResolvedEmbedding resolve_embedding(const PipelineConfig& pc, const RasterCube& cube)
{
    const json& e = section(pc.raw, "embedding");
    ResolvedEmbedding r;
    const int n_train = get_or<int>(e, "n_train", cube.n_t - 1);
    require(n_train >= 4 && n_train <= cube.n_t, ErrorKind::config_parse,
            "embedding.n_train must lie in [4, " + std::to_string(cube.n_t) + "]");
    r.train = cube.head(n_train);
    if (n_train < cube.n_t)
        r.test_frame = cube.slice(n_train, 1);
    if (!e.contains("lambda") || !e.contains("c") || !e.contains("alpha_bar"))
        r.estimate = estimate_cube(pc, r.train);
    r.rule_name = get_or<std::string>(e, "rule", "typeII");
    r.rule = parse_rule(r.rule_name);
    r.decay = decay_from(e, r.estimate);
    r.c = e.contains("c") ? get_or<double>(e, "c", 1.0) : r.estimate->c_hat;
    r.epsilon = get_or<double>(e, "epsilon", 2.99);
    r.p_t = get_or<int>(e, "p_t", 1);
    r.k = get_or<int>(e, "k", 1);
    r.N = r.train.n_t - 1;
    if (e.contains("a_t")) {
        r.selection.a_t = get_or<int>(e, "a_t", 2);
        r.selection.m = r.N / r.selection.a_t;
    } else {
        r.selection = select_a_t(r.rule, r.decay, r.train.h_t, r.p_t, r.N, r.k, extras_from(e));
    }
    return r;
}

json embedding_json(const ResolvedEmbedding& r)
{
    json j = {{"rule", r.rule_name},
              {"a_t", r.selection.a_t},
              {"m", r.selection.m},
              {"p_t", r.p_t},
              {"k", r.k},
              {"N", r.N},
              {"c", r.c},
              {"epsilon", r.epsilon},
              {"lambda", r.decay.lambda},
              {"alpha_bar", r.decay.alpha_bar},
              {"decay", r.decay.kind == ThetaDecay::Kind::power ? "power" : "exponential"}};
    if (r.estimate)
        j["estimation"] = report_json(*r.estimate);
    return j;
}

// Columns whose cones stay inside the lattice.
std::pair<int, int> full_cone_pixels(const ResolvedEmbedding& r)
{
    int reach = 0;
    for (const auto& o : cone_offsets(r.spec(0)))
        reach = std::max(reach, std::abs(o.dx));
    return {reach, r.train.n_x - 1 - reach};
}

json bound_json(const BoundReport& b)
{
    return {{"bound_type", to_string(b.type)}, {"epsilon", b.epsilon},     {"delta", b.delta},
            {"m", b.m},                        {"value", b.value},         {"components", b.components},
            {"confidence", b.confidence}};
}

BoundReport compute_bound(const json& b)
{
    const std::string type = get_req<std::string>(b, "type", "bound");
    const double eps = get_req<double>(b, "epsilon", "bound");
    const double delta = get_req<double>(b, "delta", "bound");
    const int m = get_req<int>(b, "m", "bound");
    if (type == "typeI_erm")
        return bound_typeI_erm(eps, delta, m, get_req<int>(b, "M", "bound"), get_or<double>(b, "pi_theta_term", 4.0));
    if (type == "typeI_general")
        return bound_typeI_general(eps, delta, m, get_or<int>(b, "k", 1), get_req<double>(b, "kl", "bound"),
                                   get_req<double>(b, "theta_k", "bound"));
    if (type == "typeII")
        return bound_typeII(eps, delta, m, get_req<double>(b, "eta", "bound"), get_req<double>(b, "kl_term", "bound"),
                            get_req<double>(b, "chisq_plus_one", "bound"),
                            get_req<double>(b, "pi_theta1_over_delta", "bound"));
    if (type == "typeII_erm") {
        double theta = 0.0;
        if (b.contains("alpha_bar_theta")) {
            theta = get_or<double>(b, "alpha_bar_theta", 0.0);
        } else {
            const json& d = section(b, "decay");
            const std::string kind = get_or<std::string>(d, "kind", "exponential");
            const ThetaDecay decay{kind == "power" ? ThetaDecay::Kind::power : ThetaDecay::Kind::exponential,
                                   get_or<double>(d, "alpha_bar", 1.0), get_req<double>(d, "lambda", "bound.decay")};
            validate(decay);
            theta = decay(get_req<double>(b, "r", "bound"));
        }
        return bound_typeII_erm(eps, delta, m, get_req<int>(b, "M", "bound"), theta,
                                get_or<double>(b, "pi_theta_factor", 4.0));
    }
    if (type == "gibbs_typeI")
        return bound_gibbs_typeI(eps, delta, m, get_req<double>(b, "inf_term", "bound"),
                                 get_req<double>(b, "theta_1", "bound"));
    if (type == "gibbs_typeII")
        return bound_gibbs_typeII(eps, delta, m, get_req<double>(b, "kl", "bound"),
                                  get_req<double>(b, "chisq_plus_one", "bound"),
                                  get_req<double>(b, "pi_theta1_over_delta", "bound"));
    throw Error(ErrorKind::config_parse, "unknown bound type '" + type + "'");
}

json run_simulate(const PipelineConfig& pc)
{
    const RasterCube cube = simulate_stou(pc.sim);
    const auto prov = provenance(pc);
    io::write_cube_csv(pc.out_dir / "cube.csv", cube, prov);
    json side = io::cube_sidecar(cube, prov);
    side["model"] = section(pc.raw, "simulation");
    side["seed"] = section(pc.raw, "seed");
    io::write_json(pc.out_dir / "cube.json", side);
    return {{"artifacts", {"cube.csv", "cube.json"}}, {"n_t", cube.n_t}, {"n_x", cube.n_x}};
}

json run_estimate(const PipelineConfig& pc)
{
    const RasterCube cube = load_cube(pc);
    const json& e = section(pc.raw, "embedding");
    const int n_train = get_or<int>(e, "n_train", cube.n_t);
    const json j = stamp(report_json(estimate_cube(pc, cube.head(std::min(n_train, cube.n_t)))), pc);
    io::write_json(pc.out_dir / "estimation.json", j);
    return j;
}

json run_select(const PipelineConfig& pc)
{
    const json& e = section(pc.raw, "embedding");
    json j;
    if (e.contains("lambda") && e.contains("N")) {
        const std::string rule_name = get_or<std::string>(e, "rule", "typeII");
        const ThetaDecay decay = decay_from(e, std::nullopt);
        const int N = get_or<int>(e, "N", 0);
        const int p_t = get_or<int>(e, "p_t", 1);
        const int k = get_or<int>(e, "k", 1);
        const double h_t = get_or<double>(e, "h_t", pc.sim.h_t);
        const Selection s = select_a_t(parse_rule(rule_name), decay, h_t, p_t, N, k, extras_from(e));
        j = {{"rule", rule_name}, {"a_t", s.a_t}, {"m", s.m}, {"N", N}, {"p_t", p_t}, {"k", k},
             {"h_t", h_t},        {"lambda", decay.lambda}, {"alpha_bar", decay.alpha_bar}};
    } else {
        j = embedding_json(resolve_embedding(pc, load_cube(pc)));
    }
    j = stamp(j, pc);
    io::write_json(pc.out_dir / "selection.json", j);
    return j;
}

json run_embed(const PipelineConfig& pc)
{
    const RasterCube cube = load_cube(pc);
    const ResolvedEmbedding r = resolve_embedding(pc, cube);
    const int pixel = get_or<int>(section(pc.raw, "embedding"), "pixel", r.train.n_x / 2);
    const EmbeddingSpec spec = r.spec(pixel);
    const TrainingSet ts = build_training_set(r.train, spec);
    io::write_training_set_csv(pc.out_dir / "training_set.csv", ts, provenance(pc));
    json j = embedding_json(r);
    j["pixel"] = pixel;
    j["a_pc"] = ts.a_pc;
    j["h_t"] = spec.h_t;
    j["h_s"] = spec.h_s;
    j["t0"] = spec.t0;
    j = stamp(j, pc);
    io::write_json(pc.out_dir / "training_set.json", j);
    return j;
}

json run_bound(const PipelineConfig& pc)
{
    const json j = stamp(bound_json(compute_bound(section(pc.raw, "bound"))), pc);
    io::write_json(pc.out_dir / "bound.json", j);
    return j;
}

json run_forecast(const PipelineConfig& pc, int threads)
{
    const RasterCube cube = load_cube(pc);
    const ResolvedEmbedding r = resolve_embedding(pc, cube);
    const json& e = section(pc.raw, "embedding");
    const json& f = section(pc.raw, "forecast");
    const int n_draws = get_or<int>(f, "n_draws", 50);
    const std::string ref = get_or<std::string>(f, "reference", "gaussian");
    require(ref == "gaussian", ErrorKind::config_parse, "forecast.reference supports only 'gaussian'");

    auto [lo, hi] = full_cone_pixels(r);
    if (e.contains("pixel_range")) {
        const auto range = get_or<std::vector<int>>(e, "pixel_range", {});
        require(range.size() == 2, ErrorKind::config_parse, "embedding.pixel_range must be [first, last]");
        lo = range[0];
        hi = range[1];
    }
    require(lo <= hi, ErrorKind::cone_out_of_bounds, "no pixel has a complete cone");

    const RandomStream root = RandomStream(pc.rng_seed).split(0x666f7265ULL);
    std::vector<io::ForecastRow> rows(static_cast<std::size_t>(hi - lo + 1));
    parallel_for(rows.size(), threads, [&](std::size_t i) {
        const int pixel = lo + static_cast<int>(i);
        const EmbeddingSpec spec = r.spec(pixel);
        const TrainingSet ts = build_training_set(r.train, spec);
        const auto feat = forecast_features(r.train, spec);
        rows[i].pixel = pixel;
        rows[i].forecast = ensemble_forecast(ts, feat, n_draws, r.epsilon, GaussianReference{},
                                             root.split(static_cast<std::uint64_t>(pixel)), 1);
        rows[i].truth = r.test_frame ? r.test_frame->at(0, pixel) : std::nan("");
    });

    double iqr = 0.0;
    int covered = 0;
    std::vector<double> med, truth;
    for (const auto& row : rows) {
        iqr += row.forecast.iqr();
        if (!std::isnan(row.truth)) {
            covered += row.truth >= row.forecast.q25 && row.truth <= row.forecast.q75;
            med.push_back(row.forecast.q50);
            truth.push_back(row.truth);
        }
    }
    const auto prov = provenance(pc);
    io::write_forecast_csv(pc.out_dir / "forecast.csv", rows, prov);
    io::write_text(pc.out_dir / "forecast.svg",
                   io::forecast_svg(rows, "one-step ensemble forecast, rule " + r.rule_name + ", a_t = "
                                              + std::to_string(r.selection.a_t)));
    json j = embedding_json(r);
    j["n_draws"] = n_draws;
    j["pixels"] = {lo, hi};
    j["mean_iqr"] = iqr / static_cast<double>(rows.size());
    if (!truth.empty()) {
        j["iqr_coverage"] = static_cast<double>(covered) / static_cast<double>(truth.size());
        bool nonzero = std::all_of(truth.begin(), truth.end(), [](double v) { return v != 0.0; });
        if (nonzero)
            j["aver_rmae_median"] = aver_rmae(med, truth);
    }
    j["artifacts"] = {"forecast.csv", "forecast.svg", "forecast.json"};
    j = stamp(j, pc);
    io::write_json(pc.out_dir / "forecast.json", j);
    return j;
}

json run_validate(const PipelineConfig& pc, int threads)
{
    const json& v = section(pc.raw, "validate");
    ExpValidationConfig cfg;
    cfg.sim = pc.sim;
    cfg.spec.a_t = get_req<int>(v, "a_t", "validate");
    cfg.spec.p_t = get_or<int>(v, "p_t", 1);
    cfg.spec.c = get_or<double>(v, "c", pc.sim.model.c);
    cfg.spec.h_t = pc.sim.h_t;
    cfg.spec.h_s = pc.sim.h_s;
    cfg.spec.pixel = get_or<int>(v, "pixel", pc.sim.n_x / 2);
    cfg.spec.t0 = pc.sim.t0;
    cfg.epsilon = get_or<double>(v, "epsilon", 1.0);
    cfg.k = get_or<int>(v, "k", 1);
    cfg.n_paths = get_or<int>(v, "n_paths", 200);
    cfg.s_grid = get_or<std::vector<double>>(v, "s_grid", {});
    cfg.iid_surrogate = get_or<bool>(v, "iid_surrogate", false);
    cfg.threads = threads;
    cfg.beta.beta0 = get_or<double>(v, "beta0", 0.0);
    cfg.beta.beta1 = get_or<std::vector<double>>(v, "beta1", {});
    if (cfg.beta.beta1.empty())
        cfg.beta.beta1.assign(cone_offsets(cfg.spec).size(), 0.0);

    const ExpValidationReport rep = validate_exp_inequality(cfg);
    std::string csv = "# validate " + std::string("config_hash=") + pc.hash + " rng_seed="
                      + std::to_string(pc.rng_seed) + " m=" + std::to_string(rep.m) + " l=" + std::to_string(rep.l)
                      + " theta_k=" + io::format_double(rep.theta_k) + "\n# form,s,LHS_estimate,LHS_stderr,RHS\n";
    for (const auto& row : rep.rows) {
        csv += "laplace," + io::format_double(row.s) + "," + io::format_double(row.lhs_plus) + ","
               + io::format_double(row.se_plus) + "," + io::format_double(row.rhs) + "\n";
        csv += "laplace2," + io::format_double(row.s) + "," + io::format_double(row.lhs_minus) + ","
               + io::format_double(row.se_minus) + "," + io::format_double(row.rhs) + "\n";
    }
    io::write_text(pc.out_dir / "validate.csv", csv);
    json j = {{"m", rep.m},
              {"l", rep.l},
              {"a_pc", rep.a_pc},
              {"mean_f", rep.mean_f},
              {"variance_f", rep.variance_f},
              {"theta_k", rep.theta_k},
              {"max_excess_in_stderr", rep.max_excess},
              {"passed", rep.passed()}};
    j = stamp(j, pc);
    io::write_json(pc.out_dir / "validate.json", j);
    return j;
}

}  // namespace

SeedDistribution parse_seed(const json& j)
{
    const std::string kind = get_or<std::string>(j, "kind", "gaussian");
    if (kind == "gaussian")
        return GaussianSeed{get_or<double>(j, "mu", 0.0), get_or<double>(j, "sigma", 0.5)};
    if (kind == "nig")
        return NigSeed{get_req<double>(j, "alpha", "seed"), get_or<double>(j, "beta", 0.0), get_or<double>(j, "mu", 0.0),
                       get_req<double>(j, "delta", "seed")};
    throw Error(ErrorKind::config_parse, "seed.kind must be 'gaussian' or 'nig'");
}

SelectionRule parse_rule(const std::string& name)
{
    if (name == "typeI")
        return SelectionRule::typeI;
    if (name == "typeII")
        return SelectionRule::typeII;
    if (name == "theta_threshold")
        return SelectionRule::theta_threshold;
    throw Error(ErrorKind::config_parse, "unknown selection rule '" + name + "'");
}

PipelineConfig load_pipeline_config(const json& raw_in, const RunOptions& opts)
{
    require(raw_in.is_object(), ErrorKind::config_parse, "config must be a JSON object");
    PipelineConfig pc;
    pc.raw = raw_in;
    if (opts.seed)
        pc.raw["rng_seed"] = *opts.seed;
    pc.rng_seed = get_or<std::uint64_t>(pc.raw, "rng_seed", 0);
    pc.hash = io::config_hash(pc.raw);
    pc.out_dir = opts.out_dir ? *opts.out_dir : fs::path(get_or<std::string>(pc.raw, "output_dir", "out"));

    const json& s = section(pc.raw, "simulation");
    SimConfig& sim = pc.sim;
    sim.model.A = get_or<double>(s, "A", 1.0);
    sim.model.c = get_or<double>(s, "c", 1.0);
    sim.model.seed = parse_seed(section(pc.raw, "seed"));
    sim.h_t = get_or<double>(s, "h_t", 0.05);
    sim.h_s = get_or<double>(s, "h_s", 0.05);
    sim.n_t = get_or<int>(s, "n_t", 2001);
    sim.n_x = get_or<int>(s, "n_x", 201);
    sim.t0 = get_or<double>(s, "t0", 0.0);
    sim.x0 = get_or<double>(s, "x0", 0.0);
    sim.tail_tol = get_or<double>(s, "tail_tol", 1e-4);
    sim.max_memory_values = get_or<std::size_t>(s, "max_memory_values", sim.max_memory_values);
    sim.rng_seed = pc.rng_seed;
    return pc;
}

int run(const RunOptions& opts, std::ostream& out)
{
    std::optional<fs::path> out_dir = opts.out_dir;
    try {
        const json raw = io::read_json(opts.config_path);
        const PipelineConfig pc = load_pipeline_config(raw, opts);
        out_dir = pc.out_dir;
        json result;
        const std::string& cmd = opts.subcommand;
        const int threads = std::max(1, opts.threads);
        if (cmd == "simulate")
            result = run_simulate(pc);
        else if (cmd == "estimate")
            result = run_estimate(pc);
        else if (cmd == "select")
            result = run_select(pc);
        else if (cmd == "embed")
            result = run_embed(pc);
        else if (cmd == "bound")
            result = run_bound(pc);
        else if (cmd == "forecast")
            result = run_forecast(pc, threads);
        else if (cmd == "validate")
            result = run_validate(pc, threads);
        else
            throw Error(ErrorKind::config_parse, "unknown subcommand '" + cmd + "'");
        out << stamp(result, pc).dump(2) << "\n";
        return 0;
    } catch (const std::exception& ex) {
        std::string kind = "internal";
        if (const auto* e = dynamic_cast<const Error*>(&ex))
            kind = std::string(to_string(e->kind()));
        else if (dynamic_cast<const json::exception*>(&ex))
            kind = "config-parse";
        const json err = {{"error", {{"kind", kind}, {"message", ex.what()}, {"subcommand", opts.subcommand}}}};
        out << err.dump(2) << "\n";
        if (out_dir) {
            try {
                io::write_json(*out_dir / "error.json", err);
            } catch (const std::exception&) {
                // The error object on `out` is the primary channel.
            }
        }
        return 1;
    }
}

}  // namespace mmaf
