#include "mmaf/theta.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "mmaf/error.hpp"

namespace mmaf {

double ThetaDecay::operator()(double r) const
{
    if (kind == Kind::exponential)
        return alpha_bar * std::exp(-lambda * r);
    if (!(r > 0.0))
        throw Error(ErrorKind::domain_error, "power decay needs r > 0, got " + std::to_string(r));
    return alpha_bar * std::pow(r, -lambda);
}

void validate(const ThetaDecay& decay)
{
    require(decay.alpha_bar > 0.0 && std::isfinite(decay.alpha_bar), ErrorKind::invalid_parameter,
            "theta decay: alpha_bar must be positive");
    require(decay.lambda > 0.0 && std::isfinite(decay.lambda), ErrorKind::invalid_parameter,
            "theta decay: lambda must be positive");
}

ThetaDecay theta_lex_stou(double A, double c, double var_seed)
{
    require(A > 0.0 && c > 0.0 && var_seed > 0.0, ErrorKind::invalid_parameter,
            "theta_lex_stou: A, c and var_seed must be positive");
    return {ThetaDecay::Kind::exponential, std::sqrt(c * var_seed / (A * A)), A * std::min(2.0, c) / (2.0 * c)};
}

ThetaDecay theta_lex_stou(const StouModel& model)
{
    validate(model);
    return theta_lex_stou(model.A, model.c, seed_moments(model.seed).variance);
}

ThetaDecay theta_power(double alpha_bar, double lambda)
{
    ThetaDecay d{ThetaDecay::Kind::power, alpha_bar, lambda};
    validate(d);
    return d;
}

double MstouTheta::exact(double r) const
{
    require(r >= 0.0, ErrorKind::domain_error, "mstou theta: r must be non-negative");
    const double a = model.alpha;
    const double scale = model.var_seed * model.c * std::pow(model.beta, a) / ((a - 2.0) * (a - 1.0));
    return std::sqrt(scale * std::pow(model.beta + r * std::min(2.0, model.c) / model.c, -(a - 2.0)));
}

MstouTheta theta_lex_mstou(const MstouGammaModel& model)
{
    validate(model);
    // Leading constant of exact(r) as r grows.
    const double a = model.alpha;
    const double lead = std::sqrt(model.var_seed * model.c * std::pow(model.beta, a) / ((a - 2.0) * (a - 1.0))
                                  * std::pow(std::min(2.0, model.c) / model.c, -(a - 2.0)));
    return {model, {ThetaDecay::Kind::power, lead, (a - 2.0) / 2.0}};
}

namespace {

double checked_cov(double v, double scale)
{
    const double tol = 1e-12 * std::max(1.0, std::abs(scale));
    require(v >= -tol, ErrorKind::domain_error, "negative covariance " + std::to_string(v) + " in theta bound");
    return std::max(v, 0.0);
}

}  // namespace

double theta_lex_covbound_1d(const std::function<double(double)>& cov_at, double c, double r)
{
    require(r >= 0.0 && c > 0.0, ErrorKind::invalid_parameter, "covbound: need r >= 0 and c > 0");
    const double v = checked_cov(cov_at(r * std::min(2.0, c)), cov_at(0.0));
    return 2.0 * std::sqrt(2.0 * v);
}

double theta_lex_covbound_2d(const std::function<double(double, double)>& cov_at, double c, double r)
{
    require(r >= 0.0 && c > 0.0, ErrorKind::invalid_parameter, "covbound: need r >= 0 and c > 0");
    const double psi = r * std::min(1.0, c / std::numbers::sqrt2);
    const double scale = cov_at(0.0, 0.0);
    const double v = checked_cov(cov_at(psi, psi), scale) + checked_cov(cov_at(psi, -psi), scale);
    return 2.0 * std::sqrt(2.0 * v);
}

namespace {

// Volume of the d-ball of radius c.
double ball_volume(int d, double c)
{
    const double h = 0.5 * d;
    return std::pow(std::numbers::pi, h) / std::tgamma(h + 1.0) * std::pow(c, d);
}

// sum_{k=0}^{d} z^k / (k! (z + beta)^(alpha-d-1+k)) * Gamma(alpha-d-1+k) / Gamma(alpha)
double gamma_sum(double z, double alpha, double beta, int d)
{
    double s = 0.0;
    for (int k = 0; k <= d; ++k) {
        if (k > 0 && z == 0.0)
            break;
        const double e = alpha - d - 1 + k;
        const double zk = k > 0 ? k * std::log(z) : 0.0;
        s += std::exp(zk - std::lgamma(k + 1.0) - e * std::log(z + beta) + std::lgamma(e) - std::lgamma(alpha));
    }
    return s;
}

}  // namespace

double theta_lex_mstou_gamma(const MstouGammaModel& model, int d, double r, MomentCase moment_case,
                             double gamma_abs)
{
    require(d >= 1, ErrorKind::invalid_parameter, "theta_lex_mstou_gamma: d must be >= 1");
    require(model.alpha > d + 1, ErrorKind::invalid_parameter,
            "theta_lex_mstou_gamma: alpha must exceed d + 1");
    require(model.beta > 0.0 && model.c > 0.0, ErrorKind::invalid_parameter,
            "theta_lex_mstou_gamma: beta and c must be positive");
    require(r >= 0.0, ErrorKind::domain_error, "theta_lex_mstou_gamma: r must be non-negative");

    const double c = model.c;
    const double psi = r / ((d + 1) * std::sqrt(c * c + 1.0));
    const double dfact = std::tgamma(d + 1.0);
    const double vd = ball_volume(d, c);
    const double beta_a = std::pow(model.beta, model.alpha);

    if (moment_case == MomentCase::second) {
        require(model.var_seed > 0.0, ErrorKind::invalid_parameter, "theta_lex_mstou_gamma: var_seed must be positive");
        const double z = c <= 1.0 ? 2.0 * psi : 2.0 * psi / c;
        const double inner = vd * dfact * model.var_seed * beta_a / std::pow(2.0, d + 1)
                             * gamma_sum(z, model.alpha, model.beta, d);
        return 2.0 * std::sqrt(inner);
    }
    require(gamma_abs >= 0.0, ErrorKind::invalid_parameter, "theta_lex_mstou_gamma: gamma_abs must be >= 0");
    const double z = c <= 1.0 ? psi : psi / c;
    return 2.0 * vd * dfact * beta_a * gamma_abs * gamma_sum(z, model.alpha, model.beta, d);
}

double theta_loss(double lip_term, int a_pc, double theta_tilde_r, LossMode mode)
{
    require(lip_term >= 0.0, ErrorKind::invalid_parameter, "theta_loss: lip_term must be >= 0");
    require(a_pc >= 1, ErrorKind::invalid_parameter, "theta_loss: a_pc must be >= 1");
    require(theta_tilde_r >= 0.0, ErrorKind::invalid_parameter, "theta_loss: theta must be >= 0");
    if (mode == LossMode::lipschitz)
        return 2.0 * (lip_term * a_pc + 1.0) * theta_tilde_r;
    return 2.0 * (lip_term + 1.0) * theta_tilde_r;
}

}  // namespace mmaf
