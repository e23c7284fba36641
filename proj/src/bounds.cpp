#include "mmaf/bounds.hpp"

#include <cmath>
#include <string>

#include "mmaf/error.hpp"

namespace mmaf {

std::string to_string(BoundType type)
{
    switch (type) {
    case BoundType::typeI_erm: return "typeI_erm";
    case BoundType::typeI_general: return "typeI_general";
    case BoundType::typeII: return "typeII";
    case BoundType::typeII_erm: return "typeII_erm";
    case BoundType::gibbs_typeI: return "gibbs_typeI";
    case BoundType::gibbs_typeII: return "gibbs_typeII";
    }
    return "unknown";
}

namespace {

void check_common(double epsilon, double delta, int m, int min_m)
{
    require(epsilon > 0.0 && std::isfinite(epsilon), ErrorKind::invalid_parameter, "bound: epsilon must be positive");
    require(delta > 0.0 && delta < 1.0, ErrorKind::invalid_parameter, "bound: delta must lie in (0, 1)");
    require(m >= min_m, ErrorKind::invalid_parameter,
            "bound: need m >= " + std::to_string(min_m) + ", got " + std::to_string(m));
}

void check_eps_below_3(double epsilon)
{
    require(epsilon > 0.0 && epsilon < 3.0, ErrorKind::invalid_parameter,
            "bound: epsilon must lie in (0, 3), got " + std::to_string(epsilon));
}

BoundReport start(BoundType type, double epsilon, double delta, int m)
{
    BoundReport r;
    r.type = type;
    r.epsilon = epsilon;
    r.delta = delta;
    r.m = m;
    return r;
}

BoundReport finish(BoundReport r, double confidence)
{
    r.value = 0.0;
    for (const auto& [name, v] : r.components)
        r.value += v;
    r.confidence = confidence;
    return r;
}

double log_add_exp(double a, double b)
{
    if (a == -INFINITY)
        return b;
    if (b == -INFINITY)
        return a;
    const double hi = std::max(a, b);
    return hi + std::log1p(std::exp(-std::abs(a - b)));
}

}  // namespace

double kl_dirac_uniform(int M)
{
    require(M >= 1, ErrorKind::invalid_parameter, "kl_dirac_uniform: M must be >= 1");
    return std::log(static_cast<double>(M));
}

double chisq_plus_one_dirac_uniform(int M)
{
    require(M >= 1, ErrorKind::invalid_parameter, "chisq_plus_one_dirac_uniform: M must be >= 1");
    return static_cast<double>(M);
}

double moment_theta_log(double epsilon, double l, double theta, bool blocked)
{
    require(theta >= 0.0, ErrorKind::invalid_parameter, "bound: theta term must be >= 0");
    const double moment = 3.0 * epsilon * epsilon / (2.0 * (3.0 - epsilon));
    if (theta == 0.0)
        return moment;
    const double sl = std::sqrt(l);
    const double lt = std::log(3.0 * sl) + (blocked ? 3.0 * sl : 0.0) + std::log(theta);
    return log_add_exp(moment, lt);
}

BoundReport bound_typeI_erm(double epsilon, double delta, int m, int M, double pi_theta_term)
{
    check_common(epsilon, delta, m, 2);
    check_eps_below_3(epsilon);
    require(M >= 1, ErrorKind::invalid_parameter, "bound: M must be >= 1");
    const double sm = std::sqrt(static_cast<double>(m));
    BoundReport r = start(BoundType::typeI_erm, epsilon, delta, m);
    r.components["divergence"] = std::log(M / delta) / sm;
    r.components["moment_theta"] = moment_theta_log(epsilon, m, pi_theta_term, false) / sm;
    return finish(r, 1.0 - 2.0 * delta);
}

BoundReport bound_typeI_general(double epsilon, double delta, int m, int k, double kl, double theta_k)
{
    check_common(epsilon, delta, m, 2);
    check_eps_below_3(epsilon);
    require(k >= 1, ErrorKind::invalid_parameter, "bound: k must be >= 1");
    const int l = m / k;
    require(l >= 2, ErrorKind::invalid_parameter, "bound: floor(m/k) must be >= 2, got " + std::to_string(l));
    require(kl >= 0.0, ErrorKind::invalid_parameter, "bound: kl must be >= 0");
    const double sl = std::sqrt(static_cast<double>(l));
    BoundReport r = start(BoundType::typeI_general, epsilon, delta, m);
    r.components["divergence"] = (kl + std::log(1.0 / delta)) / sl;
    r.components["moment_theta"] = moment_theta_log(epsilon, l, theta_k, true) / sl;
    return finish(r, 1.0 - 2.0 * delta);
}

BoundReport bound_typeII(double epsilon, double delta, int m, double eta, double kl_term, double chisq_plus_one,
                         double pi_theta1_over_delta)
{
    check_common(epsilon, delta, m, 1);
    require(eta > 0.0, ErrorKind::invalid_parameter, "bound: eta must be positive");
    require(kl_term >= 0.0 && chisq_plus_one >= 1.0 && pi_theta1_over_delta >= 0.0, ErrorKind::invalid_parameter,
            "bound: need kl_term >= 0, chisq_plus_one >= 1 and theta term >= 0");
    BoundReport r = start(BoundType::typeII, epsilon, delta, m);
    r.components["divergence"] = kl_term / (eta * m);
    r.components["eta"] = eta * epsilon * epsilon / 2.0;
    r.components["theta"] = std::sqrt(epsilon * pi_theta1_over_delta * chisq_plus_one);
    return finish(r, 1.0 - 3.0 * delta);
}

BoundReport bound_typeII_erm(double epsilon, double delta, int m, int M, double alpha_bar_theta,
                             double pi_theta_factor)
{
    check_common(epsilon, delta, m, 1);
    require(M >= 1, ErrorKind::invalid_parameter, "bound: M must be >= 1");
    require(alpha_bar_theta >= 0.0 && pi_theta_factor >= 0.0, ErrorKind::invalid_parameter,
            "bound: theta inputs must be >= 0");
    BoundReport r = start(BoundType::typeII_erm, epsilon, delta, m);
    r.components["divergence_eta"] = std::sqrt(2.0 * std::log(M / delta) / m);
    r.components["theta"] = std::sqrt(epsilon * pi_theta_factor * alpha_bar_theta / delta * M);
    return finish(r, 1.0 - 3.0 * delta);
}

BoundReport bound_gibbs_typeI(double epsilon, double delta, int m, double inf_term, double theta_1)
{
    check_common(epsilon, delta, m, 2);
    check_eps_below_3(epsilon);
    const double sm = std::sqrt(static_cast<double>(m));
    BoundReport r = start(BoundType::gibbs_typeI, epsilon, delta, m);
    r.components["inf"] = inf_term;
    r.components["moment_theta"] = 2.0 / sm * moment_theta_log(epsilon, m, theta_1, true);
    return finish(r, 1.0 - 2.0 * delta);
}

BoundReport bound_gibbs_typeII(double epsilon, double delta, int m, double kl, double chisq_plus_one,
                               double pi_theta1_over_delta)
{
    check_common(epsilon, delta, m, 1);
    require(kl >= 0.0 && chisq_plus_one >= 1.0 && pi_theta1_over_delta >= 0.0, ErrorKind::invalid_parameter,
            "bound: need kl >= 0, chisq_plus_one >= 1 and theta term >= 0");
    const double sm = std::sqrt(static_cast<double>(m));
    BoundReport r = start(BoundType::gibbs_typeII, epsilon, delta, m);
    r.components["divergence"] = (kl + std::log(1.0 / delta)) * 2.0 / sm;
    r.components["eta"] = epsilon * epsilon / sm;
    r.components["theta"] = 2.0 * std::sqrt(epsilon * pi_theta1_over_delta * chisq_plus_one);
    return finish(r, 1.0 - 4.0 * delta);
}

double exp_inequality_s_limit(int m, int k, double range_len)
{
    require(k >= 1 && m / k >= 2, ErrorKind::invalid_parameter, "exp inequality: floor(m/k) must be >= 2");
    require(range_len > 0.0, ErrorKind::invalid_parameter, "exp inequality: range must be positive");
    return 3.0 * (m / k) / range_len;
}

double exp_inequality_rhs(double s, int m, int k, double variance, double range_len, double theta_k)
{
    const double limit = exp_inequality_s_limit(m, k, range_len);
    require(s > 0.0 && s < limit, ErrorKind::invalid_parameter,
            "exp inequality: s = " + std::to_string(s) + " outside (0, " + std::to_string(limit) + ")");
    require(variance >= 0.0 && theta_k >= 0.0, ErrorKind::invalid_parameter,
            "exp inequality: variance and theta must be >= 0");
    const double l = m / k;
    return std::exp(s * s * variance / (2.0 * l * (1.0 - s * range_len / (3.0 * l))))
           + std::exp(s * range_len) * theta_k * s;
}

}  // namespace mmaf
