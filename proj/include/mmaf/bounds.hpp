#pragma once

#include <map>
#include <string>

namespace mmaf {

enum class BoundType { typeI_erm, typeI_general, typeII, typeII_erm, gibbs_typeI, gibbs_typeII };

std::string to_string(BoundType type);

struct BoundReport {
    BoundType type = BoundType::typeI_erm;
    double epsilon = 0.0;
    double delta = 0.0;
    int m = 0;
    double value = 0.0;  // sum of components
    std::map<std::string, double> components;
    double confidence = 0.0;
};

double kl_dirac_uniform(int M);
double chisq_plus_one_dirac_uniform(int M);

// log(exp(3 eps^2 / (2 (3 - eps))) + 3 sqrt(l) exp(3 sqrt(l)) theta), evaluated
// in log space so large l does not overflow.
double moment_theta_log(double epsilon, double l, double theta, bool blocked);

BoundReport bound_typeI_erm(double epsilon, double delta, int m, int M, double pi_theta_term = 4.0);

BoundReport bound_typeI_general(double epsilon, double delta, int m, int k, double kl, double theta_k);

BoundReport bound_typeII(double epsilon, double delta, int m, double eta, double kl_term, double chisq_plus_one,
                         double pi_theta1_over_delta);

// Finite grid with ERM: sqrt(2 log(M/delta)/m) plus the theta addend with
// pi_theta_factor * alpha_bar * theta_tilde(a - p) * M / delta under the root.
BoundReport bound_typeII_erm(double epsilon, double delta, int m, int M, double alpha_bar_theta,
                             double pi_theta_factor = 4.0);

BoundReport bound_gibbs_typeI(double epsilon, double delta, int m, double inf_term, double theta_1);

BoundReport bound_gibbs_typeII(double epsilon, double delta, int m, double kl, double chisq_plus_one,
                               double pi_theta1_over_delta);

// Right-hand side of the exponential inequality for the Laplace transform of
// a centred block average.
double exp_inequality_rhs(double s, int m, int k, double variance, double range_len, double theta_k);

// Largest admissible s: 3 floor(m/k) / range_len.
double exp_inequality_s_limit(int m, int k, double range_len);

}  // namespace mmaf
