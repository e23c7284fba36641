#pragma once

#include <functional>

#include "mmaf/moments.hpp"

namespace mmaf {

// Bound on the theta-lex coefficients: alpha_bar * exp(-lambda r) or
// alpha_bar * r^(-lambda).
struct ThetaDecay {
    enum class Kind { exponential, power };

    Kind kind = Kind::exponential;
    double alpha_bar = 1.0;
    double lambda = 1.0;

    double operator()(double r) const;
};

void validate(const ThetaDecay& decay);

ThetaDecay theta_lex_stou(const StouModel& model);
ThetaDecay theta_lex_stou(double A, double c, double var_seed);

// Simplified power form alpha_bar * r^(-lambda) with a caller-chosen prefactor.
ThetaDecay theta_power(double alpha_bar, double lambda);

struct MstouTheta {
    MstouGammaModel model;
    ThetaDecay asymptotic;  // power law with lambda = (alpha - 2) / 2

    double exact(double r) const;
};

MstouTheta theta_lex_mstou(const MstouGammaModel& model);

// Covariance based bounds. For d = 1 `cov_at` takes a spatial lag, for d = 2 a
// spatial lag vector (u1, u2); both at time lag zero.
double theta_lex_covbound_1d(const std::function<double(double)>& cov_at, double c, double r);
double theta_lex_covbound_2d(const std::function<double(double, double)>& cov_at, double c, double r);

enum class MomentCase { second, first };

// Gamma-mixed MSTOU bounds on R^d. `gamma_abs` is only used in the first
// moment case.
double theta_lex_mstou_gamma(const MstouGammaModel& model, int d, double r, MomentCase moment_case,
                             double gamma_abs = 0.0);

enum class LossMode { lipschitz, linear };

// Theta coefficient of the loss process built from a predictor with
// Lipschitz constant (lipschitz mode) or ||beta_1||_1 (linear mode).
double theta_loss(double lip_term, int a_pc, double theta_tilde_r, LossMode mode);

}  // namespace mmaf
