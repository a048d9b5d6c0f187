#pragma once

#include <Eigen/Dense>
#include <vector>

#include "mdev/censored_model.hpp"
#include "mdev/distribution.hpp"
#include "mdev/score_function.hpp"

namespace mdev {

// Two-sample ingredient variances (Var F(Y), Var G(X)) by probability
// integral transform quadrature (relative tolerance 1e-8), or exact sums for
// discrete marginals.
struct ModelVariances {
  double var_F_of_Y;
  double var_G_of_X;
};
ModelVariances model_variances(const Distribution& F, const Distribution& G);

// P(X <= Y) = integral of F dG.
double wilcoxon_truth(const Distribution& F, const Distribution& G);

// x^2 / (2 (lambda Var F(Y) + (1-lambda) Var G(X))). Throws DegenerateRate
// when the denominator vanishes.
double wilcoxon_rate(double lambda, double varFY, double varGX, double x);

// integral over [0,tau] of (1 - dLambda)/Hbar dLambda.
double sigma2_hazard(const CensoredModel& m);

// sup over [0,tau] of (1-F(t))^2 * integral over (0,t] of
// dLambda/((1 - dLambda) Hbar); 1e4-point grid plus golden-section polish.
double sigma2_km(const CensoredModel& m);

// x^2 f(F^{-1}(p))^2 / (2 p (1-p)). Throws on zero density at the quantile.
double quantile_rate(const Distribution& F, double p, double x);

// m(J,F) = integral of F^{-1}(u) J(u) du over (0,1).
double lstat_mean(const ScoreFunction& J, const Distribution& F);

// sigma^2(J,F) = double integral of J(F(x)) J(F(y)) (F(x^y) - F(x)F(y)).
double lstat_variance(const ScoreFunction& J, const Distribution& F);

double lstat_rate(const ScoreFunction& J, const Distribution& F, double x);

// I^M(z) = 1/2 <Az, Gamma^{-1} Az> via symmetric solve. Throws on singular A
// or Gamma not positive definite.
double m_rate(const Eigen::MatrixXd& A, const Eigen::MatrixXd& Gamma,
              const Eigen::VectorXd& z);

// Finite-dimensional Gaussian rate: 1/2 phi^T Sigma^+ phi with
// Sigma = [K(t_k, t_j)], or +infinity when phi is outside range(Sigma)
// (pseudo-solve residual above 1e-8 * (1 + |phi|)).
double gaussian_finite_rate(const CovKernel& K, const std::vector<double>& times,
                            const Eigen::VectorXd& phi);

// r^2 / (2 sigma^2) sup-norm rates for the censored-data estimators.
double hazard_sup_rate(const CensoredModel& m, double r);
double km_sup_rate(const CensoredModel& m, double r);

}  // namespace mdev
