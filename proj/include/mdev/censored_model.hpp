#pragma once

#include <functional>
#include <vector>

#include "mdev/distribution.hpp"

namespace mdev {

// Population-level right-censoring model: lifetime F, censoring G, horizon
// tau with H(tau) < 1 enforced as observed_survival(tau) > eps_H.
class CensoredModel {
 public:
  CensoredModel(Distribution F, Distribution G, double tau, double eps_H = 1e-6);

  // P(Z >= t) = (1 - F(t-)) (1 - G(t-)), the left-continuous survival of the
  // observed times.
  double observed_survival(double t) const;
  double cumulative_hazard(double t) const;
  double hazard_jump(double t) const;  // 0 for continuous F

  bool continuous() const { return F_.is_continuous(); }
  const Distribution& F() const { return F_; }
  const Distribution& G() const { return G_; }
  double tau() const { return tau_; }
  double eps_H() const { return epsH_; }

  // Atoms of G (and F, if discrete) inside (0, tau): quadrature breakpoints.
  std::vector<double> breakpoints() const;

  // Inner integrand shared by the variance functionals and both covariance
  // kernels when F is continuous (the dLambda atoms vanish and the two
  // kernel variants coincide): f(u) / ((1-F(u)) Hbar(u)).
  double hazard_integrand(double u) const;

  // Discrete-F per-atom terms of those integrals up to tau:
  // (1-dL)/Hbar * dL for the hazard variant, dL/((1-dL) Hbar) for KM.
  std::vector<std::pair<double, double>> hazard_sum_terms(bool km_variant) const;

 private:
  Distribution F_, G_;
  double tau_;
  double epsH_;
};

// Symmetric covariance kernel on [0,tau]^2 with a memoized inner integral.
class CovKernel {
 public:
  CovKernel(std::function<double(double, double)> eval, double tau);
  double operator()(double s, double t) const { return eval_(s, t); }
  double tau() const { return tau_; }

 private:
  std::function<double(double, double)> eval_;
  double tau_;
};

// E(Z(s)Z(t)) = integral over [0, s^t] of (1 - dLambda)/Hbar dLambda.
CovKernel haz_cov_kernel(const CensoredModel& m);
// (1-F(s))(1-F(t)) integral over (0, s^t] of dLambda/((1 - dLambda) Hbar).
CovKernel km_cov_kernel(const CensoredModel& m);

}  // namespace mdev
