#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "mdev/sample.hpp"
#include "mdev/score_function.hpp"
#include "mdev/step_function.hpp"

namespace mdev {

StepFunction ecdf(const Sample& s);

// X_(ceil(n p)) under the inf convention; p in (0,1].
double empirical_quantile(const Sample& s, double p);

// #{(i,j): x_i <= y_j} / (m n) = integral of F_m dG_n.
double wilcoxon_statistic(const Sample& x, const Sample& y);

// Nelson-Aalen cumulative hazard: jump d(z)/Y(z) at each uncensored time z,
// with at-risk Y(z) = #{z_j >= z}. Ties: deaths precede censorings.
StepFunction nelson_aalen(const CensoredSample& c);

// Kaplan-Meier distribution estimate via the product integral of the
// Nelson-Aalen jumps; constant beyond the largest observation.
StepFunction kaplan_meier(const CensoredSample& c);

// C_n(u,v) = H_n(F_n^{-1}(u), G_n^{-1}(v)) at the given grid points,
// inf-convention quantiles of the marginal ECDFs. Grid points in (0,1)^2.
std::vector<double> empirical_copula(const PairedSample& p,
                                     const std::vector<std::pair<double, double>>& grid);

// L_n = sum_i X_(i) * integral of J over ((i-1)/n, i/n].
double l_statistic(const Sample& s, const ScoreFunction& J);

// One-dimensional psi spec for M-estimation: estimating function psi(x,theta)
// with search box [theta0 - eta, theta0 + eta].
struct PsiSpec {
  std::function<double(double, double)> psi;
  double theta0;
  double eta;
  int dim = 1;
};

// Root of Psi_n(theta) = mean_i psi(X_i, theta) inside the search box:
// 1e3-point scan for a sign change or near-zero, bracketing bisection, then
// secant polish. Throws NoRootInBox when the scan finds neither.
double m_estimate(const Sample& s, const PsiSpec& spec);

}  // namespace mdev
