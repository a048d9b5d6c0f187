#pragma once

#include <Eigen/Dense>
#include <functional>
#include <utility>
#include <vector>

#include "mdev/censored_model.hpp"
#include "mdev/distribution.hpp"
#include "mdev/estimators.hpp"
#include "mdev/projection.hpp"
#include "mdev/score_function.hpp"

namespace mdev {

// Direction for the one-sample path operators: a cadlag path, either a step
// path given by its jumps or a smooth callable. Smooth directions must vanish
// at the ends of the relevant support (tangent-set condition).
class PathDirection {
 public:
  static PathDirection step(std::vector<double> points, std::vector<double> jumps);
  static PathDirection smooth(std::function<double(double)> f);

  double at(double t) const;
  bool is_step() const { return fn_ == nullptr; }
  const std::vector<double>& points() const { return points_; }
  const std::vector<double>& jumps() const { return jumps_; }
  double jump_sum() const;

  // The path induced by a rate-grid direction gamma: jumps w_i gamma_i.
  static PathDirection from_gamma(const DiscretizedRate& r, const Eigen::VectorXd& gamma);

 private:
  PathDirection() = default;
  std::vector<double> points_, jumps_, cum_;
  std::function<double(double)> fn_;
};

// Bivariate direction for the copula operator; at(x, +inf) and at(+inf, y)
// give the marginal sections.
class PathDirection2 {
 public:
  static PathDirection2 step(std::vector<std::pair<double, double>> points,
                             std::vector<double> jumps);
  static PathDirection2 smooth(std::function<double(double, double)> f);

  double at(double x, double y) const;
  static PathDirection2 from_gamma(const DiscretizedRate2& r, const Eigen::VectorXd& gamma);

 private:
  PathDirection2() = default;
  std::vector<std::pair<double, double>> points_;
  std::vector<double> jumps_;
  std::function<double(double, double)> fn_;
};

// ---------------------------------------------------------------------------
// The Hadamard derivative operators. Each op knows its base point, applies the
// derivative to directions (exactly for step paths, by quadrature for smooth
// ones), produces the constraint rows of the discretized projection problem,
// and evaluates the underlying nonlinear map at a perturbed base point for
// difference-quotient validation. The perturbed evaluations never use the
// derivative formula.
// ---------------------------------------------------------------------------

// Phi(A,B) = integral of A dB at (F,G): (alpha,beta) -> int F dbeta + int alpha dG.
class WilcoxonBilinearOp {
 public:
  WilcoxonBilinearOp(Distribution F, Distribution G);
  double apply(const PathDirection& alpha, const PathDirection& beta) const;
  Eigen::MatrixXd rows(const DiscretizedRate& rf, const DiscretizedRate& rg) const;
  // Phi(F + t alpha, G + t beta) by a midpoint Stieltjes sum.
  double phi(double t, const PathDirection& alpha, const PathDirection& beta) const;

 private:
  Distribution F_, G_;
};

// Product integral Phi(A)(t) = prod(1 + dA) at A = -Lambda of a continuous
// censored model: alpha -> (1-F(t)) (alpha(t) - alpha(0)) on the time grid.
class ProductIntegralOp {
 public:
  ProductIntegralOp(CensoredModel m, std::vector<double> times);
  Eigen::VectorXd apply(const PathDirection& alpha) const;
  // Survival path of -Lambda + t alpha, via the exponential closed form of
  // the product integral of a continuous path. Smooth directions only.
  Eigen::VectorXd phi(double t, const PathDirection& alpha) const;
  const std::vector<double>& times() const { return times_; }

 private:
  CensoredModel model_;
  std::vector<double> times_;
};

// Inverse map G -> G^{-1}(p) at F: alpha -> -alpha(F^{-1}(p)) / f(F^{-1}(p)).
class InverseMapOp {
 public:
  InverseMapOp(Distribution F, std::vector<double> ps);
  Eigen::VectorXd apply(const PathDirection& alpha) const;
  Eigen::MatrixXd rows(const DiscretizedRate& r) const;
  // Numeric inverse of F + t alpha at each p (bisection; the caller keeps the
  // perturbed CDF monotone).
  Eigen::VectorXd phi(double t, const PathDirection& alpha) const;
  const std::vector<double>& probs() const { return ps_; }

 private:
  Distribution F_;
  std::vector<double> ps_, quantiles_, densities_;
};

// Copula map H -> H(F^{-1}(u), G^{-1}(v)) at a bivariate base point with
// continuous marginals.
class CopulaOp {
 public:
  static CopulaOp independent(Distribution F, Distribution G,
                              std::vector<std::pair<double, double>> uv);
  Eigen::VectorXd apply(const PathDirection2& alpha) const;
  Eigen::MatrixXd rows(const DiscretizedRate2& r) const;
  Eigen::VectorXd phi(double t, const PathDirection2& alpha) const;
  const std::vector<std::pair<double, double>>& grid() const { return uv_; }

 private:
  CopulaOp(Distribution F, Distribution G) : F_(std::move(F)), G_(std::move(G)) {}
  Distribution F_, G_;
  std::vector<std::pair<double, double>> uv_;
  // H and its partial derivatives at the base point.
  std::function<double(double, double)> H_, Hx_, Hy_;
};

// Implicit root map Psi -> Phi(Psi) with f(Phi(f)) = 0 near theta0, d = 1:
// h -> -h(theta0)/A.
class MRootOp {
 public:
  MRootOp(std::function<double(double)> psi0, double theta0, double eta, double deriv);
  double apply(const std::function<double(double)>& h) const;
  // Constraint rows through the sample-space rate: the basis direction at
  // grid point x_i induces the Psi-direction theta -> w_i psi(x_i, theta).
  Eigen::MatrixXd rows(const DiscretizedRate& r, const PsiSpec& psi) const;
  // Root of Psi0 + t h inside the box, found by bisection.
  double phi(double t, const std::function<double(double)>& h) const;

 private:
  std::function<double(double)> psi0_;
  double theta0_, eta_, A_;
};

// L-statistic functional Phi(G) = int_0^1 G^{-1}(s) J(s) ds at F:
// alpha -> -int alpha(x) J(F(x)) dx.
class LstatLinearOp {
 public:
  LstatLinearOp(ScoreFunction J, Distribution F);
  double apply(const PathDirection& alpha) const;
  Eigen::MatrixXd rows(const DiscretizedRate& r) const;
  // Quantile-form evaluation of Phi(F + t alpha); trimmed scores only.
  double phi(double t, const PathDirection& alpha) const;

 private:
  double cum_JF(double s) const;  // int over [anchor, s] of J(F(x)) dx
  ScoreFunction J_;
  Distribution F_;
  double lo_, hi_;  // effective support of J(F(x)) dx integrals
};

// Difference-quotient validation of a Hadamard derivative along one
// direction: e(t) = ||(Phi(x + t h) - Phi(x))/t - deriv|| for t = 2^-1..2^-kmax.
struct HadamardReport {
  std::vector<double> t;
  std::vector<double> err;
  double deriv_norm = 0;
  bool monotone = false;   // e(t) nonincreasing as t decreases (small slack)
  bool converged = false;  // e(t_min) < 1e-3 (1 + ||deriv||)
  bool pass = false;
};

// phi_at(t) must evaluate the nonlinear map at the base point perturbed by
// t * h on the operator codomain; phi_at(0) is the unperturbed value.
HadamardReport check_hadamard(const std::function<Eigen::VectorXd(double)>& phi_at,
                              const Eigen::VectorXd& derivative, int kmax = 20);

}  // namespace mdev
