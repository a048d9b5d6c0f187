#pragma once

#include <Eigen/Dense>
#include <vector>

#include "mdev/distribution.hpp"

namespace mdev {

// Discretization of the empirical-measure rate 1/2 integral gamma^2 dF with
// the centering constraint integral gamma dF = 0: support points x_i with
// masses w_i, direction gamma in R^N, induced path
// alpha(t) = sum_{x_i <= t} w_i gamma_i. `weight` scales the quadratic form
// (two-sample problems use 1/(1-lambda) and 1/lambda per block).
struct DiscretizedRate {
  std::vector<double> grid;
  std::vector<double> mass;
  double weight = 1.0;

  static DiscretizedRate from_distribution(const Distribution& F, int N,
                                           double weight = 1.0);
  void validate() const;
  std::size_t size() const { return grid.size(); }
};

// Bivariate version for the copula problem: atoms (x_l, y_l) with masses w_l
// discretizing dH; alpha(s,t) = sum_{x_l <= s, y_l <= t} w_l gamma_l.
struct DiscretizedRate2 {
  std::vector<std::pair<double, double>> grid;
  std::vector<double> mass;
  double weight = 1.0;

  static DiscretizedRate2 independent(const Distribution& F, const Distribution& G,
                                      int k, double weight = 1.0);
  void validate() const;
  std::size_t size() const { return grid.size(); }
};

struct ProjectionResult {
  double value = 0;              // +infinity when y is unreachable
  bool feasible = true;
  Eigen::VectorXd minimizer;     // gamma* across all blocks
  double residual = 0;           // ||C gamma* - b||
};

// Equality-constrained quadratic minimization 1/2 gamma^T W gamma subject to
// C gamma = b, where W = diag(weight_b * w_i), C stacks the operator rows on
// top of one centering row per block and b = (y, 0...). Solved through the
// Schur complement S = C W^{-1} C^T with an eigenvalue pseudo-solve; b
// outside range(C) (residual above 1e-8 (1 + |b|)) yields the +infinity
// sentinel of an empty infimum.
class RateProjector {
 public:
  RateProjector(std::vector<DiscretizedRate> blocks, Eigen::MatrixXd op_rows);

  ProjectionResult solve(const Eigen::VectorXd& y) const;
  ProjectionResult solve(double y) const;  // single operator row

  Eigen::Index output_dim() const { return m_; }

 private:
  std::vector<DiscretizedRate> blocks_;
  Eigen::MatrixXd C_;           // (m + B) x Ntot
  Eigen::MatrixXd S_;           // Schur complement C W^{-1} C^T
  Eigen::VectorXd inv_w_;       // W^{-1} diagonal
  Eigen::Index m_;              // operator rows
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es_;
  double eig_cutoff_;
};

ProjectionResult project_rate(const std::vector<DiscretizedRate>& blocks,
                              const Eigen::MatrixXd& op_rows, const Eigen::VectorXd& y);
ProjectionResult project_rate(const DiscretizedRate& rate, const Eigen::MatrixXd& op_rows,
                              double y);
// Shared factorization across the batch; scalar operator rows only.
std::vector<double> project_rate_curve(const std::vector<DiscretizedRate>& blocks,
                                       const Eigen::MatrixXd& op_rows,
                                       const std::vector<double>& ys);

}  // namespace mdev
