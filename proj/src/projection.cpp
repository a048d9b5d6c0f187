#include "mdev/projection.hpp"

#include <cmath>
#include <limits>

#include "mdev/errors.hpp"

namespace mdev {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

DiscretizedRate DiscretizedRate::from_distribution(const Distribution& F, int N,
                                                   double weight) {
  if (N < 1) throw SpecError("DiscretizedRate: N >= 1 required");
  DiscretizedRate r;
  r.weight = weight;
  if (F.kind() == DistKind::Table) {
    for (const Atom& a : F.atoms()) {
      r.grid.push_back(a.x);
      r.mass.push_back(a.p);
    }
  } else {
    // quantile-spaced grid with equal masses: the centering quadrature is
    // exact and W stays diagonal
    r.grid.resize(static_cast<std::size_t>(N));
    r.mass.assign(static_cast<std::size_t>(N), 1.0 / N);
    for (int i = 0; i < N; ++i)
      r.grid[static_cast<std::size_t>(i)] = F.quantile((i + 0.5) / N);
  }
  r.validate();
  return r;
}

void DiscretizedRate::validate() const {
  if (grid.empty() || grid.size() != mass.size())
    throw SpecError("DiscretizedRate: empty or mismatched grid");
  if (!(weight > 0)) throw SpecError("DiscretizedRate: weight must be > 0");
  double total = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(mass[i] > 0)) throw SpecError("DiscretizedRate: masses must be > 0");
    if (i > 0 && !(grid[i - 1] < grid[i]))
      throw SpecError("DiscretizedRate: grid must be strictly increasing");
    total += mass[i];
  }
  if (std::fabs(total - 1.0) > 1e-12)
    throw SpecError("DiscretizedRate: masses must sum to 1 within 1e-12");
}

DiscretizedRate2 DiscretizedRate2::independent(const Distribution& F, const Distribution& G,
                                               int k, double weight) {
  if (k < 1) throw SpecError("DiscretizedRate2: k >= 1 required");
  DiscretizedRate2 r;
  r.weight = weight;
  const auto n = static_cast<std::size_t>(k);
  r.grid.reserve(n * n);
  r.mass.assign(n * n, 1.0 / (static_cast<double>(n) * static_cast<double>(n)));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      r.grid.push_back({F.quantile((i + 0.5) / k), G.quantile((j + 0.5) / k)});
  r.validate();
  return r;
}

void DiscretizedRate2::validate() const {
  if (grid.empty() || grid.size() != mass.size())
    throw SpecError("DiscretizedRate2: empty or mismatched grid");
  double total = 0;
  for (double w : mass) {
    if (!(w > 0)) throw SpecError("DiscretizedRate2: masses must be > 0");
    total += w;
  }
  if (std::fabs(total - 1.0) > 1e-12)
    throw SpecError("DiscretizedRate2: masses must sum to 1 within 1e-12");
}

RateProjector::RateProjector(std::vector<DiscretizedRate> blocks, Eigen::MatrixXd op_rows)
    : blocks_(std::move(blocks)), m_(op_rows.rows()) {
  if (blocks_.empty()) throw SpecError("RateProjector: no rate blocks");
  Eigen::Index ntot = 0;
  for (const auto& b : blocks_) {
    b.validate();
    ntot += static_cast<Eigen::Index>(b.size());
  }
  if (op_rows.cols() != ntot)
    throw SpecError("RateProjector: operator rows do not match the grid size");

  const auto nb = static_cast<Eigen::Index>(blocks_.size());
  C_.resize(m_ + nb, ntot);
  C_.topRows(m_) = op_rows;
  C_.bottomRows(nb).setZero();
  inv_w_.resize(ntot);
  Eigen::Index off = 0;
  for (Eigen::Index b = 0; b < nb; ++b) {
    const auto& blk = blocks_[static_cast<std::size_t>(b)];
    for (std::size_t i = 0; i < blk.size(); ++i) {
      C_(m_ + b, off + static_cast<Eigen::Index>(i)) = blk.mass[i];
      inv_w_(off + static_cast<Eigen::Index>(i)) = 1.0 / (blk.weight * blk.mass[i]);
    }
    off += static_cast<Eigen::Index>(blk.size());
  }

  S_ = C_ * inv_w_.asDiagonal() * C_.transpose();
  es_.compute(S_);
  if (es_.info() != Eigen::Success) throw NumericError("RateProjector: eigensolver failed");
  eig_cutoff_ = es_.eigenvalues().cwiseAbs().maxCoeff() * 1e-13;
}

ProjectionResult RateProjector::solve(const Eigen::VectorXd& y) const {
  if (y.size() != m_) throw SpecError("RateProjector: y has the wrong dimension");
  const auto nb = static_cast<Eigen::Index>(blocks_.size());
  Eigen::VectorXd b = Eigen::VectorXd::Zero(m_ + nb);
  b.head(m_) = y;

  Eigen::VectorXd x = Eigen::VectorXd::Zero(b.size());
  for (Eigen::Index k = 0; k < b.size(); ++k) {
    const double lk = es_.eigenvalues()(k);
    if (lk > eig_cutoff_)
      x += es_.eigenvectors().col(k) * (es_.eigenvectors().col(k).dot(b) / lk);
  }
  const double residual = (S_ * x - b).norm();

  ProjectionResult res;
  res.residual = residual;
  if (residual > 1e-8 * (1.0 + b.norm())) {
    res.feasible = false;
    res.value = kInf;
    return res;
  }
  res.feasible = true;
  res.value = 0.5 * b.dot(x);
  res.minimizer = inv_w_.asDiagonal() * (C_.transpose() * x);
  return res;
}

ProjectionResult RateProjector::solve(double y) const {
  Eigen::VectorXd v(1);
  v << y;
  return solve(v);
}

ProjectionResult project_rate(const std::vector<DiscretizedRate>& blocks,
                              const Eigen::MatrixXd& op_rows, const Eigen::VectorXd& y) {
  return RateProjector(blocks, op_rows).solve(y);
}

ProjectionResult project_rate(const DiscretizedRate& rate, const Eigen::MatrixXd& op_rows,
                              double y) {
  Eigen::VectorXd v(1);
  v << y;
  return RateProjector({rate}, op_rows).solve(v);
}

std::vector<double> project_rate_curve(const std::vector<DiscretizedRate>& blocks,
                                       const Eigen::MatrixXd& op_rows,
                                       const std::vector<double>& ys) {
  if (op_rows.rows() != 1)
    throw SpecError("project_rate_curve: scalar operator rows required");
  const RateProjector proj(blocks, op_rows);
  std::vector<double> out;
  out.reserve(ys.size());
  for (double y : ys) out.push_back(proj.solve(y).value);
  return out;
}

}  // namespace mdev
