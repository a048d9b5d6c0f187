#include "mdev/rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mdev/errors.hpp"
#include "mdev/quadrature.hpp"

namespace mdev {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// E[F(Y)^k] for Y ~ G: PIT quadrature for continuous G, exact sum otherwise.
double moment_F_of_G(const Distribution& F, const Distribution& G, int k) {
  if (G.kind() == DistKind::PointMass) return std::pow(F.cdf(G.param1()), k);
  if (G.kind() == DistKind::Table) {
    double acc = 0;
    for (const Atom& a : G.atoms()) acc += a.p * std::pow(F.cdf(a.x), k);
    return acc;
  }
  return integrate([&](double u) { return std::pow(F.cdf(G.quantile(u)), k); }, 0.0, 1.0,
                   1e-8, 1e-14);
}

}  // namespace

ModelVariances model_variances(const Distribution& F, const Distribution& G) {
  const double m1 = moment_F_of_G(F, G, 1), m2 = moment_F_of_G(F, G, 2);
  const double g1 = moment_F_of_G(G, F, 1), g2 = moment_F_of_G(G, F, 2);
  return {std::max(0.0, m2 - m1 * m1), std::max(0.0, g2 - g1 * g1)};
}

double wilcoxon_truth(const Distribution& F, const Distribution& G) {
  return moment_F_of_G(F, G, 1);
}

double wilcoxon_rate(double lambda, double varFY, double varGX, double x) {
  if (!(lambda > 0 && lambda < 1)) throw SpecError("wilcoxon_rate: lambda must be in (0,1)");
  if (varFY < 0 || varGX < 0) throw SpecError("wilcoxon_rate: variances must be >= 0");
  const double denom = lambda * varFY + (1.0 - lambda) * varGX;
  if (!(denom > 0)) throw DegenerateRate("wilcoxon_rate: zero variance denominator");
  return x * x / (2.0 * denom);
}

double sigma2_hazard(const CensoredModel& m) {
  if (m.continuous())
    return integrate_with_breakpoints([&m](double u) { return m.hazard_integrand(u); },
                                      0.0, m.tau(), m.breakpoints(), 1e-8, 1e-14);
  double acc = 0;
  for (const auto& [t, term] : m.hazard_sum_terms(false)) acc += term;
  return acc;
}

double sigma2_km(const CensoredModel& m) {
  if (!m.continuous()) {
    // (1-F)^2 V(t) is constant between atoms; candidates are the atoms.
    double acc = 0, best = 0;
    for (const auto& [t, term] : m.hazard_sum_terms(true)) {
      acc += term;
      const double fb = 1.0 - m.F().cdf(t);
      best = std::max(best, fb * fb * acc);
    }
    return best;
  }

  const double tau = m.tau();
  constexpr int kGrid = 10000;
  std::vector<double> nodes;
  nodes.reserve(kGrid + 8);
  for (int i = 0; i <= kGrid; ++i) nodes.push_back(tau * i / kGrid);
  for (double b : m.breakpoints()) nodes.push_back(b);
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

  const auto f = [&m](double u) { return m.hazard_integrand(u); };
  std::vector<double> cum(nodes.size(), 0.0);
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    double err;
    cum[i] = cum[i - 1] + gauss_kronrod_panel(f, nodes[i - 1], nodes[i], err);
  }

  const auto objective_at_node = [&](std::size_t i) {
    const double fb = 1.0 - m.F().cdf(nodes[i]);
    return fb * fb * cum[i];
  };
  std::size_t best = 0;
  double best_val = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double v = objective_at_node(i);
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }

  // Golden-section polish around the grid argmax; V evaluated from the
  // nearest node, so the refinement stays consistent with the grid values.
  const std::size_t lo_i = best > 0 ? best - 1 : 0;
  const std::size_t hi_i = std::min(best + 1, nodes.size() - 1);
  const auto objective = [&](double t) {
    auto it = std::upper_bound(nodes.begin(), nodes.end(), t);
    const std::size_t j = static_cast<std::size_t>(std::distance(nodes.begin(), it)) - 1;
    double v = cum[j];
    if (t > nodes[j]) v += integrate(f, nodes[j], t, 1e-11, 1e-16, 400);
    const double fb = 1.0 - m.F().cdf(t);
    return fb * fb * v;
  };
  const double t_star = golden_section_max(objective, nodes[lo_i], nodes[hi_i], 1e-8);
  return std::max(best_val, objective(t_star));
}

double quantile_rate(const Distribution& F, double p, double x) {
  if (!(p > 0 && p < 1)) throw SpecError("quantile_rate: p must be in (0,1)");
  if (!F.has_density()) throw SpecError("quantile_rate: F needs a density");
  const double f = F.density(F.quantile(p));
  if (!(f > 0)) throw DegenerateRate("quantile_rate: zero density at the quantile");
  return x * x * f * f / (2.0 * p * (1.0 - p));
}

double lstat_mean(const ScoreFunction& J, const Distribution& F) {
  if (F.kind() == DistKind::Table) {
    double acc = 0, cum = 0;
    for (const Atom& a : F.atoms()) {
      acc += a.x * J.integral(cum, cum + a.p);
      cum += a.p;
    }
    return acc;
  }
  double c;
  if (J.is_constant_one_piece(c)) return c * F.mean();
  const auto [t1, t2] = J.trim_bounds();
  const double lo = std::max(t1, 1e-10), hi = std::min(t2, 1.0 - 1e-10);
  return integrate([&](double u) { return F.quantile(u) * J(u); }, lo, hi, 1e-9, 1e-14);
}

double lstat_variance(const ScoreFunction& J, const Distribution& F) {
  if (!F.is_continuous())
    throw SpecError("lstat_variance: continuous F required");
  const auto [t1, t2] = J.trim_bounds();
  double lo, hi;
  if (J.trimmed()) {
    lo = F.quantile(std::max(t1, 1e-12));
    hi = F.quantile(std::min(t2, 1.0 - 1e-12));
  } else {
    lo = F.support_lo(1e-10);
    hi = F.support_hi(1e-10);
  }
  // F(x^y) - F(x)F(y) factorizes as F(x)(1-F(y)) on {x < y}; inner integrals
  // split at x.
  const auto inner = [&](double x) {
    const double Fx = F.cdf(x);
    const double left =
        x > lo ? integrate([&](double y) { return J(F.cdf(y)) * F.cdf(y); }, lo, x, 1e-8,
                           1e-15, 2000)
               : 0.0;
    const double right =
        x < hi ? integrate([&](double y) { return J(F.cdf(y)) * (1.0 - F.cdf(y)); }, x, hi,
                           1e-8, 1e-15, 2000)
               : 0.0;
    return (1.0 - Fx) * left + Fx * right;
  };
  const double v = integrate([&](double x) { return J(F.cdf(x)) * inner(x); }, lo, hi,
                             1e-7, 1e-14, 2000);
  return std::max(0.0, v);
}

double lstat_rate(const ScoreFunction& J, const Distribution& F, double x) {
  const double s2 = lstat_variance(J, F);
  if (!(s2 > 0)) throw DegenerateRate("lstat_rate: sigma^2(J,F) = 0");
  return x * x / (2.0 * s2);
}

double m_rate(const Eigen::MatrixXd& A, const Eigen::MatrixXd& Gamma,
              const Eigen::VectorXd& z) {
  if (A.rows() != A.cols() || Gamma.rows() != Gamma.cols() || A.rows() != Gamma.rows() ||
      z.size() != A.rows())
    throw SpecError("m_rate: dimension mismatch");
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
  if (!lu.isInvertible()) throw DegenerateRate("m_rate: singular derivative A");
  const Eigen::LLT<Eigen::MatrixXd> llt(Gamma);
  if (llt.info() != Eigen::Success)
    throw DegenerateRate("m_rate: Gamma is not positive definite");
  const Eigen::VectorXd az = A * z;
  return 0.5 * az.dot(llt.solve(az));
}

double gaussian_finite_rate(const CovKernel& K, const std::vector<double>& times,
                            const Eigen::VectorXd& phi) {
  const auto m = static_cast<Eigen::Index>(times.size());
  if (phi.size() != m) throw SpecError("gaussian_finite_rate: size mismatch");
  if (m == 0) return 0.0;
  Eigen::MatrixXd sigma(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double v = K(times[static_cast<std::size_t>(i)], times[static_cast<std::size_t>(j)]);
      sigma(i, j) = v;
      sigma(j, i) = v;
    }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sigma);
  const double lmax = es.eigenvalues().cwiseAbs().maxCoeff();
  const double cutoff = lmax * 1e-12;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    const double lk = es.eigenvalues()(k);
    if (lk > cutoff) x += es.eigenvectors().col(k) * (es.eigenvectors().col(k).dot(phi) / lk);
  }
  const double residual = (sigma * x - phi).norm();
  if (residual > 1e-8 * (1.0 + phi.norm())) return kInf;
  return 0.5 * phi.dot(x);
}

double hazard_sup_rate(const CensoredModel& m, double r) {
  const double s2 = sigma2_hazard(m);
  if (!(s2 > 0)) throw DegenerateRate("hazard_sup_rate: sigma^2 = 0");
  return r * r / (2.0 * s2);
}

double km_sup_rate(const CensoredModel& m, double r) {
  const double s2 = sigma2_km(m);
  if (!(s2 > 0)) throw DegenerateRate("km_sup_rate: sigma^2 = 0");
  return r * r / (2.0 * s2);
}

}  // namespace mdev
