#include "mdev/censored_model.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "mdev/errors.hpp"
#include "mdev/quadrature.hpp"

namespace mdev {

CensoredModel::CensoredModel(Distribution F, Distribution G, double tau, double eps_H)
    : F_(std::move(F)), G_(std::move(G)), tau_(tau), epsH_(eps_H) {
  if (!(tau_ > 0)) throw SpecError("CensoredModel: tau must be > 0");
  if (F_.kind() == DistKind::PointMass)
    throw SpecError("CensoredModel: point-mass lifetime is degenerate");
  if (!(observed_survival(tau_) > epsH_))
    throw SpecError("CensoredModel: H(tau) < 1 violated (observed survival below eps_H)");
}

double CensoredModel::observed_survival(double t) const {
  return (1.0 - F_.cdf_left(t)) * (1.0 - G_.cdf_left(t));
}

double CensoredModel::cumulative_hazard(double t) const {
  if (F_.is_continuous()) return -std::log1p(-F_.cdf(t));
  double acc = 0;
  for (const Atom& a : F_.atoms()) {
    if (a.x > t) break;
    acc += a.p / (1.0 - F_.cdf_left(a.x));
  }
  return acc;
}

double CensoredModel::hazard_jump(double t) const {
  if (F_.is_continuous()) return 0.0;
  for (const Atom& a : F_.atoms()) {
    if (a.x == t) return a.p / (1.0 - F_.cdf_left(t));
    if (a.x > t) break;
  }
  return 0.0;
}

std::vector<double> CensoredModel::breakpoints() const {
  std::vector<double> pts;
  for (const Distribution* d : {&F_, &G_})
    if (d->kind() == DistKind::Table)
      for (const Atom& a : d->atoms())
        if (a.x > 0 && a.x < tau_) pts.push_back(a.x);
  if (G_.kind() == DistKind::PointMass && G_.param1() > 0 && G_.param1() < tau_)
    pts.push_back(G_.param1());
  std::sort(pts.begin(), pts.end());
  return pts;
}

double CensoredModel::hazard_integrand(double u) const {
  const double fb = 1.0 - F_.cdf(u);
  return F_.density(u) / (fb * observed_survival(u));
}

std::vector<std::pair<double, double>> CensoredModel::hazard_sum_terms(bool km_variant) const {
  std::vector<std::pair<double, double>> out;
  for (const Atom& a : F_.atoms()) {
    if (a.x > tau_) break;
    const double dl = a.p / (1.0 - F_.cdf_left(a.x));
    const double hbar = observed_survival(a.x);
    out.push_back({a.x, km_variant ? dl / ((1.0 - dl) * hbar) : (1.0 - dl) / hbar * dl});
  }
  return out;
}

namespace {

// Cumulative inner integral V(t) with a cached grid of nodes; arbitrary t
// evaluates as V(node) plus a short adaptive integral from the node.
class CumulativeIntegral {
 public:
  CumulativeIntegral(const CensoredModel& m, bool km_variant) : model_(m) {
    const double tau = m.tau();
    if (m.continuous()) {
      constexpr int kNodes = 2048;
      nodes_.reserve(kNodes + 8);
      for (int i = 0; i <= kNodes; ++i) nodes_.push_back(tau * i / kNodes);
      for (double b : m.breakpoints()) nodes_.push_back(b);
      std::sort(nodes_.begin(), nodes_.end());
      nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
      cum_.resize(nodes_.size(), 0.0);
      const auto f = [&m](double u) { return m.hazard_integrand(u); };
      for (std::size_t i = 1; i < nodes_.size(); ++i)
        cum_[i] = cum_[i - 1] +
                  integrate(f, nodes_[i - 1], nodes_[i], 1e-11, 1e-16, 400);
    } else {
      for (const auto& [t, term] : m.hazard_sum_terms(km_variant)) {
        nodes_.push_back(t);
        cum_.push_back((cum_.empty() ? 0.0 : cum_.back()) + term);
      }
    }
  }

  double at(double t) const {
    if (model_.continuous()) {
      auto it = std::upper_bound(nodes_.begin(), nodes_.end(), t);
      if (it == nodes_.begin()) return 0.0;
      const std::size_t j = static_cast<std::size_t>(std::distance(nodes_.begin(), it)) - 1;
      double v = cum_[j];
      if (t > nodes_[j])
        v += integrate([this](double u) { return model_.hazard_integrand(u); },
                       nodes_[j], t, 1e-11, 1e-16, 400);
      return v;
    }
    auto it = std::upper_bound(nodes_.begin(), nodes_.end(), t);
    return it == nodes_.begin() ? 0.0 : cum_[std::distance(nodes_.begin(), it) - 1];
  }

 private:
  CensoredModel model_;
  std::vector<double> nodes_;
  std::vector<double> cum_;
};

}  // namespace

CovKernel::CovKernel(std::function<double(double, double)> eval, double tau)
    : eval_(std::move(eval)), tau_(tau) {}

CovKernel haz_cov_kernel(const CensoredModel& m) {
  auto cum = std::make_shared<CumulativeIntegral>(m, /*km_variant=*/false);
  const double tau = m.tau();
  return CovKernel(
      [cum, tau](double s, double t) {
        if (!(s >= 0 && s <= tau && t >= 0 && t <= tau))
          throw SpecError("haz_cov_kernel: arguments outside [0,tau]");
        return cum->at(std::min(s, t));
      },
      tau);
}

CovKernel km_cov_kernel(const CensoredModel& m) {
  auto cum = std::make_shared<CumulativeIntegral>(m, /*km_variant=*/true);
  const double tau = m.tau();
  const Distribution F = m.F();
  return CovKernel(
      [cum, tau, F](double s, double t) {
        if (!(s >= 0 && s <= tau && t >= 0 && t <= tau))
          throw SpecError("km_cov_kernel: arguments outside [0,tau]");
        return (1.0 - F.cdf(s)) * (1.0 - F.cdf(t)) * cum->at(std::min(s, t));
      },
      tau);
}

}  // namespace mdev
