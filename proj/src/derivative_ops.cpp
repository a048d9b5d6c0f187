#include "mdev/derivative_ops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mdev/errors.hpp"
#include "mdev/quadrature.hpp"

namespace mdev {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Bisection for a nondecreasing callable with A(lo) <= target <= A(hi).
double invert_monotone(const std::function<double(double)>& A, double target, double lo,
                       double hi) {
  for (int it = 0; it < 200 && (hi - lo) > 1e-15 * (1.0 + std::fabs(lo) + std::fabs(hi));
       ++it) {
    const double mid = 0.5 * (lo + hi);
    if (A(mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

PathDirection PathDirection::step(std::vector<double> points, std::vector<double> jumps) {
  if (points.size() != jumps.size() || points.empty())
    throw SpecError("PathDirection: bad step data");
  for (std::size_t i = 0; i + 1 < points.size(); ++i)
    if (!(points[i] < points[i + 1]))
      throw SpecError("PathDirection: points must be strictly increasing");
  PathDirection d;
  d.points_ = std::move(points);
  d.jumps_ = std::move(jumps);
  d.cum_.resize(d.jumps_.size());
  long double acc = 0;
  for (std::size_t i = 0; i < d.jumps_.size(); ++i) {
    acc += d.jumps_[i];
    d.cum_[i] = static_cast<double>(acc);
  }
  return d;
}

PathDirection PathDirection::smooth(std::function<double(double)> f) {
  if (!f) throw SpecError("PathDirection: null function");
  PathDirection d;
  d.fn_ = std::move(f);
  return d;
}

double PathDirection::at(double t) const {
  if (fn_) return fn_(t);
  auto it = std::upper_bound(points_.begin(), points_.end(), t);
  if (it == points_.begin()) return 0.0;
  return cum_[std::distance(points_.begin(), it) - 1];
}

double PathDirection::jump_sum() const { return cum_.empty() ? 0.0 : cum_.back(); }

PathDirection PathDirection::from_gamma(const DiscretizedRate& r,
                                        const Eigen::VectorXd& gamma) {
  if (gamma.size() != static_cast<Eigen::Index>(r.size()))
    throw SpecError("PathDirection: gamma size mismatch");
  std::vector<double> jumps(r.size());
  for (std::size_t i = 0; i < r.size(); ++i)
    jumps[i] = r.mass[i] * gamma(static_cast<Eigen::Index>(i));
  return step(r.grid, std::move(jumps));
}

PathDirection2 PathDirection2::step(std::vector<std::pair<double, double>> points,
                                    std::vector<double> jumps) {
  if (points.size() != jumps.size() || points.empty())
    throw SpecError("PathDirection2: bad step data");
  PathDirection2 d;
  d.points_ = std::move(points);
  d.jumps_ = std::move(jumps);
  return d;
}

PathDirection2 PathDirection2::smooth(std::function<double(double, double)> f) {
  if (!f) throw SpecError("PathDirection2: null function");
  PathDirection2 d;
  d.fn_ = std::move(f);
  return d;
}

double PathDirection2::at(double x, double y) const {
  if (fn_) return fn_(x, y);
  double acc = 0;
  for (std::size_t l = 0; l < points_.size(); ++l)
    if (points_[l].first <= x && points_[l].second <= y) acc += jumps_[l];
  return acc;
}

PathDirection2 PathDirection2::from_gamma(const DiscretizedRate2& r,
                                          const Eigen::VectorXd& gamma) {
  if (gamma.size() != static_cast<Eigen::Index>(r.size()))
    throw SpecError("PathDirection2: gamma size mismatch");
  std::vector<double> jumps(r.size());
  for (std::size_t l = 0; l < r.size(); ++l)
    jumps[l] = r.mass[l] * gamma(static_cast<Eigen::Index>(l));
  return step(r.grid, std::move(jumps));
}

// --------------------------------------------------------------------------

WilcoxonBilinearOp::WilcoxonBilinearOp(Distribution F, Distribution G)
    : F_(std::move(F)), G_(std::move(G)) {}

namespace {

// int A dbeta: exact for step beta, by parts (-int beta dA) for smooth beta
// vanishing at the ends of A's support.
double int_cdf_dpath(const Distribution& A, const PathDirection& beta) {
  if (beta.is_step()) {
    double acc = 0;
    for (std::size_t k = 0; k < beta.points().size(); ++k)
      acc += A.cdf(beta.points()[k]) * beta.jumps()[k];
    return acc;
  }
  if (!A.is_continuous())
    throw SpecError("wilcoxon op: smooth directions need continuous base CDFs");
  return -integrate([&](double u) { return beta.at(A.quantile(u)); }, 0.0, 1.0, 1e-10,
                    1e-14);
}

// int alpha dB.
double int_path_dcdf(const PathDirection& alpha, const Distribution& B) {
  if (alpha.is_step()) {
    double acc = 0;
    for (std::size_t k = 0; k < alpha.points().size(); ++k)
      acc += alpha.jumps()[k] * (1.0 - B.cdf_left(alpha.points()[k]));
    return acc;
  }
  if (!B.is_continuous())
    throw SpecError("wilcoxon op: smooth directions need continuous base CDFs");
  return integrate([&](double u) { return alpha.at(B.quantile(u)); }, 0.0, 1.0, 1e-10,
                   1e-14);
}

}  // namespace

double WilcoxonBilinearOp::apply(const PathDirection& alpha, const PathDirection& beta) const {
  return int_cdf_dpath(F_, beta) + int_path_dcdf(alpha, G_);
}

Eigen::MatrixXd WilcoxonBilinearOp::rows(const DiscretizedRate& rf,
                                         const DiscretizedRate& rg) const {
  Eigen::MatrixXd c(1, static_cast<Eigen::Index>(rf.size() + rg.size()));
  for (std::size_t i = 0; i < rf.size(); ++i)
    c(0, static_cast<Eigen::Index>(i)) = rf.mass[i] * (1.0 - G_.cdf_left(rf.grid[i]));
  for (std::size_t j = 0; j < rg.size(); ++j)
    c(0, static_cast<Eigen::Index>(rf.size() + j)) = rg.mass[j] * F_.cdf(rg.grid[j]);
  return c;
}

double WilcoxonBilinearOp::phi(double t, const PathDirection& alpha,
                               const PathDirection& beta) const {
  const double lo = std::min(F_.support_lo(1e-12), G_.support_lo(1e-12));
  const double hi = std::max(F_.support_hi(1e-12), G_.support_hi(1e-12));
  constexpr int kPanels = 40000;
  const double h = (hi - lo) / kPanels;
  long double acc = 0;
  double b_prev = G_.cdf(lo) + t * beta.at(lo);
  for (int k = 0; k < kPanels; ++k) {
    const double x1 = lo + (k + 1) * h;
    const double xm = lo + (k + 0.5) * h;
    const double b_next = G_.cdf(x1) + t * beta.at(x1);
    acc += static_cast<long double>(F_.cdf(xm) + t * alpha.at(xm)) * (b_next - b_prev);
    b_prev = b_next;
  }
  return static_cast<double>(acc);
}

// --------------------------------------------------------------------------

ProductIntegralOp::ProductIntegralOp(CensoredModel m, std::vector<double> times)
    : model_(std::move(m)), times_(std::move(times)) {
  if (!model_.continuous())
    throw SpecError("product-integral op: continuous lifetime model required");
  for (double t : times_)
    if (!(t >= 0 && t <= model_.tau()))
      throw SpecError("product-integral op: times must lie in [0,tau]");
}

Eigen::VectorXd ProductIntegralOp::apply(const PathDirection& alpha) const {
  Eigen::VectorXd out(static_cast<Eigen::Index>(times_.size()));
  const double a0 = alpha.at(0.0);
  for (std::size_t k = 0; k < times_.size(); ++k) {
    const double surv = std::exp(-(model_.cumulative_hazard(times_[k]) -
                                   model_.cumulative_hazard(0.0)));
    out(static_cast<Eigen::Index>(k)) = surv * (alpha.at(times_[k]) - a0);
  }
  return out;
}

Eigen::VectorXd ProductIntegralOp::phi(double t, const PathDirection& alpha) const {
  if (alpha.is_step())
    throw SpecError("product-integral op: perturbed evaluation needs smooth directions");
  Eigen::VectorXd out(static_cast<Eigen::Index>(times_.size()));
  const double a0 = alpha.at(0.0);
  for (std::size_t k = 0; k < times_.size(); ++k) {
    const double dl = model_.cumulative_hazard(times_[k]) - model_.cumulative_hazard(0.0);
    out(static_cast<Eigen::Index>(k)) = std::exp(-dl + t * (alpha.at(times_[k]) - a0));
  }
  return out;
}

// --------------------------------------------------------------------------

InverseMapOp::InverseMapOp(Distribution F, std::vector<double> ps)
    : F_(std::move(F)), ps_(std::move(ps)) {
  if (!F_.has_density())
    throw SpecError("inverse-map op: F needs a positive density (Theorem hypothesis)");
  for (double p : ps_) {
    if (!(p > 0 && p < 1)) throw SpecError("inverse-map op: p must be in (0,1)");
    const double q = F_.quantile(p);
    const double f = F_.density(q);
    if (!(f > 0))
      throw DegenerateRate("inverse-map op: zero density at a requested quantile");
    quantiles_.push_back(q);
    densities_.push_back(f);
  }
}

Eigen::VectorXd InverseMapOp::apply(const PathDirection& alpha) const {
  Eigen::VectorXd out(static_cast<Eigen::Index>(ps_.size()));
  for (std::size_t k = 0; k < ps_.size(); ++k)
    out(static_cast<Eigen::Index>(k)) = -alpha.at(quantiles_[k]) / densities_[k];
  return out;
}

Eigen::MatrixXd InverseMapOp::rows(const DiscretizedRate& r) const {
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(ps_.size()),
                                            static_cast<Eigen::Index>(r.size()));
  for (std::size_t k = 0; k < ps_.size(); ++k)
    for (std::size_t i = 0; i < r.size(); ++i)
      if (r.grid[i] <= quantiles_[k])
        c(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) =
            -r.mass[i] / densities_[k];
  return c;
}

Eigen::VectorXd InverseMapOp::phi(double t, const PathDirection& alpha) const {
  const double lo = F_.support_lo(1e-14);
  const double hi = F_.support_hi(1e-14);
  Eigen::VectorXd out(static_cast<Eigen::Index>(ps_.size()));
  for (std::size_t k = 0; k < ps_.size(); ++k) {
    const auto A = [&](double x) { return F_.cdf(x) + t * alpha.at(x); };
    out(static_cast<Eigen::Index>(k)) = invert_monotone(A, ps_[k], lo, hi);
  }
  return out;
}

// --------------------------------------------------------------------------

CopulaOp CopulaOp::independent(Distribution F, Distribution G,
                               std::vector<std::pair<double, double>> uv) {
  if (!F.has_density() || !G.has_density())
    throw SpecError("copula op: marginals need positive densities");
  CopulaOp op(std::move(F), std::move(G));
  op.uv_ = std::move(uv);
  for (const auto& [u, v] : op.uv_)
    if (!(u > 0 && u < 1 && v > 0 && v < 1))
      throw SpecError("copula op: grid points must lie in (0,1)^2");
  const Distribution F2 = op.F_, G2 = op.G_;
  op.H_ = [F2, G2](double x, double y) { return F2.cdf(x) * G2.cdf(y); };
  op.Hx_ = [F2, G2](double x, double y) { return F2.density(x) * G2.cdf(y); };
  op.Hy_ = [F2, G2](double x, double y) { return F2.cdf(x) * G2.density(y); };
  return op;
}

Eigen::VectorXd CopulaOp::apply(const PathDirection2& alpha) const {
  Eigen::VectorXd out(static_cast<Eigen::Index>(uv_.size()));
  for (std::size_t k = 0; k < uv_.size(); ++k) {
    const auto [u, v] = uv_[k];
    const double q1 = F_.quantile(u), q2 = G_.quantile(v);
    const double f = F_.density(q1), g = G_.density(q2);
    out(static_cast<Eigen::Index>(k)) = alpha.at(q1, q2) -
                                        Hx_(q1, q2) / f * alpha.at(q1, kInf) -
                                        Hy_(q1, q2) / g * alpha.at(kInf, q2);
  }
  return out;
}

Eigen::MatrixXd CopulaOp::rows(const DiscretizedRate2& r) const {
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(uv_.size()),
                                            static_cast<Eigen::Index>(r.size()));
  for (std::size_t k = 0; k < uv_.size(); ++k) {
    const auto [u, v] = uv_[k];
    const double q1 = F_.quantile(u), q2 = G_.quantile(v);
    const double cx = Hx_(q1, q2) / F_.density(q1);
    const double cy = Hy_(q1, q2) / G_.density(q2);
    for (std::size_t l = 0; l < r.size(); ++l) {
      const bool in_x = r.grid[l].first <= q1;
      const bool in_y = r.grid[l].second <= q2;
      c(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) =
          r.mass[l] * ((in_x && in_y ? 1.0 : 0.0) - cx * (in_x ? 1.0 : 0.0) -
                       cy * (in_y ? 1.0 : 0.0));
    }
  }
  return c;
}

Eigen::VectorXd CopulaOp::phi(double t, const PathDirection2& alpha) const {
  const double lox = F_.support_lo(1e-14), hix = F_.support_hi(1e-14);
  const double loy = G_.support_lo(1e-14), hiy = G_.support_hi(1e-14);
  Eigen::VectorXd out(static_cast<Eigen::Index>(uv_.size()));
  for (std::size_t k = 0; k < uv_.size(); ++k) {
    const auto [u, v] = uv_[k];
    const auto Ft = [&](double x) { return F_.cdf(x) + t * alpha.at(x, kInf); };
    const auto Gt = [&](double y) { return G_.cdf(y) + t * alpha.at(kInf, y); };
    const double q1 = invert_monotone(Ft, u, lox, hix);
    const double q2 = invert_monotone(Gt, v, loy, hiy);
    out(static_cast<Eigen::Index>(k)) = H_(q1, q2) + t * alpha.at(q1, q2);
  }
  return out;
}

// --------------------------------------------------------------------------

MRootOp::MRootOp(std::function<double(double)> psi0, double theta0, double eta, double deriv)
    : psi0_(std::move(psi0)), theta0_(theta0), eta_(eta), A_(deriv) {
  if (!psi0_) throw SpecError("m-root op: null base function");
  if (!(eta_ > 0)) throw SpecError("m-root op: eta must be > 0");
  if (A_ == 0) throw DegenerateRate("m-root op: singular derivative");
}

double MRootOp::apply(const std::function<double(double)>& h) const {
  return -h(theta0_) / A_;
}

Eigen::MatrixXd MRootOp::rows(const DiscretizedRate& r, const PsiSpec& psi) const {
  Eigen::MatrixXd c(1, static_cast<Eigen::Index>(r.size()));
  for (std::size_t i = 0; i < r.size(); ++i)
    c(0, static_cast<Eigen::Index>(i)) = -r.mass[i] * psi.psi(r.grid[i], theta0_) / A_;
  return c;
}

double MRootOp::phi(double t, const std::function<double(double)>& h) const {
  const auto g = [&](double th) { return psi0_(th) + t * h(th); };
  double lo = theta0_ - eta_, hi = theta0_ + eta_;
  double glo = g(lo), ghi = g(hi);
  if (glo == 0) return lo;
  if (ghi == 0) return hi;
  if ((glo < 0) == (ghi < 0))
    throw NumericError("m-root op: perturbed map has no root in the box");
  if (glo > 0) {  // make g increasing across the bracket for the bisection
    return invert_monotone([&](double th) { return -g(th); }, 0.0, lo, hi);
  }
  return invert_monotone(g, 0.0, lo, hi);
}

// --------------------------------------------------------------------------

LstatLinearOp::LstatLinearOp(ScoreFunction J, Distribution F)
    : J_(std::move(J)), F_(std::move(F)) {
  if (!F_.is_continuous()) throw SpecError("l-stat op: continuous F required");
  if (J_.trimmed()) {
    const auto [t1, t2] = J_.trim_bounds();
    lo_ = F_.quantile(std::max(t1, 1e-14));
    hi_ = F_.quantile(std::min(t2, 1.0 - 1e-14));
  } else {
    lo_ = F_.support_lo(1e-10);
    hi_ = F_.support_hi(1e-10);
  }
}

double LstatLinearOp::cum_JF(double s) const {
  if (s == lo_) return 0.0;
  const auto f = [this](double x) { return J_(F_.cdf(x)); };
  std::vector<double> breaks;
  if (J_.trimmed()) breaks = {lo_, hi_};
  if (s > lo_) return integrate_with_breakpoints(f, lo_, s, breaks, 1e-10, 1e-14);
  return -integrate_with_breakpoints(f, s, lo_, breaks, 1e-10, 1e-14);
}

double LstatLinearOp::apply(const PathDirection& alpha) const {
  if (alpha.is_step()) {
    if (!J_.trimmed()) {
      double scale = 0;
      for (double j : alpha.jumps()) scale += std::fabs(j);
      if (std::fabs(alpha.jump_sum()) > 1e-9 * (1.0 + scale))
        throw SpecError("l-stat op: untrimmed score needs a centered step direction");
    }
    long double acc = 0;
    if (J_.trimmed()) {
      // -sum j_k int_{p_k}^{hi} J(F) dx, exact tail form
      const double full = cum_JF(hi_);
      for (std::size_t k = 0; k < alpha.points().size(); ++k) {
        const double p = alpha.points()[k];
        const double tail = p >= hi_ ? 0.0 : full - cum_JF(std::max(p, lo_));
        acc -= alpha.jumps()[k] * tail;
      }
    } else {
      for (std::size_t k = 0; k < alpha.points().size(); ++k)
        acc += alpha.jumps()[k] * cum_JF(alpha.points()[k]);
    }
    return static_cast<double>(acc);
  }
  return -integrate([&](double x) { return alpha.at(x) * J_(F_.cdf(x)); }, lo_, hi_,
                    1e-10, 1e-14);
}

Eigen::MatrixXd LstatLinearOp::rows(const DiscretizedRate& r) const {
  Eigen::MatrixXd c(1, static_cast<Eigen::Index>(r.size()));
  // anchored cumulative int J(F) dx along the sorted grid; valid modulo the
  // centering row
  double acc = cum_JF(r.grid[0]);
  c(0, 0) = r.mass[0] * acc;
  const auto f = [this](double x) { return J_(F_.cdf(x)); };
  for (std::size_t i = 1; i < r.size(); ++i) {
    std::vector<double> breaks;
    if (J_.trimmed()) breaks = {lo_, hi_};
    acc += integrate_with_breakpoints(f, r.grid[i - 1], r.grid[i], breaks, 1e-10, 1e-14);
    c(0, static_cast<Eigen::Index>(i)) = r.mass[i] * acc;
  }
  return c;
}

double LstatLinearOp::phi(double t, const PathDirection& alpha) const {
  if (!J_.trimmed())
    throw SpecError("l-stat op: perturbed evaluation needs a trimmed score");
  const auto [t1, t2] = J_.trim_bounds();
  const double lo = F_.support_lo(1e-14), hi = F_.support_hi(1e-14);
  const auto Ft = [&](double x) { return F_.cdf(x) + t * alpha.at(x); };
  // fixed-node composite quadrature: the nodes are shared across t, so the
  // discretization bias cancels in difference quotients
  constexpr int kPanels = 64;
  constexpr double gx[4] = {0.3399810435848563, 0.8611363115940526, 0, 0};
  constexpr double gw[4] = {0.6521451548625461, 0.3478548451374538, 0, 0};
  const double h = (t2 - t1) / kPanels;
  long double acc = 0;
  for (int k = 0; k < kPanels; ++k) {
    const double c = t1 + (k + 0.5) * h;
    for (int j = 0; j < 2; ++j) {
      for (double sgn : {-1.0, 1.0}) {
        const double s = c + sgn * 0.5 * h * gx[j];
        acc += 0.5 * h * gw[j] * invert_monotone(Ft, s, lo, hi) * J_(s);
      }
    }
  }
  return static_cast<double>(acc);
}

// --------------------------------------------------------------------------

HadamardReport check_hadamard(const std::function<Eigen::VectorXd(double)>& phi_at,
                              const Eigen::VectorXd& derivative, int kmax) {
  HadamardReport rep;
  rep.deriv_norm = derivative.size() ? derivative.cwiseAbs().maxCoeff() : 0.0;
  const Eigen::VectorXd base = phi_at(0.0);
  if (base.size() != derivative.size())
    throw SpecError("check_hadamard: codomain size mismatch");
  for (int k = 1; k <= kmax; ++k) {
    const double t = std::ldexp(1.0, -k);
    const Eigen::VectorXd quotient = (phi_at(t) - base) / t;
    rep.t.push_back(t);
    rep.err.push_back((quotient - derivative).cwiseAbs().maxCoeff());
  }
  const double thresh = 1e-3 * (1.0 + rep.deriv_norm);
  // decrease is enforced until the errors fall below the convergence
  // threshold; beyond that they sit on the evaluation noise floor
  rep.monotone = true;
  for (std::size_t k = 0; k + 1 < rep.err.size(); ++k)
    if (rep.err[k] >= thresh &&
        rep.err[k + 1] > rep.err[k] * 1.05 + 1e-12 * (1.0 + rep.deriv_norm))
      rep.monotone = false;
  rep.converged = rep.err.back() < thresh;
  rep.pass = rep.monotone && rep.converged;
  return rep;
}

}  // namespace mdev
