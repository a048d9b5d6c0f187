#include "mdev/estimators.hpp"

#include <algorithm>
#include <cmath>

#include "mdev/errors.hpp"

namespace mdev {

StepFunction ecdf(const Sample& s) {
  const auto n = static_cast<double>(s.n());
  std::vector<double> points, jumps;
  std::size_t i = 0;
  while (i < s.n()) {
    std::size_t j = i;
    while (j < s.n() && s.values[j] == s.values[i]) ++j;
    points.push_back(s.values[i]);
    jumps.push_back(static_cast<double>(j - i) / n);
    i = j;
  }
  return StepFunction(std::move(points), std::move(jumps), 0.0);
}

double empirical_quantile(const Sample& s, double p) {
  if (!(p > 0) || p > 1) throw SpecError("empirical_quantile: p must be in (0,1]");
  const auto n = static_cast<double>(s.n());
  // ceil with a nudge so representation error in n*p cannot push the index up
  auto k = static_cast<std::size_t>(std::ceil(n * p - 1e-9));
  if (k < 1) k = 1;
  if (k > s.n()) k = s.n();
  return s.values[k - 1];
}

double wilcoxon_statistic(const Sample& x, const Sample& y) {
  const std::size_t m = x.n(), n = y.n();
  std::size_t i = 0;
  unsigned long long pairs = 0;
  for (std::size_t j = 0; j < n; ++j) {
    while (i < m && x.values[i] <= y.values[j]) ++i;
    pairs += i;
  }
  return static_cast<double>(pairs) / (static_cast<double>(m) * static_cast<double>(n));
}

namespace {

struct EventGroup {
  double z;
  std::size_t at_risk;
  std::size_t deaths;
};

// Groups the records by time; deaths sort before censorings at ties.
std::vector<EventGroup> event_groups(const CensoredSample& c) {
  std::vector<CensoredRecord> recs = c.records;
  std::sort(recs.begin(), recs.end(), [](const CensoredRecord& a, const CensoredRecord& b) {
    if (a.z != b.z) return a.z < b.z;
    return a.delta > b.delta;
  });
  std::vector<EventGroup> groups;
  std::size_t i = 0;
  while (i < recs.size()) {
    std::size_t j = i, deaths = 0;
    while (j < recs.size() && recs[j].z == recs[i].z) {
      deaths += static_cast<std::size_t>(recs[j].delta);
      ++j;
    }
    groups.push_back({recs[i].z, recs.size() - i, deaths});
    i = j;
  }
  return groups;
}

}  // namespace

StepFunction nelson_aalen(const CensoredSample& c) {
  std::vector<double> points, jumps;
  for (const EventGroup& g : event_groups(c)) {
    if (g.deaths == 0) continue;
    points.push_back(g.z);
    jumps.push_back(static_cast<double>(g.deaths) / static_cast<double>(g.at_risk));
  }
  return StepFunction(std::move(points), std::move(jumps), 0.0);
}

StepFunction kaplan_meier(const CensoredSample& c) {
  std::vector<double> points, jumps;
  long double surv = 1.0L;
  for (const EventGroup& g : event_groups(c)) {
    if (g.deaths == 0) continue;
    const auto y = static_cast<long double>(g.at_risk);
    const long double next = surv * (y - static_cast<long double>(g.deaths)) / y;
    points.push_back(g.z);
    jumps.push_back(static_cast<double>(surv - next));
    surv = next;
  }
  return StepFunction(std::move(points), std::move(jumps), 0.0);
}

std::vector<double> empirical_copula(const PairedSample& p,
                                     const std::vector<std::pair<double, double>>& grid) {
  const std::size_t n = p.n();
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = p.pairs[i].first;
    ys[i] = p.pairs[i].second;
  }
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  const Sample sx(xs), sy(ys);

  std::vector<double> out;
  out.reserve(grid.size());
  for (const auto& [u, v] : grid) {
    if (!(u > 0 && u < 1 && v > 0 && v < 1))
      throw SpecError("empirical_copula: grid point outside (0,1)^2");
    const double qx = empirical_quantile(sx, u);
    const double qy = empirical_quantile(sy, v);
    std::size_t count = 0;
    for (const auto& [x, y] : p.pairs) count += (x <= qx && y <= qy);
    out.push_back(static_cast<double>(count) / static_cast<double>(n));
  }
  return out;
}

double l_statistic(const Sample& s, const ScoreFunction& J) {
  const auto n = static_cast<double>(s.n());
  long double acc = 0;
  for (std::size_t i = 0; i < s.n(); ++i) {
    const double w = J.integral(static_cast<double>(i) / n, static_cast<double>(i + 1) / n);
    acc += static_cast<long double>(s.values[i]) * w;
  }
  return static_cast<double>(acc);
}

double m_estimate(const Sample& s, const PsiSpec& spec) {
  if (spec.dim != 1) throw SpecError("m_estimate: only d = 1 is supported");
  if (!(spec.eta > 0)) throw SpecError("m_estimate: eta must be > 0");

  const auto psi_n = [&](double theta) {
    long double acc = 0;
    for (double x : s.values) acc += spec.psi(x, theta);
    return static_cast<double>(acc / static_cast<long double>(s.n()));
  };

  const double lo = spec.theta0 - spec.eta, hi = spec.theta0 + spec.eta;
  const double ftol = 1e-10 * (1.0 + std::fabs(psi_n(spec.theta0)));

  // 1e3-point scan for a sign change or a near-zero.
  constexpr int kScan = 1000;
  double a = lo, fa = psi_n(lo);
  double b = 0, fb = 0;
  bool bracket = false;
  if (std::fabs(fa) <= ftol) return a;
  for (int k = 1; k <= kScan; ++k) {
    const double t = lo + (hi - lo) * static_cast<double>(k) / kScan;
    const double ft = psi_n(t);
    if (std::fabs(ft) <= ftol) return t;
    if ((fa < 0) != (ft < 0)) {
      b = t;
      fb = ft;
      bracket = true;
      break;
    }
    a = t;
    fa = ft;
  }
  if (!bracket) throw NoRootInBox("m_estimate: no sign change of Psi_n in the search box");

  // Bisection. For step-like psi the root may never evaluate near zero; the
  // final bracket midpoint is the answer by convention.
  const double xtol = 1e-13 * (1.0 + std::fabs(spec.theta0) + spec.eta);
  for (int it = 0; it < 200 && (b - a) > xtol; ++it) {
    const double mid = 0.5 * (a + b);
    const double fm = psi_n(mid);
    if (std::fabs(fm) <= ftol) return mid;
    if ((fa < 0) != (fm < 0)) {
      b = mid;
      fb = fm;
    } else {
      a = mid;
      fa = fm;
    }
  }
  const double result = 0.5 * (a + b);
  const double fr = std::fabs(psi_n(result));

  // Secant polish inside the bracket.
  double x0 = a, f0 = fa, x1 = b, f1 = fb;
  double polished = result, fp = fr;
  for (int it = 0; it < 30 && f1 != f0; ++it) {
    const double x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
    if (!(x2 >= a && x2 <= b)) break;
    const double f2 = psi_n(x2);
    if (std::fabs(f2) < fp) {
      fp = std::fabs(f2);
      polished = x2;
    }
    x0 = x1;
    f0 = f1;
    x1 = x2;
    f1 = f2;
    if (fp <= 1e-3 * ftol) break;
  }
  return fp <= ftol ? polished : result;
}

}  // namespace mdev
