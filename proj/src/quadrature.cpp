#include "mdev/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "mdev/errors.hpp"

namespace mdev {

namespace {

// Gauss-Kronrod 7-15 nodes and weights (positive half, QUADPACK values).
constexpr double kXgk[8] = {0.991455371120813, 0.949107912342759, 0.864864423359769,
                            0.741531185599394, 0.586087235467691, 0.405845151377397,
                            0.207784955007898, 0.000000000000000};
constexpr double kWgk[8] = {0.022935322010529, 0.063092092629979, 0.104790010322250,
                            0.140653259715525, 0.169004726639267, 0.190350578064785,
                            0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                           0.417959183673469};

struct Segment {
  double a, b, value, err;
  bool operator<(const Segment& o) const { return err < o.err; }
};

Segment panel(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double fv[15];
  const double fc = f(c);
  double resk = kWgk[7] * fc, resg = kWg[3] * fc, resabs = kWgk[7] * std::fabs(fc);
  for (int i = 0; i < 7; ++i) {
    const double lo = f(c - h * kXgk[i]);
    const double hi = f(c + h * kXgk[i]);
    fv[i] = lo;
    fv[7 + i] = hi;
    resk += kWgk[i] * (lo + hi);
    resabs += kWgk[i] * (std::fabs(lo) + std::fabs(hi));
    if (i % 2 == 1) resg += kWg[i / 2] * (lo + hi);
  }
  fv[14] = fc;
  const double mean = 0.5 * resk;
  double resasc = kWgk[7] * std::fabs(fc - mean);
  for (int i = 0; i < 7; ++i)
    resasc += kWgk[i] * (std::fabs(fv[i] - mean) + std::fabs(fv[7 + i] - mean));
  resasc *= std::fabs(h);
  resabs *= std::fabs(h);
  double err = std::fabs((resk - resg) * h);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  return {a, b, resk * h, err};
}

double adaptive(const std::function<double(double)>& f, std::vector<Segment> init,
                double rel_tol, double abs_tol, int max_intervals) {
  std::priority_queue<Segment> heap;
  double total = 0, toterr = 0;
  for (const Segment& s : init) {
    total += s.value;
    toterr += s.err;
    heap.push(s);
  }
  int n = static_cast<int>(init.size());
  while (toterr > std::max(abs_tol, rel_tol * std::fabs(total))) {
    if (n >= max_intervals || heap.empty())
      throw QuadratureError("adaptive quadrature did not converge");
    const Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b)
      throw QuadratureError("adaptive quadrature: interval too small");
    const Segment l = panel(f, worst.a, mid);
    const Segment r = panel(f, mid, worst.b);
    total += l.value + r.value - worst.value;
    toterr += l.err + r.err - worst.err;
    heap.push(l);
    heap.push(r);
    ++n;
  }
  return total;
}

}  // namespace

double gauss_kronrod_panel(const std::function<double(double)>& f, double a, double b,
                           double& err) {
  const Segment s = panel(f, a, b);
  err = s.err;
  return s.value;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol, double abs_tol, int max_intervals) {
  if (a == b) return 0.0;
  return adaptive(f, {panel(f, a, b)}, rel_tol, abs_tol, max_intervals);
}

double integrate_with_breakpoints(const std::function<double(double)>& f, double a,
                                  double b, const std::vector<double>& breaks,
                                  double rel_tol, double abs_tol, int max_intervals) {
  if (a == b) return 0.0;
  std::vector<double> pts{a};
  for (double x : breaks)
    if (x > a && x < b) pts.push_back(x);
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  std::vector<Segment> init;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    if (pts[i] < pts[i + 1]) init.push_back(panel(f, pts[i], pts[i + 1]));
  return adaptive(f, std::move(init), rel_tol, abs_tol, max_intervals);
}

double golden_section_max(const std::function<double(double)>& f, double a, double b,
                          double xtol) {
  constexpr double invphi = 0.6180339887498949;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > xtol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace mdev
