#include "mdev/score_function.hpp"

#include <algorithm>
#include <cmath>

#include "mdev/errors.hpp"

namespace mdev {

namespace {

// 8-point Gauss-Legendre nodes/weights on [-1,1].
constexpr double kGL8x[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                             -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                             0.7966664774136267,  0.9602898564975363};
constexpr double kGL8w[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                             0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                             0.2223810344533745, 0.1012285362903763};

double poly_eval(const std::vector<double>& c, double u) {
  double v = 0;
  for (std::size_t i = c.size(); i-- > 0;) v = v * u + c[i];
  return v;
}

double poly_integral(const std::vector<double>& c, double a, double b) {
  double va = 0, vb = 0;
  for (std::size_t i = c.size(); i-- > 0;) {
    va = va * a + c[i] / static_cast<double>(i + 1);
    vb = vb * b + c[i] / static_cast<double>(i + 1);
  }
  return vb * b - va * a;
}

}  // namespace

ScoreFunction ScoreFunction::constant(double c) {
  return piecewise({{0.0, 1.0, {c}}});
}

ScoreFunction ScoreFunction::trimmed_constant(double t1, double t2, double c) {
  if (!(0 <= t1 && t1 < t2 && t2 <= 1)) throw SpecError("score: need 0 <= t1 < t2 <= 1");
  ScoreFunction s = piecewise({{t1, t2, {c}}});
  s.trim_ = {t1, t2};
  return s;
}

ScoreFunction ScoreFunction::piecewise(std::vector<Piece> pieces) {
  if (pieces.empty()) throw SpecError("score: no pieces");
  std::sort(pieces.begin(), pieces.end(),
            [](const Piece& a, const Piece& b) { return a.lo < b.lo; });
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (!(pieces[i].lo < pieces[i].hi)) throw SpecError("score: empty piece");
    if (i > 0 && pieces[i].lo < pieces[i - 1].hi - 1e-15)
      throw SpecError("score: overlapping pieces");
  }
  ScoreFunction s;
  s.pieces_ = std::move(pieces);
  return s;
}

ScoreFunction ScoreFunction::from_function(std::function<double(double)> f,
                                           std::optional<std::pair<double, double>> trim,
                                           std::optional<double> lipschitz) {
  if (!f) throw SpecError("score: null evaluator");
  ScoreFunction s;
  s.fn_ = std::move(f);
  s.trim_ = trim;
  s.lipschitz_ = lipschitz;
  return s;
}

double ScoreFunction::operator()(double u) const {
  if (trim_ && (u < trim_->first || u > trim_->second)) return 0.0;
  if (!pieces_.empty()) {
    for (const Piece& p : pieces_)
      if (u >= p.lo && u <= p.hi) return poly_eval(p.coef, u);
    return 0.0;
  }
  return fn_(u);
}

double ScoreFunction::integral(double a, double b) const {
  a = std::max(a, 0.0);
  b = std::min(b, 1.0);
  if (!(a < b)) return 0.0;
  if (trim_) {
    a = std::max(a, trim_->first);
    b = std::min(b, trim_->second);
    if (!(a < b)) return 0.0;
  }
  if (!pieces_.empty()) {
    double total = 0;
    for (const Piece& p : pieces_) {
      const double lo = std::max(a, p.lo), hi = std::min(b, p.hi);
      if (lo < hi) total += poly_integral(p.coef, lo, hi);
    }
    return total;
  }
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double acc = 0;
  for (int i = 0; i < 8; ++i) acc += kGL8w[i] * fn_(mid + half * kGL8x[i]);
  return acc * half;
}

std::pair<double, double> ScoreFunction::trim_bounds() const {
  if (trim_) return *trim_;
  return {0.0, 1.0};
}

bool ScoreFunction::is_constant_one_piece(double& value) const {
  if (pieces_.size() == 1 && pieces_[0].lo == 0.0 && pieces_[0].hi == 1.0 &&
      pieces_[0].coef.size() == 1) {
    value = pieces_[0].coef[0];
    return true;
  }
  return false;
}

}  // namespace mdev
