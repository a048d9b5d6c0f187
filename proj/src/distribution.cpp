#include "mdev/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/policies/policy.hpp>

#include "mdev/errors.hpp"

namespace mdev {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Stay in double precision inside boost; the default policy promotes to
// long double and roughly doubles the cost per quantile call.
using fast_policy = boost::math::policies::policy<
    boost::math::policies::promote_double<false>,
    boost::math::policies::overflow_error<boost::math::policies::ignore_error>>;
const boost::math::normal_distribution<double, fast_policy> kStdNormal(0.0, 1.0);

}  // namespace

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x * M_SQRT1_2); }

double std_normal_quantile(double p) {
  if (!(p > 0.0) || !(p < 1.0)) {
    if (p == 1.0) return kInf;
    if (p == 0.0) return -kInf;
    throw SpecError("std_normal_quantile: p outside [0,1]");
  }
  return boost::math::quantile(kStdNormal, p);
}

Distribution Distribution::uniform(double a, double b) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
    throw SpecError("uniform: need finite a < b");
  Distribution d;
  d.kind_ = DistKind::Uniform;
  d.p1_ = a;
  d.p2_ = b;
  return d;
}

Distribution Distribution::exponential(double rate) {
  if (!(rate > 0) || !std::isfinite(rate)) throw SpecError("exponential: rate must be > 0");
  Distribution d;
  d.kind_ = DistKind::Exponential;
  d.p1_ = rate;
  return d;
}

Distribution Distribution::normal(double mu, double sigma) {
  if (!(sigma > 0) || !std::isfinite(mu) || !std::isfinite(sigma))
    throw SpecError("normal: sigma must be > 0");
  Distribution d;
  d.kind_ = DistKind::Normal;
  d.p1_ = mu;
  d.p2_ = sigma;
  return d;
}

Distribution Distribution::point_mass(double c) {
  if (std::isnan(c) || c == -kInf) throw SpecError("point-mass: invalid atom");
  Distribution d;
  d.kind_ = DistKind::PointMass;
  d.p1_ = c;
  return d;
}

Distribution Distribution::table(std::vector<Atom> atoms) {
  if (atoms.empty()) throw SpecError("table: no atoms");
  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.x < b.x; });
  double total = 0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const Atom& a = atoms[i];
    if (!std::isfinite(a.x) || !(a.p > 0)) throw SpecError("table: atoms need finite x and p > 0");
    if (i > 0 && !(atoms[i - 1].x < a.x)) throw SpecError("table: duplicate atom");
    total += a.p;
  }
  if (std::fabs(total - 1.0) > 1e-12) throw SpecError("table: probabilities must sum to 1 within 1e-12");
  Distribution d;
  d.kind_ = DistKind::Table;
  d.atoms_ = std::move(atoms);
  d.cum_.resize(d.atoms_.size());
  double c = 0;
  for (std::size_t i = 0; i < d.atoms_.size(); ++i) {
    c += d.atoms_[i].p;
    d.cum_[i] = c;
  }
  d.cum_.back() = 1.0;
  return d;
}

double Distribution::cdf(double x) const {
  switch (kind_) {
    case DistKind::Uniform:
      if (x < p1_) return 0;
      if (x >= p2_) return 1;
      return (x - p1_) / (p2_ - p1_);
    case DistKind::Exponential:
      return x <= 0 ? 0.0 : -std::expm1(-p1_ * x);
    case DistKind::Normal:
      return std_normal_cdf((x - p1_) / p2_);
    case DistKind::PointMass:
      return x >= p1_ ? 1.0 : 0.0;
    case DistKind::Table: {
      auto it = std::upper_bound(atoms_.begin(), atoms_.end(), x,
                                 [](double v, const Atom& a) { return v < a.x; });
      return it == atoms_.begin() ? 0.0 : cum_[std::distance(atoms_.begin(), it) - 1];
    }
  }
  return 0;
}

double Distribution::cdf_left(double x) const {
  if (is_continuous()) return cdf(x);
  if (kind_ == DistKind::PointMass) return x > p1_ ? 1.0 : 0.0;
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), x,
                             [](const Atom& a, double v) { return a.x < v; });
  return it == atoms_.begin() ? 0.0 : cum_[std::distance(atoms_.begin(), it) - 1];
}

double Distribution::density(double x) const {
  switch (kind_) {
    case DistKind::Uniform:
      return (x >= p1_ && x <= p2_) ? 1.0 / (p2_ - p1_) : 0.0;
    case DistKind::Exponential:
      return x < 0 ? 0.0 : p1_ * std::exp(-p1_ * x);
    case DistKind::Normal: {
      const double z = (x - p1_) / p2_;
      return std::exp(-0.5 * z * z) / (p2_ * std::sqrt(2.0 * M_PI));
    }
    default:
      throw SpecError("density: distribution has no density");
  }
}

double Distribution::quantile(double p) const {
  if (!(p > 0) || p > 1) throw SpecError("quantile: p must be in (0,1]");
  switch (kind_) {
    case DistKind::Uniform:
      return p1_ + p * (p2_ - p1_);
    case DistKind::Exponential:
      return p == 1.0 ? kInf : -std::log1p(-p) / p1_;
    case DistKind::Normal:
      return p == 1.0 ? kInf : p1_ + p2_ * std_normal_quantile(p);
    case DistKind::PointMass:
      return p1_;
    case DistKind::Table: {
      auto it = std::lower_bound(cum_.begin(), cum_.end(), p - 1e-15);
      if (it == cum_.end()) --it;
      return atoms_[std::distance(cum_.begin(), it)].x;
    }
  }
  return 0;
}

double Distribution::sample(Rng& rng) const {
  const double u = rng.uniform01();
  switch (kind_) {
    case DistKind::Uniform:
      return p1_ + u * (p2_ - p1_);
    case DistKind::Exponential:
      return -std::log1p(-u) / p1_;
    case DistKind::Normal:
      return p1_ + p2_ * std_normal_quantile(u);
    case DistKind::PointMass:
      return p1_;
    case DistKind::Table: {
      auto it = std::lower_bound(cum_.begin(), cum_.end(), u);
      if (it == cum_.end()) --it;
      return atoms_[std::distance(cum_.begin(), it)].x;
    }
  }
  return 0;
}

double Distribution::mean() const {
  switch (kind_) {
    case DistKind::Uniform:
      return 0.5 * (p1_ + p2_);
    case DistKind::Exponential:
      return 1.0 / p1_;
    case DistKind::Normal:
      return p1_;
    case DistKind::PointMass:
      return p1_;
    case DistKind::Table: {
      double m = 0;
      for (const Atom& a : atoms_) m += a.x * a.p;
      return m;
    }
  }
  return 0;
}

double Distribution::variance() const {
  switch (kind_) {
    case DistKind::Uniform: {
      const double w = p2_ - p1_;
      return w * w / 12.0;
    }
    case DistKind::Exponential:
      return 1.0 / (p1_ * p1_);
    case DistKind::Normal:
      return p2_ * p2_;
    case DistKind::PointMass:
      return 0;
    case DistKind::Table: {
      const double m = mean();
      double v = 0;
      for (const Atom& a : atoms_) v += (a.x - m) * (a.x - m) * a.p;
      return v;
    }
  }
  return 0;
}

double Distribution::support_lo(double eps) const {
  switch (kind_) {
    case DistKind::Uniform:
      return p1_;
    case DistKind::Exponential:
      return 0;
    case DistKind::Normal:
      return quantile(eps);
    case DistKind::PointMass:
      return p1_;
    case DistKind::Table:
      return atoms_.front().x;
  }
  return 0;
}

double Distribution::support_hi(double eps) const {
  switch (kind_) {
    case DistKind::Uniform:
      return p2_;
    case DistKind::Exponential:
      return quantile(1.0 - eps);
    case DistKind::Normal:
      return quantile(1.0 - eps);
    case DistKind::PointMass:
      return p1_;
    case DistKind::Table:
      return atoms_.back().x;
  }
  return 0;
}

namespace {

std::string fmt_num(double v) {
  if (v == kInf) return "inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string Distribution::to_string() const {
  switch (kind_) {
    case DistKind::Uniform:
      return "uniform(" + fmt_num(p1_) + "," + fmt_num(p2_) + ")";
    case DistKind::Exponential:
      return "exponential(" + fmt_num(p1_) + ")";
    case DistKind::Normal:
      return "normal(" + fmt_num(p1_) + "," + fmt_num(p2_) + ")";
    case DistKind::PointMass:
      return "point-mass(" + fmt_num(p1_) + ")";
    case DistKind::Table: {
      std::string s = "table(";
      for (std::size_t i = 0; i < atoms_.size(); ++i) {
        if (i) s += ",";
        s += fmt_num(atoms_[i].x) + ":" + fmt_num(atoms_[i].p);
      }
      return s + ")";
    }
  }
  return "";
}

namespace {

double parse_num(const std::string& s) {
  std::string t = s;
  t.erase(0, t.find_first_not_of(" \t"));
  t.erase(t.find_last_not_of(" \t") + 1);
  if (t == "inf" || t == "+inf") return kInf;
  std::size_t pos = 0;
  double v;
  try {
    v = std::stod(t, &pos);
  } catch (const std::exception&) {
    throw SpecError("cannot parse number: '" + s + "'");
  }
  if (pos != t.size()) throw SpecError("trailing characters in number: '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

Distribution Distribution::parse(const std::string& text) {
  std::string s = text;
  s.erase(0, s.find_first_not_of(" \t"));
  s.erase(s.find_last_not_of(" \t") + 1);
  const auto open = s.find('(');
  if (open == std::string::npos || s.back() != ')')
    throw SpecError("distribution syntax: '" + text + "'");
  const std::string name = s.substr(0, open);
  const std::string args = s.substr(open + 1, s.size() - open - 2);
  const auto parts = split(args, ',');
  if (name == "uniform") {
    if (parts.size() != 2) throw SpecError("uniform needs 2 parameters");
    return uniform(parse_num(parts[0]), parse_num(parts[1]));
  }
  if (name == "exponential") {
    if (parts.size() != 1) throw SpecError("exponential needs 1 parameter");
    return exponential(parse_num(parts[0]));
  }
  if (name == "normal") {
    if (parts.size() != 2) throw SpecError("normal needs 2 parameters");
    return normal(parse_num(parts[0]), parse_num(parts[1]));
  }
  if (name == "point-mass") {
    if (parts.size() != 1) throw SpecError("point-mass needs 1 parameter");
    return point_mass(parse_num(parts[0]));
  }
  if (name == "table") {
    std::vector<Atom> atoms;
    for (const auto& part : parts) {
      const auto kv = split(part, ':');
      if (kv.size() != 2) throw SpecError("table atoms are x:p pairs");
      atoms.push_back({parse_num(kv[0]), parse_num(kv[1])});
    }
    return table(std::move(atoms));
  }
  throw SpecError("unknown distribution kind: '" + name + "'");
}

}  // namespace mdev
