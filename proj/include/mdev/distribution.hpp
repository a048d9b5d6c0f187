#pragma once

#include <string>
#include <vector>

#include "mdev/rng.hpp"

namespace mdev {

enum class DistKind { Uniform, Exponential, Normal, PointMass, Table };

struct Atom {
  double x;
  double p;
};

// One-dimensional distribution with explicit CDF, quantile and sampler.
// Continuous kinds also expose a density. Sampling is inverse-CDF on one
// canonical uniform per draw, so output is a pure function of the Rng state.
class Distribution {
 public:
  static Distribution uniform(double a, double b);
  static Distribution exponential(double rate);
  static Distribution normal(double mu, double sigma);
  // c == +infinity is allowed and acts as the "no censoring" sentinel.
  static Distribution point_mass(double c);
  // Finite discrete measure; probabilities must sum to 1 within 1e-12.
  static Distribution table(std::vector<Atom> atoms);

  DistKind kind() const { return kind_; }
  bool is_continuous() const {
    return kind_ == DistKind::Uniform || kind_ == DistKind::Exponential ||
           kind_ == DistKind::Normal;
  }
  bool has_density() const { return is_continuous(); }

  double cdf(double x) const;
  double cdf_left(double x) const;  // P(X < x)
  double density(double x) const;
  double quantile(double p) const;  // inf{x : F(x) >= p}, p in (0,1]
  double sample(Rng& rng) const;

  double mean() const;
  double variance() const;

  // Effective support bounds for quadrature: exact for bounded kinds,
  // quantile(eps) / quantile(1-eps) otherwise.
  double support_lo(double eps = 1e-12) const;
  double support_hi(double eps = 1e-12) const;

  const std::vector<Atom>& atoms() const { return atoms_; }
  double param1() const { return p1_; }
  double param2() const { return p2_; }

  // Config grammar: uniform(a,b) exponential(rate) normal(mu,sigma)
  // point-mass(c|inf) table(x1:p1,x2:p2,...).
  std::string to_string() const;
  static Distribution parse(const std::string& text);

 private:
  Distribution() = default;

  DistKind kind_{};
  double p1_ = 0, p2_ = 0;
  std::vector<Atom> atoms_;   // table kind, sorted by x
  std::vector<double> cum_;   // cumulative probabilities for table kind
};

// Standard normal helpers shared across modules.
double std_normal_cdf(double x);
double std_normal_quantile(double p);

}  // namespace mdev
