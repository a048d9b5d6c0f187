#pragma once

#include <functional>
#include <optional>
#include <vector>

namespace mdev {

// Score function J on (0,1) for L-statistics. Piecewise-polynomial scores
// carry their pieces so cell integrals are exact; anything else integrates
// with Gauss-Legendre(8) per cell.
class ScoreFunction {
 public:
  struct Piece {
    double lo, hi;
    std::vector<double> coef;  // c0 + c1 u + c2 u^2 + ...
  };

  static ScoreFunction constant(double c);
  // c / (t2 - t1) question of normalization is left to the caller: this is
  // literally c on [t1,t2] and 0 outside.
  static ScoreFunction trimmed_constant(double t1, double t2, double c);
  static ScoreFunction piecewise(std::vector<Piece> pieces);
  static ScoreFunction from_function(std::function<double(double)> f,
                                     std::optional<std::pair<double, double>> trim = {},
                                     std::optional<double> lipschitz = {});

  double operator()(double u) const;
  // Integral of J over [a,b] within [0,1]; exact for piecewise polynomials.
  double integral(double a, double b) const;

  bool piecewise_exact() const { return !pieces_.empty(); }
  bool trimmed() const { return trim_.has_value(); }
  std::pair<double, double> trim_bounds() const;
  std::optional<double> lipschitz() const { return lipschitz_; }
  bool is_constant_one_piece(double& value) const;

 private:
  ScoreFunction() = default;

  std::vector<Piece> pieces_;                    // nonempty => exact integration
  std::function<double(double)> fn_;             // fallback evaluator
  std::optional<std::pair<double, double>> trim_;
  std::optional<double> lipschitz_;
};

}  // namespace mdev
