#pragma once

#include <string>
#include <vector>

namespace mdev {

// Right-continuous piecewise-constant function: value(t) = initial + sum of
// jumps at points <= t. Jump points are strictly increasing.
class StepFunction {
 public:
  StepFunction(std::vector<double> points, std::vector<double> jumps,
               double initial_value = 0.0);

  double value(double t) const;
  double left_limit(double t) const;

  double initial_value() const { return initial_; }
  double final_value() const { return values_.empty() ? initial_ : values_.back(); }
  const std::vector<double>& jump_points() const { return points_; }
  const std::vector<double>& jump_sizes() const { return jumps_; }
  // Cumulative values at the jump points (value just after each jump).
  const std::vector<double>& values_at_jumps() const { return values_; }
  std::size_t jump_count() const { return points_.size(); }

  // `t,value` rows at the jump points, RFC-4180, header included.
  std::string to_csv() const;

 private:
  std::vector<double> points_;
  std::vector<double> jumps_;
  std::vector<double> values_;
  double initial_;
};

}  // namespace mdev
