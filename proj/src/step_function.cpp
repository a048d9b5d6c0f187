#include "mdev/step_function.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "mdev/errors.hpp"

namespace mdev {

StepFunction::StepFunction(std::vector<double> points, std::vector<double> jumps,
                           double initial_value)
    : points_(std::move(points)), jumps_(std::move(jumps)), initial_(initial_value) {
  if (points_.size() != jumps_.size()) throw SpecError("StepFunction: size mismatch");
  for (std::size_t i = 0; i + 1 < points_.size(); ++i)
    if (!(points_[i] < points_[i + 1]))
      throw SpecError("StepFunction: jump points must be strictly increasing");
  values_.resize(points_.size());
  long double acc = initial_;  // extended precision keeps long cumulative sums tight
  for (std::size_t i = 0; i < jumps_.size(); ++i) {
    acc += jumps_[i];
    values_[i] = static_cast<double>(acc);
  }
}

double StepFunction::value(double t) const {
  auto it = std::upper_bound(points_.begin(), points_.end(), t);
  if (it == points_.begin()) return initial_;
  return values_[std::distance(points_.begin(), it) - 1];
}

double StepFunction::left_limit(double t) const {
  auto it = std::lower_bound(points_.begin(), points_.end(), t);
  if (it == points_.begin()) return initial_;
  return values_[std::distance(points_.begin(), it) - 1];
}

std::string StepFunction::to_csv() const {
  std::string out = "t,value\n";
  char buf[64];
  for (std::size_t i = 0; i < points_.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", points_[i], values_[i]);
    out += buf;
  }
  return out;
}

}  // namespace mdev
