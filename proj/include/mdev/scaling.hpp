#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mdev {

enum class ScalingKind { SqrtLogLog, SqrtLog, Power, UserTable };

// Moderate-deviation scaling a(n): positive, nondecreasing, with a(n)/sqrt(n)
// nonincreasing on the validated range. The public surface is integer n; the
// two-sample speed a(mn/(m+n)) queries real arguments internally.
class ScalingSequence {
 public:
  double at(std::int64_t n) const;
  double at_real(double x) const;  // x >= n0; user tables interpolate linearly
  std::int64_t n0() const { return n0_; }
  ScalingKind kind() const { return kind_; }
  std::string to_string() const;

 private:
  friend ScalingSequence make_scaling(ScalingKind, double, std::int64_t);
  friend ScalingSequence make_scaling_table(std::vector<double>, std::int64_t);
  ScalingSequence() = default;

  ScalingKind kind_{};
  double gamma_ = 0;  // power kind
  std::int64_t n0_ = 1;
  std::vector<double> table_;
};

// kinds: sqrt-log-log (n0 >= 3), sqrt-log (n0 >= 2), power with 0 < gamma < 1/2
// (n0 >= 1). gamma is ignored for the non-power kinds.
ScalingSequence make_scaling(ScalingKind kind, double gamma = 0, std::int64_t n0 = -1);
ScalingSequence make_scaling_table(std::vector<double> values, std::int64_t n0);

struct ScalingValidationReport {
  bool valid = true;
  std::vector<std::int64_t> growth_violations;  // n with a(n+1) < a(n)
  std::vector<std::int64_t> ratio_violations;   // n with a(n+1)/sqrt(n+1) > a(n)/sqrt(n)
  bool witness_applicable = false;              // n_max >= 4*n_min
  bool growth_witness = false;                  // a(n_max) > a(n_min)
};

// Scans [n_min, n_max-1] for monotonicity violations within relative
// tolerance 1e-12. Violations are data, not errors.
ScalingValidationReport validate_scaling(const ScalingSequence& seq,
                                         std::int64_t n_min, std::int64_t n_max);

ScalingKind parse_scaling_kind(const std::string& name);
std::string scaling_kind_name(ScalingKind kind);

}  // namespace mdev
