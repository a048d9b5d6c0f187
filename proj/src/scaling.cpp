#include "mdev/scaling.hpp"

#include <cmath>

#include "mdev/errors.hpp"

namespace mdev {

double ScalingSequence::at_real(double x) const {
  if (!(x >= static_cast<double>(n0_))) throw SpecError("scaling: argument below n0");
  switch (kind_) {
    case ScalingKind::SqrtLogLog:
      return std::sqrt(std::log(std::log(x)));
    case ScalingKind::SqrtLog:
      return std::sqrt(std::log(x));
    case ScalingKind::Power:
      return std::pow(x, gamma_);
    case ScalingKind::UserTable: {
      const double pos = x - static_cast<double>(n0_);
      const auto lo = static_cast<std::size_t>(pos);
      if (lo + 1 >= table_.size())
        return lo >= table_.size() ? throw SpecError("scaling table: argument beyond table")
                                   : table_[lo];
      const double frac = pos - static_cast<double>(lo);
      return table_[lo] + frac * (table_[lo + 1] - table_[lo]);
    }
  }
  return 0;
}

double ScalingSequence::at(std::int64_t n) const { return at_real(static_cast<double>(n)); }

std::string ScalingSequence::to_string() const {
  switch (kind_) {
    case ScalingKind::SqrtLogLog:
      return "sqrt-log-log";
    case ScalingKind::SqrtLog:
      return "sqrt-log";
    case ScalingKind::Power:
      return "power(" + std::to_string(gamma_) + ")";
    case ScalingKind::UserTable:
      return "user-table[" + std::to_string(table_.size()) + "]";
  }
  return "";
}

ScalingSequence make_scaling(ScalingKind kind, double gamma, std::int64_t n0) {
  ScalingSequence s;
  s.kind_ = kind;
  switch (kind) {
    case ScalingKind::SqrtLogLog:
      s.n0_ = n0 < 0 ? 3 : n0;
      // log log n must be positive, i.e. n > e.
      if (s.n0_ < 3) throw SpecError("sqrt-log-log: n0 too small (log log n <= 0)");
      break;
    case ScalingKind::SqrtLog:
      s.n0_ = n0 < 0 ? 2 : n0;
      if (s.n0_ < 2) throw SpecError("sqrt-log: n0 too small (log n <= 0)");
      break;
    case ScalingKind::Power:
      if (!(gamma > 0) || !(gamma < 0.5)) throw SpecError("power scaling: need 0 < gamma < 1/2");
      s.gamma_ = gamma;
      s.n0_ = n0 < 0 ? 1 : n0;
      if (s.n0_ < 1) throw SpecError("power scaling: n0 must be >= 1");
      break;
    case ScalingKind::UserTable:
      throw SpecError("use make_scaling_table for user tables");
  }
  return s;
}

ScalingSequence make_scaling_table(std::vector<double> values, std::int64_t n0) {
  if (values.empty()) throw SpecError("scaling table: empty");
  for (double v : values)
    if (!(v > 0)) throw SpecError("scaling table: values must be > 0");
  if (n0 < 1) throw SpecError("scaling table: n0 must be >= 1");
  ScalingSequence s;
  s.kind_ = ScalingKind::UserTable;
  s.n0_ = n0;
  s.table_ = std::move(values);
  return s;
}

ScalingValidationReport validate_scaling(const ScalingSequence& seq,
                                         std::int64_t n_min, std::int64_t n_max) {
  if (!(seq.n0() <= n_min) || !(n_min < n_max))
    throw SpecError("validate_scaling: need n0 <= n_min < n_max");
  constexpr double rtol = 1e-12;
  ScalingValidationReport rep;
  double a_prev = seq.at(n_min);
  double ratio_prev = a_prev / std::sqrt(static_cast<double>(n_min));
  for (std::int64_t n = n_min; n < n_max; ++n) {
    const double a_next = seq.at(n + 1);
    const double ratio_next = a_next / std::sqrt(static_cast<double>(n + 1));
    if (a_next < a_prev * (1.0 - rtol)) rep.growth_violations.push_back(n);
    if (ratio_next > ratio_prev * (1.0 + rtol)) rep.ratio_violations.push_back(n);
    a_prev = a_next;
    ratio_prev = ratio_next;
  }
  if (n_max >= 4 * n_min) {
    rep.witness_applicable = true;
    rep.growth_witness = seq.at(n_max) > seq.at(n_min);
  }
  rep.valid = rep.growth_violations.empty() && rep.ratio_violations.empty() &&
              (!rep.witness_applicable || rep.growth_witness);
  return rep;
}

ScalingKind parse_scaling_kind(const std::string& name) {
  if (name == "sqrt-log-log") return ScalingKind::SqrtLogLog;
  if (name == "sqrt-log") return ScalingKind::SqrtLog;
  if (name == "power") return ScalingKind::Power;
  if (name == "user-table") return ScalingKind::UserTable;
  throw SpecError("unknown scaling kind: '" + name + "'");
}

std::string scaling_kind_name(ScalingKind kind) {
  switch (kind) {
    case ScalingKind::SqrtLogLog: return "sqrt-log-log";
    case ScalingKind::SqrtLog: return "sqrt-log";
    case ScalingKind::Power: return "power";
    case ScalingKind::UserTable: return "user-table";
  }
  return "";
}

}  // namespace mdev
