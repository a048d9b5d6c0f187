#include "mdev/sample.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "mdev/errors.hpp"

namespace mdev {

Sample::Sample(std::vector<double> v) : values(std::move(v)) {
  if (values.empty()) throw SpecError("Sample: empty");
  for (double x : values)
    if (std::isnan(x)) throw SpecError("Sample: NaN value");
  std::sort(values.begin(), values.end());
}

CensoredSample::CensoredSample(std::vector<CensoredRecord> r) : records(std::move(r)) {
  if (records.empty()) throw SpecError("CensoredSample: empty");
  for (const auto& rec : records) {
    if (!(rec.z >= 0)) throw SpecError("CensoredSample: time must be >= 0");
    if (rec.delta != 0 && rec.delta != 1) throw SpecError("CensoredSample: delta must be 0 or 1");
  }
}

PairedSample::PairedSample(std::vector<std::pair<double, double>> p) : pairs(std::move(p)) {
  if (pairs.empty()) throw SpecError("PairedSample: empty");
}

Sample draw_sample(const Distribution& dist, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw SpecError("draw_sample: n >= 1 required");
  Rng rng(seed);
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = dist.sample(rng);
  return Sample(std::move(v));
}

CensoredSample draw_censored(const Distribution& F, const Distribution& G,
                             std::size_t n, std::uint64_t seed) {
  if (n < 1) throw SpecError("draw_censored: n >= 1 required");
  Rng rng(seed);
  std::vector<CensoredRecord> recs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = F.sample(rng);
    const double c = G.sample(rng);
    recs[i] = {std::min(x, c), x <= c ? 1 : 0};
  }
  return CensoredSample(std::move(recs));
}

PairedSample draw_paired_independent(const Distribution& FX, const Distribution& FY,
                                     std::size_t n, std::uint64_t seed) {
  if (n < 1) throw SpecError("draw_paired_independent: n >= 1 required");
  Rng rng(seed);
  std::vector<std::pair<double, double>> pairs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = FX.sample(rng);
    const double y = FY.sample(rng);
    pairs[i] = {x, y};
  }
  return PairedSample(std::move(pairs));
}

namespace {

bool parse_double(const std::string& s, double& out) {
  std::size_t pos = 0;
  try {
    out = std::stod(s, &pos);
  } catch (const std::exception&) {
    return false;
  }
  while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t' || s[pos] == '\r')) ++pos;
  return pos == s.size();
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open file: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

}  // namespace

Sample read_sample_csv(const std::string& path) {
  auto lines = read_lines(path);
  std::vector<double> values;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    double v;
    if (!parse_double(lines[i], v)) {
      if (i == 0) continue;  // header
      throw SpecError("bad sample line in " + path + ": '" + lines[i] + "'");
    }
    values.push_back(v);
  }
  return Sample(std::move(values));
}

CensoredSample read_censored_csv(const std::string& path) {
  auto lines = read_lines(path);
  std::vector<CensoredRecord> recs;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::istringstream ss(lines[i]);
    std::string a, b;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b)) {
      if (i == 0) continue;
      throw SpecError("bad censored line in " + path + ": '" + lines[i] + "'");
    }
    double z, d;
    if (!parse_double(a, z) || !parse_double(b, d)) {
      if (i == 0) continue;
      throw SpecError("bad censored line in " + path + ": '" + lines[i] + "'");
    }
    recs.push_back({z, static_cast<int>(d)});
  }
  return CensoredSample(std::move(recs));
}

}  // namespace mdev
