#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mdev/distribution.hpp"

namespace mdev {

// Sorted sample of reals.
struct Sample {
  std::vector<double> values;  // nondecreasing

  explicit Sample(std::vector<double> v);
  std::size_t n() const { return values.size(); }
};

struct CensoredRecord {
  double z;   // observed time, >= 0
  int delta;  // 1 = uncensored (X <= C), 0 = censored
};

struct CensoredSample {
  std::vector<CensoredRecord> records;

  explicit CensoredSample(std::vector<CensoredRecord> r);
  std::size_t n() const { return records.size(); }
};

struct PairedSample {
  std::vector<std::pair<double, double>> pairs;

  explicit PairedSample(std::vector<std::pair<double, double>> p);
  std::size_t n() const { return pairs.size(); }
};

Sample draw_sample(const Distribution& dist, std::size_t n, std::uint64_t seed);

// Per record draws X ~ F then C ~ G from one stream and emits
// (min(x,c), 1{x <= c}).
CensoredSample draw_censored(const Distribution& F, const Distribution& G,
                             std::size_t n, std::uint64_t seed);

PairedSample draw_paired_independent(const Distribution& FX, const Distribution& FY,
                                     std::size_t n, std::uint64_t seed);

// CSV input: one value per line for plain samples, `time,delta` lines for
// censored data. A non-numeric first line is treated as a header.
Sample read_sample_csv(const std::string& path);
CensoredSample read_censored_csv(const std::string& path);

}  // namespace mdev
