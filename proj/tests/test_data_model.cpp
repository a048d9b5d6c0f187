#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "mdev/distribution.hpp"
#include "mdev/errors.hpp"
#include "mdev/rng.hpp"
#include "mdev/sample.hpp"
#include "mdev/scaling.hpp"

using namespace mdev;

namespace {

double ecdf_sup_distance(const Sample& s, const Distribution& d) {
  const auto n = static_cast<double>(s.n());
  double sup = 0;
  std::size_t i = 0;
  while (i < s.n()) {
    const double v = s.values[i];
    std::size_t j = i;
    while (j < s.n() && s.values[j] == v) ++j;  // run of ties at v
    sup = std::max(sup, std::fabs(static_cast<double>(j) / n - d.cdf(v)));
    sup = std::max(sup, std::fabs(static_cast<double>(i) / n - d.cdf_left(v)));
    i = j;
  }
  return sup;
}

}  // namespace

TEST_CASE("distribution cdf/quantile basics") {
  const auto u = Distribution::uniform(0, 1);
  CHECK(u.cdf(-0.5) == 0.0);
  CHECK(u.cdf(0.25) == doctest::Approx(0.25));
  CHECK(u.cdf(2.0) == 1.0);
  CHECK(u.quantile(0.25) == doctest::Approx(0.25));
  CHECK(u.mean() == doctest::Approx(0.5));
  CHECK(u.variance() == doctest::Approx(1.0 / 12.0));

  const auto e = Distribution::exponential(1.0);
  CHECK(e.cdf(1.0) == doctest::Approx(1.0 - std::exp(-1.0)));
  CHECK(e.quantile(1.0 - std::exp(-1.0)) == doctest::Approx(1.0));
  CHECK(e.density(0.5) == doctest::Approx(std::exp(-0.5)));

  const auto g = Distribution::normal(0, 1);
  CHECK(g.cdf(0.0) == doctest::Approx(0.5));
  CHECK(g.quantile(0.975) == doctest::Approx(1.959963985).epsilon(1e-8));
  CHECK(g.cdf(g.quantile(0.123)) == doctest::Approx(0.123).epsilon(1e-12));

  CHECK_THROWS_AS(u.quantile(0.0), SpecError);
  CHECK_THROWS_AS(u.quantile(1.5), SpecError);
}

TEST_CASE("quantile is the generalized inverse") {
  const auto kinds = {Distribution::uniform(-1, 3), Distribution::exponential(2.0),
                      Distribution::normal(1, 2)};
  for (const auto& d : kinds) {
    for (int i = 1; i < 40; ++i) {
      const double p = i / 40.0;
      const double q = d.quantile(p);
      CHECK(d.cdf(q) >= p - 1e-12);                // F(quantile(p)) >= p
      CHECK(d.quantile(d.cdf(q)) <= q + 1e-12);    // quantile(F(x)) <= x
    }
  }
}

TEST_CASE("table distribution") {
  auto t = Distribution::table({{2.0, 0.5}, {1.0, 0.25}, {3.0, 0.25}});
  CHECK(t.cdf(0.5) == 0.0);
  CHECK(t.cdf(1.0) == doctest::Approx(0.25));
  CHECK(t.cdf_left(1.0) == 0.0);
  CHECK(t.cdf(2.5) == doctest::Approx(0.75));
  CHECK(t.quantile(0.25) == 1.0);
  CHECK(t.quantile(0.26) == 2.0);
  CHECK(t.quantile(1.0) == 3.0);
  CHECK(t.mean() == doctest::Approx(2.0));

  CHECK_THROWS_AS(Distribution::table({{1.0, 0.5}, {2.0, 0.6}}), SpecError);
  CHECK_THROWS_AS(Distribution::table({{1.0, 0.5}, {1.0, 0.5}}), SpecError);
}

TEST_CASE("distribution parse round trip") {
  for (const char* text : {"uniform(0,1)", "exponential(1)", "normal(0,1)",
                           "point-mass(inf)", "point-mass(2.5)", "table(1:0.5,2:0.5)"}) {
    const auto d = Distribution::parse(text);
    const auto d2 = Distribution::parse(d.to_string());
    CHECK(d2.kind() == d.kind());
    CHECK(d2.to_string() == d.to_string());
  }
  CHECK_THROWS_AS(Distribution::parse("lognormal(0,1)"), SpecError);
  CHECK_THROWS_AS(Distribution::parse("uniform(0)"), SpecError);
}

TEST_CASE("sampler matches its CDF (DKW at confidence 0.999)") {
  const std::size_t n = 100000;
  // DKW: P(sup|F_n - F| > eps) <= 2 exp(-2 n eps^2) = 0.001
  const double eps = std::sqrt(std::log(2.0 / 0.001) / (2.0 * static_cast<double>(n)));
  int stream = 0;
  for (const auto& d : {Distribution::uniform(0, 1), Distribution::exponential(1.0),
                        Distribution::normal(0, 1),
                        Distribution::table({{0.0, 0.3}, {1.0, 0.5}, {4.0, 0.2}})}) {
    const auto s = draw_sample(d, n, sub_seed(42, 1, static_cast<std::uint64_t>(stream++)));
    CHECK(ecdf_sup_distance(s, d) <= eps);
  }
}

TEST_CASE("sampling is deterministic in the seed") {
  const auto d = Distribution::normal(0, 1);
  const auto a = draw_sample(d, 1000, 7);
  const auto b = draw_sample(d, 1000, 7);
  const auto c = draw_sample(d, 1000, 8);
  CHECK(a.values == b.values);
  CHECK(a.values != c.values);
}

TEST_CASE("censored sampling") {
  const auto F = Distribution::exponential(1.0);

  SUBCASE("point-mass(+inf) censoring keeps everything uncensored") {
    const auto G = Distribution::point_mass(std::numeric_limits<double>::infinity());
    const auto cs = draw_censored(F, G, 5, 99);
    for (const auto& r : cs.records) CHECK(r.delta == 1);
    // z equals the X draw: re-draw with the same stream and compare.
    Rng rng(99);
    for (const auto& r : cs.records) {
      const double x = F.sample(rng);
      G.sample(rng);
      CHECK(r.z == x);
    }
  }

  SUBCASE("two point masses") {
    const auto cs = draw_censored(Distribution::point_mass(1), Distribution::point_mass(2), 4, 1);
    for (const auto& r : cs.records) {
      CHECK(r.z == 1.0);
      CHECK(r.delta == 1);
    }
  }

  SUBCASE("Exp(1) vs Exp(1): censoring fraction 1/2 by symmetry") {
    const auto cs = draw_censored(F, Distribution::exponential(1.0), 100000, 314159);
    double frac = 0;
    for (const auto& r : cs.records) frac += r.delta;
    frac /= static_cast<double>(cs.n());
    CHECK(frac == doctest::Approx(0.5).epsilon(0.02));
    CHECK(std::fabs(frac - 0.5) <= 0.01);
  }

  SUBCASE("uncensored z-values follow F (DKW)") {
    const auto G = Distribution::point_mass(std::numeric_limits<double>::infinity());
    const auto cs = draw_censored(F, G, 100000, 2718);
    std::vector<double> z(cs.n());
    for (std::size_t i = 0; i < cs.n(); ++i) z[i] = cs.records[i].z;
    const double eps = std::sqrt(std::log(2.0 / 0.001) / (2.0 * static_cast<double>(cs.n())));
    CHECK(ecdf_sup_distance(Sample(z), F) <= eps);
  }
}

TEST_CASE("make_scaling") {
  const auto s = make_scaling(ScalingKind::SqrtLog, 0, 2);
  const double e2 = std::exp(2.0);
  CHECK(s.at_real(e2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(s.at(7) == doctest::Approx(std::sqrt(std::log(7.0))));

  const auto pw = make_scaling(ScalingKind::Power, 0.25, 1);
  CHECK(pw.at(16) == doctest::Approx(2.0));

  CHECK_THROWS_AS(make_scaling(ScalingKind::SqrtLogLog, 0, 2), SpecError);
  CHECK_THROWS_AS(make_scaling(ScalingKind::Power, 0.7, 1), SpecError);
  CHECK_THROWS_AS(make_scaling(ScalingKind::Power, 0.0, 1), SpecError);
}

TEST_CASE("validate_scaling") {
  SUBCASE("sqrt-log valid on [10, 1e4]") {
    const auto s = make_scaling(ScalingKind::SqrtLog, 0, 2);
    const auto rep = validate_scaling(s, 10, 10000);
    CHECK(rep.valid);
    CHECK(rep.growth_violations.empty());
    CHECK(rep.ratio_violations.empty());
    CHECK(rep.witness_applicable);
    CHECK(rep.growth_witness);
  }

  SUBCASE("sqrt-log ratio condition fails at n=2") {
    // log(3)/3 > log(2)/2, so a(n)/sqrt(n) increases from 2 to 3.
    const auto s = make_scaling(ScalingKind::SqrtLog, 0, 2);
    const auto rep = validate_scaling(s, 2, 10);
    CHECK(!rep.valid);
    CHECK(rep.ratio_violations == std::vector<std::int64_t>{2});
  }

  SUBCASE("power valid on [1, 1e4]") {
    const auto rep = validate_scaling(make_scaling(ScalingKind::Power, 0.25, 1), 1, 10000);
    CHECK(rep.valid);
  }

  SUBCASE("sqrt-log-log valid on [16, 1e4]") {
    const auto rep = validate_scaling(make_scaling(ScalingKind::SqrtLogLog, 0, 3), 16, 10000);
    CHECK(rep.valid);
  }

  SUBCASE("user table violation") {
    const auto s = make_scaling_table({1.0, 3.0, 2.0}, 1);
    const auto rep = validate_scaling(s, 1, 3);
    CHECK(!rep.valid);
    CHECK(rep.growth_violations == std::vector<std::int64_t>{2});
  }

  CHECK_THROWS_AS(validate_scaling(make_scaling(ScalingKind::SqrtLog, 0, 2), 5, 5), SpecError);
}

TEST_CASE("sub_seed separates streams and counters") {
  CHECK(sub_seed(1, 0, 0) != sub_seed(1, 0, 1));
  CHECK(sub_seed(1, 0, 0) != sub_seed(1, 1, 0));
  CHECK(sub_seed(1, 2, 3) == sub_seed(1, 2, 3));
  CHECK(sub_seed(1, 2, 3) != sub_seed(2, 2, 3));
}

TEST_CASE("sample containers validate inputs") {
  CHECK_THROWS_AS(Sample({}), SpecError);
  CHECK_THROWS_AS(CensoredSample({{-1.0, 1}}), SpecError);
  CHECK_THROWS_AS(CensoredSample({{1.0, 2}}), SpecError);
  const Sample s({3.0, 1.0, 2.0});
  CHECK(std::is_sorted(s.values.begin(), s.values.end()));
}
