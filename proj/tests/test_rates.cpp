#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <random>

#include "mdev/censored_model.hpp"
#include "mdev/errors.hpp"
#include "mdev/quadrature.hpp"
#include "mdev/rates.hpp"

using namespace mdev;

namespace {
const double kE = std::exp(1.0);
const auto kExp1 = Distribution::exponential(1.0);
const auto kNoCensor = Distribution::point_mass(std::numeric_limits<double>::infinity());
}  // namespace

TEST_CASE("adaptive quadrature sanity") {
  CHECK(integrate([](double x) { return x * x; }, 0, 1) == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(integrate([](double x) { return std::exp(2 * x); }, 0, 1) ==
        doctest::Approx((kE * kE - 1) / 2).epsilon(1e-12));
  // integrable endpoint spike
  CHECK(integrate([](double x) { return 1.0 / std::sqrt(x); }, 1e-12, 1, 1e-10, 1e-14, 4000) ==
        doctest::Approx(2.0).epsilon(1e-5));
  CHECK_THROWS_AS(
      integrate([](double x) { return 1.0 / std::sqrt(std::fabs(x)); }, 1e-300, 1, 1e-14, 0, 8),
      QuadratureError);
}

TEST_CASE("golden section max") {
  const double t = golden_section_max(
      [](double x) { return std::exp(-2 * x) * (std::exp(x) - 1); }, 0.0, 1.0, 1e-10);
  CHECK(t == doctest::Approx(std::log(2.0)).epsilon(1e-8));
}

TEST_CASE("model variances") {
  const auto U = Distribution::uniform(0, 1);
  const auto uu = model_variances(U, U);
  CHECK(uu.var_F_of_Y == doctest::Approx(1.0 / 12).epsilon(1e-8));
  CHECK(uu.var_G_of_X == doctest::Approx(1.0 / 12).epsilon(1e-8));

  // PIT: any continuous F = G gives (1/12, 1/12)
  for (const auto& d : {kExp1, Distribution::normal(1, 2)}) {
    const auto v = model_variances(d, d);
    CHECK(std::fabs(v.var_F_of_Y - 1.0 / 12) < 1e-6);
    CHECK(std::fabs(v.var_G_of_X - 1.0 / 12) < 1e-6);
  }

  const auto pm = Distribution::point_mass(0.3);
  CHECK(model_variances(U, pm).var_F_of_Y == 0.0);
}

TEST_CASE("wilcoxon rate") {
  CHECK(wilcoxon_rate(0.5, 1.0 / 12, 1.0 / 12, 1.0) == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(wilcoxon_rate(0.5, 1.0 / 12, 1.0 / 12, 0.0) == 0.0);
  CHECK_THROWS_AS(wilcoxon_rate(0.5, 0.0, 0.0, 1.0), DegenerateRate);
  CHECK_THROWS_AS(wilcoxon_rate(1.0, 1.0, 1.0, 1.0), SpecError);
}

TEST_CASE("wilcoxon truth") {
  CHECK(wilcoxon_truth(kExp1, kExp1) == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(wilcoxon_truth(Distribution::uniform(0, 1), Distribution::point_mass(0.25)) ==
        doctest::Approx(0.25));
}

TEST_CASE("sigma2 hazard") {
  CHECK(sigma2_hazard(CensoredModel(kExp1, kExp1, 1.0)) ==
        doctest::Approx((kE * kE - 1) / 2).epsilon(1e-8));
  CHECK(sigma2_hazard(CensoredModel(kExp1, kNoCensor, 1.0)) ==
        doctest::Approx(kE - 1).epsilon(1e-8));
  CHECK(sigma2_hazard(CensoredModel(kExp1, kExp1, 1e-8)) < 1e-7);
}

TEST_CASE("sigma2 hazard with censoring atoms") {
  // G puts mass 1/2 at 0.5: integrand doubles past the atom.
  const auto G = Distribution::table({{0.5, 0.5}, {10.0, 0.5}});
  const double expected = 2 * kE - std::exp(0.5) - 1;
  CHECK(sigma2_hazard(CensoredModel(kExp1, G, 1.0)) == doctest::Approx(expected).epsilon(1e-8));
}

TEST_CASE("sigma2 km") {
  CHECK(sigma2_km(CensoredModel(kExp1, kExp1, 1.0)) ==
        doctest::Approx((1 - std::exp(-2.0)) / 2).epsilon(1e-8));
  // no censoring: sup of e^{-2t}(e^t - 1) is 1/4 at t = log 2
  CHECK(sigma2_km(CensoredModel(kExp1, kNoCensor, 1.0)) == doctest::Approx(0.25).epsilon(1e-8));
  CHECK(sigma2_km(CensoredModel(kExp1, kExp1, 1e-8)) < 1e-7);
}

TEST_CASE("sigma2 for a discrete lifetime") {
  const auto F = Distribution::table({{0.5, 0.4}, {1.5, 0.6}});
  const CensoredModel m(F, kNoCensor, 1.0);
  CHECK(sigma2_hazard(m) == doctest::Approx(0.24).epsilon(1e-12));
  CHECK(sigma2_km(m) == doctest::Approx(0.24).epsilon(1e-12));
  CHECK(m.cumulative_hazard(1.0) == doctest::Approx(0.4));
  CHECK(m.hazard_jump(0.5) == doctest::Approx(0.4));
  CHECK(m.hazard_jump(0.7) == 0.0);
}

TEST_CASE("censored model validation") {
  CHECK_THROWS_AS(CensoredModel(kExp1, Distribution::point_mass(0.5), 1.0), SpecError);
  CHECK_THROWS_AS(CensoredModel(Distribution::uniform(0, 1), kNoCensor, 1.0), SpecError);
  CHECK_THROWS_AS(CensoredModel(kExp1, kExp1, -1.0), SpecError);
  CHECK_NOTHROW(CensoredModel(Distribution::uniform(0, 1), kNoCensor, 0.999));
}

TEST_CASE("covariance kernels") {
  const CensoredModel m(kExp1, kExp1, 1.0);
  const auto haz = haz_cov_kernel(m);
  const auto km = km_cov_kernel(m);

  SUBCASE("diagonal identities") {
    CHECK(haz(1.0, 1.0) == doctest::Approx(sigma2_hazard(m)).epsilon(1e-9));
    CHECK(km(1.0, 1.0) == doctest::Approx((1 - std::exp(-2.0)) / 2).epsilon(1e-9));
  }

  SUBCASE("closed form for Exp/Exp: V(t) = (e^{2t}-1)/2") {
    CHECK(haz(0.3, 0.7) == doctest::Approx((std::exp(0.6) - 1) / 2).epsilon(1e-9));
    CHECK(km(0.3, 0.7) ==
          doctest::Approx(std::exp(-0.3) * std::exp(-0.7) * (std::exp(0.6) - 1) / 2)
              .epsilon(1e-9));
  }

  SUBCASE("zero at the origin and symmetry") {
    CHECK(haz(0.0, 0.8) == 0.0);
    CHECK(km(0.0, 0.8) == 0.0);
    CHECK(haz(0.2, 0.9) == haz(0.9, 0.2));
    CHECK(km(0.2, 0.9) == km(0.9, 0.2));
  }

  SUBCASE("Gram matrices are PSD on random grids") {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int rep = 0; rep < 5; ++rep) {
      const int k = 6;
      std::vector<double> ts(k);
      for (auto& t : ts) t = unif(gen);
      for (const auto* ker : {&haz, &km}) {
        Eigen::MatrixXd S(k, k);
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j) S(i, j) = (*ker)(ts[i], ts[j]);
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
        CHECK(es.eigenvalues().minCoeff() >= -1e-9);
      }
    }
  }

  SUBCASE("sup dominates the tau diagonal") {
    CHECK(sigma2_km(m) >= km(1.0, 1.0) - 1e-12);
    const CensoredModel nc(kExp1, kNoCensor, 1.0);
    const auto km_nc = km_cov_kernel(nc);
    CHECK(sigma2_km(nc) >= km_nc(1.0, 1.0) - 1e-12);
  }
}

TEST_CASE("quantile rate") {
  CHECK(quantile_rate(Distribution::uniform(0, 1), 0.5, 1.0) == doctest::Approx(2.0));
  CHECK(quantile_rate(Distribution::uniform(0, 1), 0.5, 0.0) == 0.0);
  const double p = 1 - std::exp(-1.0);
  CHECK(quantile_rate(kExp1, p, 1.0) ==
        doctest::Approx(std::exp(-2.0) / (2 * p * std::exp(-1.0))).epsilon(1e-12));
  CHECK(quantile_rate(kExp1, p, 1.0) == doctest::Approx(0.29099).epsilon(1e-4));
  CHECK_THROWS_AS(quantile_rate(Distribution::table({{1, 1.0}}), 0.5, 1.0), SpecError);
}

TEST_CASE("l-statistic variance") {
  const auto one = ScoreFunction::constant(1.0);
  CHECK(lstat_variance(one, Distribution::uniform(0, 1)) ==
        doctest::Approx(1.0 / 12).epsilon(1e-5));
  CHECK(lstat_variance(one, kExp1) == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(lstat_variance(one, Distribution::normal(0, 1)) == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(lstat_variance(ScoreFunction::constant(0.0), Distribution::uniform(0, 1)) == 0.0);

  // trimmed score over U(0,1): referee by a midpoint Riemann sum of
  // J(x)J(y)(x^y - xy) over the trimmed square
  const auto J = ScoreFunction::trimmed_constant(0.25, 0.75, 2.0);
  double riemann = 0;
  const int g = 400;
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) {
      const double x = 0.25 + 0.5 * (i + 0.5) / g;
      const double y = 0.25 + 0.5 * (j + 0.5) / g;
      riemann += 4.0 * (std::min(x, y) - x * y) * (0.5 / g) * (0.5 / g);
    }
  CHECK(lstat_variance(J, Distribution::uniform(0, 1)) ==
        doctest::Approx(riemann).epsilon(1e-4));
}

TEST_CASE("l-statistic mean functional") {
  CHECK(lstat_mean(ScoreFunction::constant(1.0), kExp1) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(lstat_mean(ScoreFunction::trimmed_constant(0.25, 0.75, 2.0),
                   Distribution::uniform(0, 1)) == doctest::Approx(0.5).epsilon(1e-9));
  const auto T = Distribution::table({{1.0, 0.5}, {3.0, 0.5}});
  CHECK(lstat_mean(ScoreFunction::constant(1.0), T) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("m rate") {
  Eigen::MatrixXd A1(1, 1), G1(1, 1);
  A1 << -1.0;
  G1 << 1.0;
  Eigen::VectorXd z1(1);
  z1 << 2.0;
  CHECK(m_rate(A1, G1, z1) == doctest::Approx(2.0));
  z1 << 0.0;
  CHECK(m_rate(A1, G1, z1) == 0.0);

  Eigen::MatrixXd A2 = Eigen::MatrixXd::Identity(2, 2);
  Eigen::MatrixXd G2 = Eigen::Vector2d(1.0, 4.0).asDiagonal();
  Eigen::VectorXd z2(2);
  z2 << 1.0, 2.0;
  CHECK(m_rate(A2, G2, z2) == doctest::Approx(1.0));

  Eigen::MatrixXd sing = Eigen::MatrixXd::Zero(2, 2);
  CHECK_THROWS_AS(m_rate(sing, G2, z2), DegenerateRate);
  Eigen::MatrixXd npd = -Eigen::MatrixXd::Identity(2, 2);
  CHECK_THROWS_AS(m_rate(A2, npd, z2), DegenerateRate);
}

TEST_CASE("gaussian finite rate") {
  const CensoredModel m(kExp1, kExp1, 1.0);
  const auto haz = haz_cov_kernel(m);

  SUBCASE("single time at tau reproduces r^2/(2 sigma^2_Lambda)") {
    const double s2 = sigma2_hazard(m);
    for (double r : {0.5, 1.0, 2.0}) {
      Eigen::VectorXd phi(1);
      phi << r;
      CHECK(gaussian_finite_rate(haz, {1.0}, phi) ==
            doctest::Approx(r * r / (2 * s2)).epsilon(1e-8));
    }
  }

  SUBCASE("identity covariance") {
    const CovKernel id([](double s, double t) { return s == t ? 1.0 : 0.0; }, 10.0);
    Eigen::VectorXd phi(2);
    phi << 1.0, 1.0;
    CHECK(gaussian_finite_rate(id, {1.0, 2.0}, phi) == doctest::Approx(1.0));
  }

  SUBCASE("degenerate covariance with unreachable phi") {
    const CovKernel zero([](double, double) { return 0.0; }, 10.0);
    Eigen::VectorXd phi(2);
    phi << 1.0, 0.0;
    CHECK(std::isinf(gaussian_finite_rate(zero, {1.0, 2.0}, phi)));
    Eigen::VectorXd z = Eigen::VectorXd::Zero(2);
    CHECK(gaussian_finite_rate(zero, {1.0, 2.0}, z) == 0.0);
  }

  SUBCASE("rank-1 covariance keeps in-range phi finite") {
    const CovKernel rank1([](double, double) { return 1.0; }, 10.0);
    Eigen::VectorXd phi(2);
    phi << 1.0, 1.0;
    CHECK(gaussian_finite_rate(rank1, {1.0, 2.0}, phi) == doctest::Approx(0.5).epsilon(1e-8));
    phi << 1.0, -1.0;
    CHECK(std::isinf(gaussian_finite_rate(rank1, {1.0, 2.0}, phi)));
  }
}

TEST_CASE("quadratic homogeneity of the closed-form rates") {
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> unif(0.1, 3.0);
  const CensoredModel m(kExp1, kExp1, 1.0);
  const double s2h = sigma2_hazard(m), s2k = sigma2_km(m);
  for (int i = 0; i < 1000; ++i) {
    const double x = unif(gen), c = unif(gen);
    const auto homo = [&](double rx, double rcx) {
      CHECK(rcx == doctest::Approx(c * c * rx).epsilon(1e-9));
    };
    homo(wilcoxon_rate(0.5, 1.0 / 12, 1.0 / 12, x), wilcoxon_rate(0.5, 1.0 / 12, 1.0 / 12, c * x));
    homo(quantile_rate(Distribution::uniform(0, 1), 0.5, x),
         quantile_rate(Distribution::uniform(0, 1), 0.5, c * x));
    homo(x * x / (2 * s2h), (c * x) * (c * x) / (2 * s2h));
    homo(x * x / (2 * s2k), (c * x) * (c * x) / (2 * s2k));
  }
}
