#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fraclog/errors.hpp"
#include "fraclog/oracle.hpp"
#include "fraclog/special_functions.hpp"

using namespace fraclog;

namespace {

// E_{1/2}(-x) = exp(x^2) erfc(x)
double ml_half(double x) { return std::exp(x * x) * std::erfc(x); }

// E_{1/2,1/2}(z) = 1/sqrt(pi) + z exp(z^2) erfc(-z)
double ml_half_half(double z) { return 1.0 / std::sqrt(std::numbers::pi) + z * std::exp(z * z) * std::erfc(-z); }

}  // namespace

TEST_CASE("gamma examples") {
  CHECK(fraclog::gamma(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(fraclog::gamma(0.5) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-15));
  CHECK(fraclog::gamma(1.5) == doctest::Approx(0.5 * fraclog::gamma(0.5)).epsilon(1e-15));
  CHECK(fraclog::gamma(1.5) == doctest::Approx(0.8862269255).epsilon(1e-10));
}

TEST_CASE("gamma satisfies the recurrence") {
  for (double x = 0.05; x < 20.0; x += 0.37) {
    CHECK(fraclog::gamma(x + 1.0) == doctest::Approx(x * fraclog::gamma(x)).epsilon(1e-13));
  }
}

TEST_CASE("gamma rejects non-positive arguments") {
  CHECK_THROWS_AS(fraclog::gamma(0.0), DomainError);
  CHECK_THROWS_AS(fraclog::gamma(-1.5), DomainError);
  CHECK_THROWS_AS(fraclog::gamma(std::nan("")), DomainError);
}

TEST_CASE("mittag_leffler examples") {
  CHECK(mittag_leffler(0.5, 0.0) == 1.0);
  CHECK(mittag_leffler(1.0, -1.0) == doctest::Approx(0.3678794412).epsilon(1e-10));
  CHECK(mittag_leffler(0.5, -1.0) == doctest::Approx(0.4275835762).epsilon(1e-10));
  CHECK(std::fabs(mittag_leffler(0.5, -1.0) - ml_half(1.0)) < 1e-14);
}

TEST_CASE("mittag_leffler_two examples") {
  CHECK(mittag_leffler_two(0.5, 0.5, 0.0) == doctest::Approx(0.5641895835).epsilon(1e-10));
  CHECK(mittag_leffler_two(0.5, 0.5, 0.0) == doctest::Approx(1.0 / fraclog::gamma(0.5)).epsilon(1e-15));
  CHECK(mittag_leffler_two(1.0, 1.0, 2.0) == doctest::Approx(7.3890560989).epsilon(1e-10));
  CHECK(mittag_leffler_two(0.5, 0.5, -1.0) == doctest::Approx(0.1366060074).epsilon(1e-9));
  CHECK(std::fabs(mittag_leffler_two(0.5, 0.5, -1.0) - ml_half_half(-1.0)) < 1e-14);
}

TEST_CASE("closed forms at alpha = 1/2 over a wide range") {
  for (double x = 0.0; x <= 6.0; x += 0.125) {
    CHECK(std::fabs(mittag_leffler(0.5, -x) - ml_half(x)) < 1e-12);
    CHECK(std::fabs(mittag_leffler_two(0.5, 0.5, -x) - ml_half_half(-x)) < 1e-12);
  }
  for (double z = 0.0; z <= 3.0; z += 0.25) {
    const double ref = std::exp(z * z) * std::erfc(-z);
    CHECK(mittag_leffler(0.5, z) == doctest::Approx(ref).epsilon(1e-12));
  }
}

TEST_CASE("positivity, bounds and monotone decay on a dense grid") {
  for (double alpha : {0.1, 0.3, 0.5, 0.7, 0.9, 0.99}) {
    const double cap = 1.0 / fraclog::gamma(alpha);
    double previous = 1.0;
    for (double t = 0.0; t <= 50.0; t += 0.05) {
      const double z = -std::pow(t, alpha);
      const double e1 = mittag_leffler(alpha, z);
      const double ea = mittag_leffler_two(alpha, alpha, z);
      if (t > 0.0) {
        REQUIRE(e1 > 0.0);
        REQUIRE(ea > 0.0);
      }
      REQUIRE(e1 <= 1.0);
      REQUIRE(ea <= cap * (1.0 + 1e-14));
      REQUIRE(e1 <= previous);
      previous = e1;
    }
  }
}

TEST_CASE("alpha = 1 reduces to exp") {
  for (double z = -20.0; z <= 3.0; z += 0.1) {
    CHECK(std::fabs(mittag_leffler(1.0, z) - std::exp(z)) <= 1e-12 * std::max(1.0, std::exp(z)));
    CHECK(std::fabs(mittag_leffler_two(1.0, 1.0, z) - std::exp(z)) <= 1e-12 * std::max(1.0, std::exp(z)));
  }
}

TEST_CASE("random samples agree with the high-precision series") {
  std::mt19937_64 rng(20261018);
  std::uniform_real_distribution<double> alpha_dist(0.25, 0.95);
  std::uniform_real_distribution<double> z_dist(-5.0, 2.0);
  for (int i = 0; i < 50; ++i) {
    const double alpha = alpha_dist(rng);
    const double z = z_dist(rng);
    CAPTURE(alpha);
    CAPTURE(z);
    const bool series = z >= 0.0 || std::pow(-z, 1.0 / alpha) <= 60.0;
    for (double beta : {1.0, alpha}) {
      const double ref = series ? oracle::ml_series_highprec(alpha, beta, z)
                                : oracle::ml_laplace_integral(alpha, beta, z);
      CHECK(std::fabs(mittag_leffler_two(alpha, beta, z) - ref) <= 1e-12 * std::max(1.0, std::fabs(ref)));
    }
  }
}

TEST_CASE("asymptotic region agrees with the Laplace-integral reference") {
  for (double alpha : {0.2, 0.3, 0.5, 0.7, 0.9}) {
    for (double z : {-6.0, -12.0, -25.0, -50.0, -200.0}) {
      CAPTURE(alpha);
      CAPTURE(z);
      CHECK(std::fabs(mittag_leffler(alpha, z) - oracle::ml_laplace_integral(alpha, 1.0, z)) < 1e-12);
      CHECK(std::fabs(mittag_leffler_two(alpha, alpha, z) - oracle::ml_laplace_integral(alpha, alpha, z)) < 1e-12);
    }
  }
}

TEST_CASE("other beta values follow the series") {
  for (double beta : {0.3, 1.7, 2.0, 3.5}) {
    for (double z : {-3.0, -0.5, 0.7, 2.0}) {
      const double ref = oracle::ml_series_highprec(0.6, beta, z);
      CHECK(std::fabs(mittag_leffler_two(0.6, beta, z) - ref) <= 1e-12 * std::max(1.0, std::fabs(ref)));
    }
  }
}

TEST_CASE("growth overflows to infinity instead of failing") {
  CHECK(std::isinf(mittag_leffler(0.3, 1e3)));
  CHECK(mittag_leffler(0.3, 1e3) > 0.0);
}

TEST_CASE("grid evaluation matches pointwise evaluation") {
  Eigen::VectorXd t = Eigen::VectorXd::LinSpaced(41, 0.0, 4.0);
  const Eigen::VectorXd down = mittag_leffler_on_grid(0.4, -1.0, t);
  const Eigen::VectorXd up = mittag_leffler_on_grid(0.4, 1.0, t);
  for (Eigen::Index k = 0; k < t.size(); ++k) {
    CHECK(down[k] == mittag_leffler(0.4, -std::pow(t[k], 0.4)));
    CHECK(up[k] == mittag_leffler(0.4, std::pow(t[k], 0.4)));
  }
}

TEST_CASE("invalid parameters are rejected") {
  CHECK_THROWS_AS(mittag_leffler(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(mittag_leffler(1.2, 1.0), DomainError);
  CHECK_THROWS_AS(mittag_leffler_two(0.5, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(mittag_leffler(0.5, std::nan("")), DomainError);
  MLAccuracy acc;
  acc.abs_tol = 0.0;
  CHECK_THROWS_AS(mittag_leffler(0.5, 1.0, acc), DomainError);
}

TEST_CASE("a truncated series reports an accuracy failure") {
  MLAccuracy acc;
  acc.max_terms = 3;
  CHECK_THROWS_AS(mittag_leffler(0.5, 2.0, acc), AccuracyError);
}
