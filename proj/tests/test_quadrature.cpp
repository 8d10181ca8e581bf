#include <doctest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <complex>
#include <numbers>

#include "fraclog/errors.hpp"
#include "fraclog/quadrature.hpp"
#include "fraclog/special_functions.hpp"

using namespace fraclog;

namespace {

using cplx = std::complex<double>;

// Kernel in the time domain.
double kernel(KernelBranch branch, double alpha, double t) {
  switch (branch) {
    case KernelBranch::Decay: return std::pow(t, alpha - 1.0) * mittag_leffler_two(alpha, alpha, -std::pow(t, alpha));
    case KernelBranch::Growth: return std::pow(t, alpha - 1.0) * mittag_leffler_two(alpha, alpha, std::pow(t, alpha));
    case KernelBranch::RiemannLiouville: return std::pow(t, alpha - 1.0) / fraclog::gamma(alpha);
  }
  return 0.0;
}

// Taylor coefficients of h^-a (1 - zeta)^a.
Eigen::VectorXd symbol_coefficients(double alpha, double h, Eigen::Index n) {
  Eigen::VectorXd g(n + 1);
  g[0] = 1.0;
  for (Eigen::Index k = 1; k <= n; ++k) g[k] = g[k - 1] * (k - 1 - alpha) / static_cast<double>(k);
  return g * std::pow(h, -alpha);
}

}  // namespace

TEST_CASE("laplace_symbol examples") {
  CHECK(std::abs(laplace_symbol({KernelBranch::Decay, 0.5, 1e-3}, 1.0) - cplx(0.5)) < 1e-15);
  CHECK(std::abs(laplace_symbol({KernelBranch::Growth, 0.5, 1e-3}, 4.0) - cplx(1.0)) < 1e-15);
  CHECK(std::abs(laplace_symbol({KernelBranch::RiemannLiouville, 0.5, 1e-3}, 4.0) - cplx(0.5)) < 1e-15);
}

TEST_CASE("laplace_symbol rejects the pole and the left half-plane") {
  CHECK_THROWS_AS(laplace_symbol({KernelBranch::Growth, 0.5, 1e-3}, 1.0), PoleError);
  CHECK_THROWS_AS(laplace_symbol({KernelBranch::Decay, 0.5, 1e-3}, cplx(-1.0, 0.0)), DomainError);
  CHECK_THROWS_AS(laplace_symbol({KernelBranch::Decay, 1.5, 1e-3}, 1.0), DomainError);
}

TEST_CASE("laplace_symbol is the transform of the kernel") {
  boost::math::quadrature::exp_sinh<double> integrator;
  for (auto branch : {KernelBranch::Decay, KernelBranch::Growth, KernelBranch::RiemannLiouville}) {
    for (double alpha : {0.3, 0.5, 0.8}) {
      for (double s : {3.0, 6.0}) {
        CAPTURE(alpha);
        CAPTURE(s);
        const double direct = integrator.integrate([&](double t) {
          const double damping = std::exp(-s * t);
          return damping == 0.0 ? 0.0 : damping * kernel(branch, alpha, t);
        });
        CHECK(laplace_symbol({branch, alpha, 1e-3}, s).real() == doctest::Approx(direct).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("decay weights start at h^a / (1 + h^a)") {
  for (double alpha : {0.2, 0.5, 0.9}) {
    for (double h : {0.1, 1e-3}) {
      const WeightTable w = cq_weights({KernelBranch::Decay, alpha, h}, 10);
      const double ha = std::pow(h, alpha);
      CHECK(w[0] == doctest::Approx(ha / (1.0 + ha)).epsilon(1e-12));
    }
  }
}

TEST_CASE("unit alpha decay weights are geometric") {
  WeightOptions opts;
  opts.allow_unit_alpha = true;
  const WeightTable w = cq_weights({KernelBranch::Decay, 1.0, 0.1}, 50, opts);
  CHECK(w[2] == doctest::Approx(0.0751314800).epsilon(1e-9));
  for (Eigen::Index j = 0; j <= 50; ++j) CHECK(std::fabs(w[j] - 0.1 / std::pow(1.1, j + 1)) < 1e-13);
  CHECK_THROWS_AS(cq_weights({KernelBranch::Decay, 1.0, 0.1}, 5), DomainError);
}

TEST_CASE("Riemann-Liouville weights are binomial coefficients") {
  const WeightTable unit = cq_weights({KernelBranch::RiemannLiouville, 0.5, 1.0}, 3);
  CHECK(unit[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(unit[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(unit[2] == doctest::Approx(0.375).epsilon(1e-12));
  for (double alpha : {0.3, 0.5, 0.7}) {
    const double h = 0.01;
    const WeightTable w = cq_weights({KernelBranch::RiemannLiouville, alpha, h}, 1000);
    for (Eigen::Index j = 0; j <= 1000; ++j) {
      const double ref = std::exp(std::lgamma(j + alpha) - std::lgamma(alpha) - std::lgamma(j + 1.0)) * std::pow(h, alpha);
      REQUIRE(w[j] > 0.0);
      REQUIRE(std::fabs(w[j] - ref) <= 1e-10);
    }
  }
}

TEST_CASE("generating function is reproduced inside the unit disc") {
  const Eigen::Index n = 2000;
  for (auto branch : {KernelBranch::Decay, KernelBranch::Growth, KernelBranch::RiemannLiouville}) {
    const KernelSpec spec{branch, 0.6, 0.01};
    const WeightTable w = cq_weights(spec, n);
    for (int k = 0; k < 16; ++k) {
      const cplx zeta = std::polar(0.9, 2.0 * std::numbers::pi * k / 16.0 + 0.1);
      cplx sum = 0.0, power = 1.0;
      for (Eigen::Index j = 0; j <= n; ++j, power *= zeta) sum += w[j] * power;
      const cplx expected = laplace_symbol(spec, (1.0 - zeta) / spec.step);
      CHECK(std::abs(sum - expected) <= 1e-8 * std::max(1.0, std::abs(expected)));
    }
  }
}

TEST_CASE("weights invert the symbol algebraically") {
  // (h^-a (1 - zeta)^a +- 1) F(zeta) = 1, read off coefficient by coefficient.
  const double alpha = 0.5, h = 0.01;
  const Eigen::Index n = 300;
  const Eigen::VectorXd g = symbol_coefficients(alpha, h, n);
  const WeightTable decay = cq_weights({KernelBranch::Decay, alpha, h}, n);
  const WeightTable growth = cq_weights({KernelBranch::Growth, alpha, h}, n);
  for (Eigen::Index j = 0; j <= n; ++j) {
    double d = decay[j], gr = -growth[j];
    for (Eigen::Index k = 0; k <= j; ++k) {
      d += g[k] * decay[j - k];
      gr += g[k] * growth[j - k];
    }
    const double delta = j == 0 ? 1.0 : 0.0;
    CHECK(std::fabs(d - delta) < 1e-9);
    CHECK(std::fabs(gr - delta) < 1e-9 * std::pow(1.0 - h, -static_cast<double>(j)));
  }
}

TEST_CASE("decay mass is bounded by one and approaches the kernel mass") {
  const double alpha = 0.5, h = 0.01;
  const Eigen::Index n = 1000;
  const WeightTable w = cq_weights({KernelBranch::Decay, alpha, h}, n);
  double sum = 0.0;
  for (Eigen::Index j = 0; j <= n; ++j) {
    REQUIRE(w[j] > 0.0);
    sum += w[j];
    REQUIRE(sum <= 1.0 + 1e-8);
  }
  const double mass = 1.0 - mittag_leffler(alpha, -std::sqrt(10.0));
  CHECK(std::fabs(sum - mass) < 0.5 * h);
}

TEST_CASE("partial sums approximate the kernel integral") {
  // Error is O(h^a) at the first steps and O(h) away from t = 0.
  for (double alpha : {0.3, 0.5, 0.7, 0.9}) {
    for (double h : {1e-2, 1e-3}) {
      const Eigen::Index n = std::llround(1.0 / h);
      const WeightTable w = cq_weights({KernelBranch::Decay, alpha, h}, n);
      double sum = 0.0, worst = 0.0, worst_far = 0.0;
      for (Eigen::Index j = 0; j <= n; ++j) {
        sum += w[j];
        const double t = j * h;
        const double err = std::fabs(sum - (1.0 - mittag_leffler(alpha, -std::pow(t, alpha))));
        worst = std::max(worst, err);
        if (t >= 0.5) worst_far = std::max(worst_far, err);
      }
      CAPTURE(alpha);
      CAPTURE(h);
      CHECK(worst <= 1.0 * std::pow(h, alpha));
      CHECK(worst_far <= 0.4 * h);
    }
  }
}

TEST_CASE("partial sums match direct quadrature of the kernel") {
  boost::math::quadrature::tanh_sinh<double> integrator;
  for (auto branch : {KernelBranch::Decay, KernelBranch::Growth, KernelBranch::RiemannLiouville}) {
    const double alpha = 0.6, T = 0.8;
    const double direct = integrator.integrate([&](double t) { return kernel(branch, alpha, t); }, 0.0, T);
    double previous_error = 1.0;
    for (double h : {4e-3, 2e-3, 1e-3}) {
      const Eigen::Index n = std::llround(T / h);
      const WeightTable w = cq_weights({branch, alpha, h}, n);
      const double err = std::fabs(w.weights.sum() - direct) / direct;
      CAPTURE(err);
      CHECK(err < 0.6 * previous_error);
      previous_error = err;
    }
    CHECK(previous_error < 3e-3);
  }
}

TEST_CASE("weight table metadata") {
  const WeightTable w = cq_weights({KernelBranch::Decay, 0.5, 1e-3}, 100);
  CHECK(w.size() == 101);
  CHECK(w.fft_size >= 4 * 101);
  CHECK(w.radius < 1.0);
  CHECK(w.error_estimate <= 1e-10);
  CHECK(smooth_fft_size(404) == 405);
  CHECK(smooth_fft_size(1) == 1);
  CHECK(smooth_fft_size(7) == 8);
}

TEST_CASE("contour failures are reported") {
  CHECK_THROWS_AS(cq_weights({KernelBranch::Growth, 0.5, 1.0}, 10), ContourError);
  WeightOptions strict;
  strict.tolerance = 1e-20;
  CHECK_THROWS_AS(cq_weights({KernelBranch::Decay, 0.5, 1e-3}, 100, strict), ContourError);
  CHECK_THROWS_AS(cq_weights({KernelBranch::Decay, 0.5, 1e-3}, 0), DomainError);
  CHECK_THROWS_AS(cq_weights({KernelBranch::Decay, 0.5, -1.0}, 10), DomainError);
}
