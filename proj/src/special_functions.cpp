#include "fraclog/special_functions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

extern "C" {
#include <quadmath.h>
}

#include "fraclog/errors.hpp"

namespace fraclog {
namespace {

// |z|^(1/alpha) bounds for the negative half-line. Below the first limit the
// largest series term is ~e^3 and double suffices; up to the second, quad
// precision absorbs the ~e^40 cancellation; beyond it the asymptotic
// remainder is ~e^-40.
constexpr double kDoubleSeriesLimit = 3.0;
constexpr double kQuadSeriesLimit = 40.0;

constexpr double kLogDoubleMax = 709.0;

inline double log_gamma(double x) {
  int sign = 0;
  return ::lgamma_r(x, &sign);
}
inline __float128 log_gamma(__float128 x) { return lgammaq(x); }
inline double exp_of(double x) { return std::exp(x); }
inline __float128 exp_of(__float128 x) { return expq(x); }
inline double log_of(double x) { return std::log(x); }
inline __float128 log_of(__float128 x) { return logq(x); }

double sin_pi(double x) {
  double r = std::fmod(x, 2.0);
  if (r > 1.0) r -= 2.0;
  if (r < -1.0) r += 2.0;
  if (r > 0.5) return std::sin(std::numbers::pi * (1.0 - r));
  if (r < -0.5) return std::sin(std::numbers::pi * (-1.0 - r));
  return std::sin(std::numbers::pi * r);
}

// 1/Gamma(x) on the whole real line; exact zero at the poles of Gamma.
double reciprocal_gamma(double x) {
  if (x > 0.0) return std::exp(-log_gamma(x));
  if (x == std::floor(x)) return 0.0;
  return sin_pi(x) * std::exp(log_gamma(1.0 - x)) / std::numbers::pi;
}

void check_parameters(double alpha, double beta, double z, const MLAccuracy& acc) {
  acc.validate();
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw DomainError("mittag_leffler: alpha must lie in (0, 1], got " + std::to_string(alpha));
  }
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw DomainError("mittag_leffler: beta must be positive, got " + std::to_string(beta));
  }
  if (std::isnan(z)) throw DomainError("mittag_leffler: z is NaN");
}

// sum_j z^j / Gamma(alpha j + beta), accumulated in `Real`. Terms are built
// from log-magnitudes so large j never overflows Gamma.
template <class Real>
double power_series(double alpha, double beta, double z, const MLAccuracy& acc) {
  const Real log_abs_z = log_of(static_cast<Real>(std::fabs(z)));
  const bool alternating = z < 0.0;
  Real sum = 0;
  Real compensation = 0;
  Real previous = std::numeric_limits<double>::infinity();
  for (int j = 0; j < acc.max_terms; ++j) {
    const Real arg = static_cast<Real>(alpha) * j + static_cast<Real>(beta);
    const Real magnitude = exp_of(static_cast<Real>(j) * log_abs_z - log_gamma(arg));
    const Real term = (alternating && (j % 2 == 1)) ? -magnitude : magnitude;
    // Kahan summation; a no-op refinement in quad precision but harmless.
    const Real y = term - compensation;
    const Real t = sum + y;
    compensation = (t - sum) - y;
    sum = t;
    const double scale = std::max(1.0, std::fabs(static_cast<double>(sum)));
    if (j > 0 && magnitude < previous &&
        static_cast<double>(magnitude) < 0.1 * acc.abs_tol * scale) {
      return static_cast<double>(sum);
    }
    previous = magnitude;
  }
  throw AccuracyError("mittag_leffler: power series did not converge within max_terms=" +
                      std::to_string(acc.max_terms) + " (z=" + std::to_string(z) + ")");
}

// E_{alpha,beta}(z) ~ -sum_{k>=1} z^{-k} / Gamma(beta - alpha k), z -> -infinity,
// truncated once the term envelope falls below tolerance.
double asymptotic_series(double alpha, double beta, double z, const MLAccuracy& acc) {
  const double x = -z;
  const double log_x = std::log(x);
  // Beyond this index every argument beta - alpha k is below -1 and the
  // envelope Gamma(1 - arg) / (pi x^k) is log-convex in k.
  const int convex_from = static_cast<int>(std::ceil((beta + 1.0) / alpha));
  double sum = 0.0;
  double previous_envelope = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= acc.max_terms; ++k) {
    const double arg = beta - alpha * k;
    const double power = std::exp(-k * log_x);
    const double term = ((k % 2 == 1) ? 1.0 : -1.0) * power * reciprocal_gamma(arg);
    sum += term;
    const double envelope =
        arg > 0.0 ? std::fabs(term)
                  : std::exp(log_gamma(1.0 - arg) - k * log_x) / std::numbers::pi;
    const double scale = std::max(1.0, std::fabs(sum));
    if (envelope < 0.1 * acc.abs_tol * scale && envelope <= previous_envelope) return sum;
    if (k > convex_from && envelope > previous_envelope) {
      throw AccuracyError("mittag_leffler: asymptotic expansion diverged before reaching "
                          "tolerance (z=" + std::to_string(z) + ")");
    }
    previous_envelope = envelope;
  }
  throw AccuracyError("mittag_leffler: asymptotic expansion exhausted max_terms");
}

}  // namespace

void MLAccuracy::validate() const {
  if (!(abs_tol > 0.0)) throw DomainError("MLAccuracy: abs_tol must be positive");
  if (max_terms < 1) throw DomainError("MLAccuracy: max_terms must be >= 1");
}

double gamma(double x) {
  if (!(x > 0.0)) {
    throw DomainError("gamma: argument must be positive, got " + std::to_string(x));
  }
  return std::tgamma(x);
}

double mittag_leffler_two(double alpha, double beta, double z, const MLAccuracy& acc) {
  check_parameters(alpha, beta, z, acc);
  if (z == 0.0) return std::exp(-log_gamma(beta));
  if (alpha == 1.0 && beta == 1.0) return std::exp(z);

  if (z > 0.0) {
    // Leading growth (1/alpha) z^((1-beta)/alpha) exp(z^(1/alpha)).
    const double log_growth = std::pow(z, 1.0 / alpha) + (1.0 - beta) / alpha * std::log(z) -
                              std::log(alpha);
    if (log_growth > kLogDoubleMax) return std::numeric_limits<double>::infinity();
    return power_series<double>(alpha, beta, z, acc);
  }

  const double scaled = std::pow(-z, 1.0 / alpha);
  if (scaled <= kDoubleSeriesLimit) return power_series<double>(alpha, beta, z, acc);
  if (scaled <= kQuadSeriesLimit) return power_series<__float128>(alpha, beta, z, acc);
  return asymptotic_series(alpha, beta, z, acc);
}

double mittag_leffler(double alpha, double z, const MLAccuracy& acc) {
  return mittag_leffler_two(alpha, 1.0, z, acc);
}

Eigen::VectorXd mittag_leffler_on_grid(double alpha, double sign,
                                       const Eigen::Ref<const Eigen::VectorXd>& times,
                                       const MLAccuracy& acc) {
  Eigen::VectorXd out(times.size());
  for (Eigen::Index i = 0; i < times.size(); ++i) {
    out[i] = mittag_leffler(alpha, sign * std::pow(times[i], alpha), acc);
  }
  return out;
}

}  // namespace fraclog
