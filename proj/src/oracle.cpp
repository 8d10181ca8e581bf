#include "fraclog/oracle.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include "fraclog/errors.hpp"
#include "fraclog/special_functions.hpp"

namespace fraclog::oracle {
namespace {

// (k+1)^a - k^a without cancellation.
double first_difference(double a, Eigen::Index k) {
  if (k == 0) return 1.0;
  const double m = static_cast<double>(k + 1);
  return -std::pow(m, a) * std::expm1(a * std::log1p(-1.0 / m));
}

// (k+2)^p - 2 (k+1)^p + k^p without cancellation, via
// m^p [(1+x)^p + (1-x)^p - 2] = 2 m^p sum_{i>=1} C(p, 2i) x^(2i), m = k+1.
double second_difference(double p, Eigen::Index k) {
  if (k < 3) {
    const double kk = static_cast<double>(k);
    return std::pow(kk + 2.0, p) - 2.0 * std::pow(kk + 1.0, p) + std::pow(kk, p);
  }
  const double m = static_cast<double>(k + 1);
  const double x2 = 1.0 / (m * m);
  double binom = 1.0;  // C(p, r)
  double power = 1.0;  // x^r
  double sum = 0.0;
  for (int r = 1; r < 200; ++r) {
    binom *= (p - r + 1) / r;
    if (r % 2 == 1) continue;
    power *= x2;
    const double term = binom * power;
    sum += term;
    if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
  }
  return 2.0 * std::pow(m, p) * sum;
}

class PrecisionGuard {
 public:
  explicit PrecisionGuard(unsigned digits)
      : saved_(boost::multiprecision::mpfr_float::default_precision()) {
    boost::multiprecision::mpfr_float::default_precision(digits);
  }
  ~PrecisionGuard() { boost::multiprecision::mpfr_float::default_precision(saved_); }
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  unsigned saved_;
};

}  // namespace

Trajectory pece_solve(const ProblemSpec& spec) {
  spec.validate();
  const Eigen::Index n_steps = spec.steps();
  const Nonlinearity nl = spec.nonlinearity;
  const double a = spec.alpha;
  const double x0 = spec.u0;
  const double h_alpha = std::pow(spec.step, a);
  const double predictor_scale = h_alpha / gamma(a + 1.0);
  const double corrector_scale = h_alpha / gamma(a + 2.0);

  Eigen::VectorXd b(n_steps + 1), c(n_steps + 1);
  for (Eigen::Index k = 0; k <= n_steps; ++k) {
    b[k] = first_difference(a, k);
    c[k] = second_difference(a + 1.0, k);
  }

  detail::StepRecorder recorder(spec);
  recorder.push(x0);
  // Slot n_steps - j holds f(x_j).
  Eigen::VectorXd f_rev(n_steps + 1);
  f_rev[n_steps] = rhs(nl, x0);
  const double f0 = f_rev[n_steps];

  for (Eigen::Index n = 0; n < n_steps; ++n) {
    const double nn = static_cast<double>(n);
    const Eigen::Index head = n_steps - n;  // slot of f(x_n)
    const double predicted =
        x0 + predictor_scale * b.head(n + 1).dot(f_rev.segment(head, n + 1));
    const double start_weight =
        std::pow(nn + 1.0, a) * (nn * std::expm1(a * std::log1p(-1.0 / (nn + 1.0))) + a);
    double sum = start_weight * f0 + rhs(nl, predicted);
    if (n > 0) sum += c.head(n).dot(f_rev.segment(head, n));
    const double corrected = x0 + corrector_scale * sum;
    if (!recorder.push(corrected)) break;
    f_rev[head - 1] = rhs(nl, recorder.value(n + 1));
  }
  return std::move(recorder).finish();
}

Eigen::VectorXd caputo_residual(const Trajectory& traj, double alpha, Nonlinearity nl) {
  if (traj.status != RunStatus::Completed) {
    throw DomainError("caputo_residual: trajectory must be completed");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("caputo_residual: alpha must lie in (0, 1)");
  const Eigen::Index n_last = traj.size() - 1;
  Eigen::VectorXd residual(n_last);
  if (n_last < 1) return residual;

  const double scale = std::pow(traj.step, -alpha) / gamma(2.0 - alpha);
  Eigen::VectorXd d(n_last);
  for (Eigen::Index k = 0; k < n_last; ++k) d[k] = first_difference(1.0 - alpha, k);
  // Slot n_last - j holds x_j - x_{j-1}.
  Eigen::VectorXd diff_rev(n_last + 1);
  for (Eigen::Index j = 1; j <= n_last; ++j) {
    diff_rev[n_last - j] = traj.values[j] - traj.values[j - 1];
  }
  for (Eigen::Index n = 1; n <= n_last; ++n) {
    const double derivative = scale * d.head(n).dot(diff_rev.segment(n_last - n, n));
    residual[n - 1] = derivative - rhs(nl, traj.values[n]);
  }
  return residual;
}

double ml_series_highprec(double alpha, double beta, double z, int digits) {
  using boost::multiprecision::mpfr_float;
  if (!(alpha > 0.0 && alpha <= 1.0) || !(beta > 0.0)) {
    throw DomainError("ml_series_highprec: need 0 < alpha <= 1 and beta > 0");
  }
  if (!(std::fabs(z) <= 10.0)) throw DomainError("ml_series_highprec: |z| must not exceed 10");
  if (digits < 50) throw DomainError("ml_series_highprec: digits must be >= 50");

  // Largest term is ~exp(|z|^(1/alpha)); for z < 0 that many digits cancel.
  const double cancellation =
      z < 0.0 ? std::pow(-z, 1.0 / alpha) / std::numbers::ln10 : 0.0;
  const auto working = static_cast<unsigned>(digits + std::ceil(cancellation) + 10);
  PrecisionGuard guard(working);

  const mpfr_float zz(z);
  const mpfr_float a(alpha);
  const mpfr_float b(beta);
  const mpfr_float tiny = pow(mpfr_float(10), -digits);
  mpfr_float sum = 0;
  mpfr_float power = 1;
  int quiet = 0;
  constexpr int kMaxTerms = 2000000;
  for (int j = 0; j < kMaxTerms; ++j) {
    const mpfr_float term = power / tgamma(a * j + b);
    sum += term;
    const mpfr_float scale = abs(sum) > 1 ? mpfr_float(abs(sum)) : mpfr_float(1);
    quiet = (j > 0 && abs(term) < tiny * scale) ? quiet + 1 : 0;
    if (quiet >= 10) return sum.convert_to<double>();
    power *= zz;
  }
  throw AccuracyError("ml_series_highprec: series did not converge");
}

double ml_laplace_integral(double alpha, double beta, double z) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("ml_laplace_integral: alpha must lie in (0, 1)");
  if (!(z < 0.0)) throw DomainError("ml_laplace_integral: z must be negative");
  const bool two_parameter = beta == alpha;
  if (!(beta == 1.0 || two_parameter)) {
    throw DomainError("ml_laplace_integral: beta must equal 1 or alpha");
  }
  using Real = long double;
  const Real a = alpha;
  const Real x = std::pow(static_cast<Real>(-z), 1 / a);
  const Real pi = std::numbers::pi_v<long double>;
  const Real s = std::sin(a * pi);
  const Real cs = std::cos(a * pi);
  auto spectral = [&](Real r) -> Real {
    if (r <= 0) return 0;
    const Real ra = std::pow(r, a);
    const Real density = s / pi * ra / r / (ra * ra + 2 * ra * cs + 1);
    const Real weight = two_parameter ? r : Real(1);
    return weight * std::exp(-r * x) * density;
  };
  boost::math::quadrature::exp_sinh<Real> integrator;
  Real error = 0;
  const Real value = integrator.integrate(spectral, std::sqrt(std::numeric_limits<Real>::epsilon()), &error);
  return static_cast<double>(two_parameter ? value * std::pow(x, 1 - a) : value);
}

}  // namespace fraclog::oracle
