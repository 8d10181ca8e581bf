#pragma once

#include <complex>

#include <Eigen/Core>

namespace fraclog {

/// Convolution kernels handled by the quadrature.
///
///  - Decay:            t^(a-1) E_{a,a}(-t^a),  symbol 1/(s^a + 1)
///  - Growth:           t^(a-1) E_{a,a}(+t^a),  symbol 1/(s^a - 1)
///  - RiemannLiouville: t^(a-1) / Gamma(a),      symbol s^(-a)
enum class KernelBranch { Decay, Growth, RiemannLiouville };

struct KernelSpec {
  KernelBranch branch = KernelBranch::Decay;
  double alpha = 0.5;
  double step = 1e-3;

  /// 0 < alpha < 1 and step > 0. `allow_unit_alpha` admits alpha == 1,
  /// which only the tests use (the kernels reduce to exponentials).
  void validate(bool allow_unit_alpha = false) const;
};

/// Backward-Euler convolution quadrature weights omega_0..omega_n.
///
/// The weights already carry the step scaling: sum_j omega_{n-j} f_j
/// approximates the convolution integral directly.
struct WeightTable {
  KernelSpec spec;
  Eigen::VectorXd weights;
  /// A-priori rounding-error bound per weight: absolute for Decay and
  /// RiemannLiouville, relative to the (1 - h)^-j growth for Growth.
  double error_estimate = 0.0;
  /// FFT length and contour radius used.
  Eigen::Index fft_size = 0;
  double radius = 0.0;

  Eigen::Index size() const { return weights.size(); }
  double operator[](Eigen::Index j) const { return weights[j]; }
};

struct WeightOptions {
  /// Target accuracy; cq_weights throws ContourError if the a-priori error
  /// estimate exceeds it.
  double tolerance = 1e-10;
  /// Aliasing level rho^N of the contour.
  double aliasing = 1e-14;
  /// Oversampling factor: N >= oversampling * (n + 1).
  int oversampling = 4;
  bool allow_unit_alpha = false;
};

/// Laplace transform of the branch kernel at s (Re s > 0, principal s^alpha).
/// Throws PoleError within 1e-12 of the Growth pole s^alpha = 1.
std::complex<double> laplace_symbol(const KernelSpec& spec, std::complex<double> s);

/// Taylor coefficients of F(zeta) = L{K}((1 - zeta)/h), computed by sampling
/// F on a circle |zeta| = rho and applying one FFT.
WeightTable cq_weights(const KernelSpec& spec, Eigen::Index n, const WeightOptions& opts = {});

/// Smallest N >= minimum with no prime factor above 5.
Eigen::Index smooth_fft_size(Eigen::Index minimum);

}  // namespace fraclog
