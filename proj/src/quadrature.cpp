#include "fraclog/quadrature.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "fraclog/errors.hpp"

namespace fraclog {

void KernelSpec::validate(bool allow_unit_alpha) const {
  const bool alpha_ok = alpha > 0.0 && (alpha < 1.0 || (allow_unit_alpha && alpha == 1.0));
  if (!alpha_ok) throw DomainError("KernelSpec: alpha must lie in (0, 1), got " + std::to_string(alpha));
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw DomainError("KernelSpec: step must be positive, got " + std::to_string(step));
  }
}

std::complex<double> laplace_symbol(const KernelSpec& spec, std::complex<double> s) {
  spec.validate(true);
  if (!(s.real() > 0.0)) throw DomainError("laplace_symbol: requires Re(s) > 0");
  const std::complex<double> s_alpha = std::pow(s, spec.alpha);
  switch (spec.branch) {
    case KernelBranch::Decay:
      return 1.0 / (s_alpha + 1.0);
    case KernelBranch::Growth:
      if (std::abs(s_alpha - 1.0) < 1e-12) throw PoleError("laplace_symbol: Growth pole at s^alpha = 1");
      return 1.0 / (s_alpha - 1.0);
    case KernelBranch::RiemannLiouville:
      return 1.0 / s_alpha;
  }
  return {};
}

Eigen::Index smooth_fft_size(Eigen::Index minimum) {
  for (Eigen::Index n = std::max<Eigen::Index>(minimum, 1);; ++n) {
    Eigen::Index r = n;
    for (Eigen::Index p : {2, 3, 5}) {
      while (r % p == 0) r /= p;
    }
    if (r == 1) return n;
  }
}

WeightTable cq_weights(const KernelSpec& spec, Eigen::Index n, const WeightOptions& opts) {
  spec.validate(opts.allow_unit_alpha);
  if (n < 1) throw DomainError("cq_weights: n must be >= 1");
  if (opts.oversampling < 2) throw DomainError("cq_weights: oversampling must be >= 2");

  const double h = spec.step;
  // The Growth symbol has a pole at zeta = 1 - h inside the unit disk; the
  // contour is scaled to stay inside the disk of convergence.
  double singularity = 1.0;
  if (spec.branch == KernelBranch::Growth) {
    if (!(h < 1.0)) throw ContourError("cq_weights: Growth branch needs step < 1 (pole at zeta = 1 - h)");
    singularity = 1.0 - h;
  }

  const Eigen::Index fft_size = smooth_fft_size(opts.oversampling * (n + 1));
  const double rho = singularity * std::pow(opts.aliasing, 1.0 / static_cast<double>(fft_size));

  std::vector<std::complex<double>> samples(fft_size);
  double max_sample = 0.0;
  for (Eigen::Index k = 0; k < fft_size; ++k) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(fft_size);
    const std::complex<double> zeta = std::polar(rho, theta);
    samples[k] = laplace_symbol(spec, (1.0 - zeta) / h);
    max_sample = std::max(max_sample, std::abs(samples[k]));
  }

  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> coeffs;
  fft.fwd(coeffs, samples);

  WeightTable table;
  table.spec = spec;
  table.fft_size = fft_size;
  table.radius = rho;
  table.weights.resize(n + 1);
  // Divide by rho^j through a running log to avoid forming rho^-n directly.
  const double log_rho = std::log(rho);
  for (Eigen::Index j = 0; j <= n; ++j) {
    table.weights[j] = coeffs[j].real() / static_cast<double>(fft_size) *
                       std::exp(-static_cast<double>(j) * log_rho);
  }

  const double amplification = std::exp(-static_cast<double>(n) * (log_rho - std::log(singularity)));
  const double error = std::numeric_limits<double>::epsilon() * max_sample * amplification;
  table.error_estimate = error;
  if (error > opts.tolerance) {
    throw ContourError("cq_weights: estimated weight error " + std::to_string(error) +
                       " exceeds tolerance " + std::to_string(opts.tolerance) + " for n=" +
                       std::to_string(n));
  }
  return table;
}

}  // namespace fraclog
