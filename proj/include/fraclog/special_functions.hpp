#pragma once

#include <Eigen/Core>

namespace fraclog {

/// Truncation policy for the Mittag-Leffler evaluators.
///
/// `abs_tol` is an absolute tolerance for results of order one; for results
/// larger than one in magnitude it is applied relative to the result.
struct MLAccuracy {
  double abs_tol = 1e-12;
  int max_terms = 20000;

  void validate() const;
};

/// Euler Gamma function for x > 0. Throws DomainError otherwise.
double gamma(double x);

/// One-parameter Mittag-Leffler function E_alpha(z), 0 < alpha <= 1.
///
/// Positive z and moderate negative z are summed as a power series (negative
/// z in quad precision to survive cancellation); far negative z uses the
/// algebraic asymptotic expansion. The switch is driven by |z|^(1/alpha),
/// which controls both the series cancellation and the asymptotic remainder.
/// Returns +infinity when the true value exceeds the double range.
double mittag_leffler(double alpha, double z, const MLAccuracy& acc = {});

/// Two-parameter Mittag-Leffler function E_{alpha,beta}(z), beta > 0.
double mittag_leffler_two(double alpha, double beta, double z,
                          const MLAccuracy& acc = {});

/// E_alpha(sign * t^alpha) for every t in `times` (t >= 0).
Eigen::VectorXd mittag_leffler_on_grid(double alpha, double sign,
                                       const Eigen::Ref<const Eigen::VectorXd>& times,
                                       const MLAccuracy& acc = {});

}  // namespace fraclog
