#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "fraclog/solver.hpp"
#include "fraclog/types.hpp"

namespace fraclog {

/// Constants of the Mittag-Leffler estimates
///   E_a(-t^a) <= c,    t^(a-1) E_{a,a}(-t^a) <= c1 t^(a-1).
/// c = 1 and c1 = 1/Gamma(a) are admissible (leading series term dominates).
struct EnvelopeConstants {
  double c = 1.0;
  double c1 = 1.0;

  static EnvelopeConstants defaults(double alpha);
  void validate() const;
};

/// Blow-up window for u0 > 1:
///   (Gamma(a+1) / (4 (u0 - 1/2)))^(1/a) <= T* <= (Gamma(a+1) / (u0 - 1))^(1/a).
BoundBracket blowup_bracket(double alpha, double u0);

/// Windows for the comparison problems started at w0 > 0:
/// D^a w = w^2 (`square`) and D^a w = (w + 1/2)^2 (`shifted_square`).
struct ComparisonBrackets {
  BoundBracket square;
  BoundBracket shifted_square;
};
ComparisonBrackets comparison_brackets(double alpha, double w0);

/// D(t) = 1/(c u0) - (c1/a) t^a.
double envelope_denominator(double alpha, double u0, const EnvelopeConstants& consts, double t);
/// Root T0 = (a / (c1 c u0))^(1/a) of D.
double envelope_root(double alpha, double u0, const EnvelopeConstants& consts);
/// 1 / D(t) for 0 < u0 < 1 and t with D(t) > 0; DomainError otherwise.
double decay_envelope(double alpha, double u0, const EnvelopeConstants& consts, double t);

/// max |u (1 - u)| over |u - u0| <= b.
double logistic_bound(double u0, double b);
/// Local existence horizon min{T, (b Gamma(a+1) / M)^(1/a)}.
double existence_horizon(double alpha, double u0, double b, double horizon);

/// Gamma(2a) / Gamma(a), the blow-up profile amplitude.
double profile_coefficient(double alpha);

struct FitOptions {
  /// Number of steps before the crossing considered for the fit.
  Eigen::Index tail_points = 20;
  /// Steps directly before the crossing that are skipped; the last step
  /// before a crossing carries the discrete blow-up rather than the profile.
  Eigen::Index guard = 1;
  /// Points with value - shift below this are dropped.
  double min_excess = 1.0;
  Eigen::Index min_points = 5;
  /// Maximal RMS residual of the log-log fit.
  double max_rms = 0.05;
};

struct ProfileFit {
  double blowup_time = 0.0;
  double coefficient = 0.0;
  double rms = 0.0;
  Eigen::Index points = 0;
};

/// Least-squares fit of log(x - shift) = log C - a log(T - t) on the tail of
/// a blown-up trajectory, over T and C. Throws FitError.
ProfileFit fit_blowup_profile(const Trajectory& traj, double alpha, double shift,
                              const FitOptions& opts = {});

struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double bound = 0.0;
};

struct VerifyReport {
  std::string classification;
  std::vector<CheckResult> checks;

  bool passed() const;
  /// One `check=<name> status=<pass|fail> measured=<v> bound=<v>` line per check.
  std::string to_text() const;
};

struct VerifyOptions {
  /// Envelope constants; c1 <= 0 selects the defaults for the run's alpha.
  EnvelopeConstants envelope{1.0, 0.0};
  /// Absolute round-off allowance on the envelope bound.
  double envelope_slack = 1e-12;
  /// Sandwich slack in units of step^alpha.
  double sandwich_factor = 5.0;
  double profile_tolerance = 0.25;
  /// The profile check is skipped when the corrected run blows up in fewer steps.
  Eigen::Index profile_min_steps = 1000;
  FitOptions fit;
  bool check_sandwich = true;
  bool check_profile = true;
};

/// Check one run against the global/blow-up dichotomy and its bounds.
/// `solver` must be the options the trajectory was produced with; comparison
/// runs reuse them.
VerifyReport verify_run(const ProblemSpec& spec, const Trajectory& traj,
                        const SolverOptions& solver = {}, const VerifyOptions& opts = {});

/// detect_blowup plus bracket and profile fields (profile left empty when
/// the fit is rejected).
std::optional<BlowUpReport> blowup_report(const ProblemSpec& spec, const Trajectory& traj,
                                          const FitOptions& fit = {});

}  // namespace fraclog
