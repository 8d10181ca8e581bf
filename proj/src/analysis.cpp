#include "fraclog/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <boost/math/tools/minima.hpp>

#include "fraclog/errors.hpp"
#include "fraclog/special_functions.hpp"

namespace fraclog {
namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
}

// (Gamma(a+1) / denominator)^(1/a)
double bracket_time(double alpha, double denominator) {
  return std::pow(gamma(alpha + 1.0) / denominator, 1.0 / alpha);
}

double profile_shift(Nonlinearity nl) {
  switch (nl) {
    case Nonlinearity::Logistic: return 1.0;
    case Nonlinearity::ShiftedSquare: return -0.5;
    default: return 0.0;
  }
}

std::optional<BoundBracket> bracket_for(const ProblemSpec& spec) {
  switch (spec.nonlinearity) {
    case Nonlinearity::Logistic:
      if (spec.u0 > 1.0) return blowup_bracket(spec.alpha, spec.u0);
      return std::nullopt;
    case Nonlinearity::ShiftedLogistic: return blowup_bracket(spec.alpha, spec.u0 + 1.0);
    case Nonlinearity::Square: return comparison_brackets(spec.alpha, spec.u0).square;
    case Nonlinearity::ShiftedSquare: return comparison_brackets(spec.alpha, spec.u0).shifted_square;
  }
  return std::nullopt;
}

// Index one past the last step that precedes any threshold crossing.
Eigen::Index pre_blowup_end(const Trajectory& traj) {
  return traj.blew_up() ? traj.status_index : traj.size();
}

}  // namespace

EnvelopeConstants EnvelopeConstants::defaults(double alpha) {
  return {1.0, 1.0 / gamma(alpha)};
}

void EnvelopeConstants::validate() const {
  if (!(c > 0.0) || !(c1 > 0.0)) throw DomainError("envelope constants must be positive");
}

BoundBracket blowup_bracket(double alpha, double u0) {
  check_alpha(alpha);
  if (!(u0 > 1.0)) throw DomainError("blowup_bracket: u0 must exceed 1");
  return {bracket_time(alpha, 4.0 * (u0 - 0.5)), bracket_time(alpha, u0 - 1.0)};
}

ComparisonBrackets comparison_brackets(double alpha, double w0) {
  check_alpha(alpha);
  if (!(w0 > 0.0)) throw DomainError("comparison_brackets: w0 must be positive");
  return {{bracket_time(alpha, 4.0 * w0), bracket_time(alpha, w0)},
          {bracket_time(alpha, 4.0 * (w0 + 0.5)), bracket_time(alpha, w0 + 0.5)}};
}

double envelope_denominator(double alpha, double u0, const EnvelopeConstants& consts, double t) {
  return 1.0 / (consts.c * u0) - consts.c1 / alpha * std::pow(t, alpha);
}

double envelope_root(double alpha, double u0, const EnvelopeConstants& consts) {
  check_alpha(alpha);
  consts.validate();
  return std::pow(alpha / (consts.c1 * consts.c * u0), 1.0 / alpha);
}

double decay_envelope(double alpha, double u0, const EnvelopeConstants& consts, double t) {
  check_alpha(alpha);
  consts.validate();
  if (!(u0 > 0.0 && u0 < 1.0)) throw DomainError("decay_envelope: u0 must lie in (0, 1)");
  if (!(t >= 0.0)) throw DomainError("decay_envelope: t must be non-negative");
  const double d = envelope_denominator(alpha, u0, consts, t);
  if (!(d > 0.0)) throw DomainError("decay_envelope: denominator is not positive (t >= T0)");
  return 1.0 / d;
}

double logistic_bound(double u0, double b) {
  const auto f = [](double u) { return std::fabs(u * (1.0 - u)); };
  double m = std::max(f(u0 - b), f(u0 + b));
  if (u0 - b <= 0.5 && 0.5 <= u0 + b) m = std::max(m, 0.25);
  return m;
}

double existence_horizon(double alpha, double u0, double b, double horizon) {
  check_alpha(alpha);
  if (!(b > 0.0) || !(horizon > 0.0)) throw DomainError("existence_horizon: b and T must be positive");
  const double m = logistic_bound(u0, b);
  if (m == 0.0) return horizon;
  return std::min(horizon, std::pow(b * gamma(alpha + 1.0) / m, 1.0 / alpha));
}

double profile_coefficient(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("profile_coefficient: alpha must lie in (0, 1]");
  return gamma(2.0 * alpha) / gamma(alpha);
}

ProfileFit fit_blowup_profile(const Trajectory& traj, double alpha, double shift,
                              const FitOptions& opts) {
  if (!traj.blew_up()) throw FitError("fit_blowup_profile: trajectory did not blow up");
  const Eigen::Index last = traj.status_index - 1 - opts.guard;
  const Eigen::Index first = std::max<Eigen::Index>(0, last - opts.tail_points + 1);

  std::vector<double> t, y;
  for (Eigen::Index i = first; i <= last; ++i) {
    const double excess = traj.values[i] - shift;
    if (excess > opts.min_excess) {
      t.push_back(traj.times[i]);
      y.push_back(std::log(excess));
    }
  }
  const auto m = static_cast<Eigen::Index>(t.size());
  if (m < opts.min_points || m < 2) {
    throw FitError("fit_blowup_profile: only " + std::to_string(m) + " tail points usable");
  }
  const Eigen::Map<const Eigen::ArrayXd> times(t.data(), m);
  const Eigen::Map<const Eigen::ArrayXd> logs(y.data(), m);
  const double t_last = times[m - 1];

  // For fixed T the amplitude is linear; profile it out and search over
  // s = log(T - t_last).
  auto log_amplitude = [&](double s) {
    const double T = t_last + std::exp(s);
    return (logs + alpha * (T - times).log()).mean();
  };
  auto residual = [&](double s) {
    const double T = t_last + std::exp(s);
    return (logs + alpha * (T - times).log() - log_amplitude(s)).square().sum();
  };

  const double h = traj.step;
  const double s_lo = std::log(1e-6 * h);
  const double s_hi = std::log(1e3 * (t_last + h));
  constexpr int kScan = 400;
  int best = 0;
  double best_value = residual(s_lo);
  for (int i = 1; i <= kScan; ++i) {
    const double value = residual(s_lo + (s_hi - s_lo) * i / kScan);
    if (value < best_value) {
      best_value = value;
      best = i;
    }
  }
  const double cell = (s_hi - s_lo) / kScan;
  const double a = s_lo + cell * std::max(best - 1, 0);
  const double b = s_lo + cell * std::min(best + 1, kScan);
  const auto [s_opt, ssr] = boost::math::tools::brent_find_minima(residual, a, b, 50);

  ProfileFit fit;
  fit.blowup_time = t_last + std::exp(s_opt);
  fit.coefficient = std::exp(log_amplitude(s_opt));
  fit.rms = std::sqrt(ssr / static_cast<double>(m));
  fit.points = m;
  if (fit.rms > opts.max_rms) {
    throw FitError("fit_blowup_profile: RMS residual " + std::to_string(fit.rms) + " exceeds cap");
  }
  return fit;
}

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::string VerifyReport::to_text() const {
  std::ostringstream out;
  char line[256];
  for (const auto& c : checks) {
    std::snprintf(line, sizeof line, "check=%s status=%s measured=%.10g bound=%.10g\n",
                  c.name.c_str(), c.passed ? "pass" : "fail", c.measured, c.bound);
    out << line;
  }
  return out.str();
}

std::optional<BlowUpReport> blowup_report(const ProblemSpec& spec, const Trajectory& traj,
                                          const FitOptions& fit) {
  auto report = detect_blowup(traj, spec.blowup_threshold);
  if (!report) return report;
  report->bracket = bracket_for(spec);
  if (traj.blew_up()) {
    try {
      const ProfileFit p = fit_blowup_profile(traj, spec.alpha, profile_shift(spec.nonlinearity), fit);
      report->refined_T = p.blowup_time;
      report->coeff_est = p.coefficient;
    } catch (const FitError&) {
    }
  }
  return report;
}

VerifyReport verify_run(const ProblemSpec& spec, const Trajectory& traj,
                        const SolverOptions& solver, const VerifyOptions& opts) {
  VerifyReport report;
  auto add = [&](std::string name, bool ok, double measured, double bound) {
    report.checks.push_back({std::move(name), ok, measured, bound});
  };

  const double min_value = traj.size() > 0 ? traj.values.minCoeff() : 0.0;
  add("positivity", min_value > 0.0, min_value, 0.0);
  add("no_accuracy_failure", traj.status != RunStatus::AccuracyFailure,
      traj.status == RunStatus::AccuracyFailure ? 1.0 : 0.0, 0.0);

  if (spec.nonlinearity != Nonlinearity::Logistic) {
    report.classification = std::string(to_string(spec.nonlinearity));
    const auto bracket = bracket_for(spec);
    const bool blew = traj.blew_up();
    add("blew_up", blew, blew ? 1.0 : 0.0, 1.0);
    if (blew && bracket) {
      const double t = traj.times[traj.status_index];
      add("bracket_lower", t >= bracket->lower, t, bracket->lower);
      add("bracket_upper", t <= bracket->upper, t, bracket->upper);
    }
    return report;
  }

  if (spec.u0 == 1.0) {
    report.classification = "equilibrium";
    return report;
  }

  if (spec.u0 < 1.0) {
    report.classification = "global";
    add("completed", traj.status == RunStatus::Completed,
        traj.status == RunStatus::Completed ? 1.0 : 0.0, 1.0);
    const double max_value = traj.values.maxCoeff();
    add("bounded_by_one", max_value < 1.0, max_value, 1.0);
    const Eigen::Index n = traj.size();
    const double max_increase =
        n > 1 ? (traj.values.tail(n - 1) - traj.values.head(n - 1)).maxCoeff() : 0.0;
    add("monotone_non_increasing", max_increase <= 0.0, max_increase, 0.0);

    EnvelopeConstants consts = opts.envelope;
    if (!(consts.c1 > 0.0)) consts = EnvelopeConstants::defaults(spec.alpha);
    double excess = -std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < n; ++k) {
      const double t = traj.times[k];
      if (envelope_denominator(spec.alpha, spec.u0, consts, t) <= 0.0) break;
      excess = std::max(excess, traj.values[k] - decay_envelope(spec.alpha, spec.u0, consts, t));
    }
    add("decay_envelope", excess <= opts.envelope_slack, excess, opts.envelope_slack);
    return report;
  }

  report.classification = "blow-up";
  const bool blew = traj.blew_up();
  add("blew_up", blew, blew ? 1.0 : 0.0, 1.0);
  if (!blew) return report;

  const BoundBracket bracket = blowup_bracket(spec.alpha, spec.u0);
  const double t_detected = traj.times[traj.status_index];
  add("bracket_lower", t_detected >= bracket.lower, t_detected, bracket.lower);
  add("bracket_upper", t_detected <= bracket.upper, t_detected, bracket.upper);

  if (opts.check_sandwich) {
    ProblemSpec lower = spec;
    lower.nonlinearity = Nonlinearity::Square;
    lower.u0 = spec.u0 - 1.0;
    ProblemSpec upper = lower;
    upper.nonlinearity = Nonlinearity::ShiftedSquare;
    const Trajectory below = solve(lower, solver);
    const Trajectory above = solve(upper, solver);
    const Eigen::Index end =
        std::min({pre_blowup_end(traj), pre_blowup_end(below), pre_blowup_end(above)});
    const double slack = opts.sandwich_factor * std::pow(spec.step, spec.alpha);
    const double low_violation =
        (below.values.head(end).array() + 1.0 - traj.values.head(end).array()).maxCoeff();
    const double high_violation =
        (traj.values.head(end).array() - above.values.head(end).array() - 1.0).maxCoeff();
    add("sandwich_lower", low_violation <= slack, low_violation, slack);
    add("sandwich_upper", high_violation <= slack, high_violation, slack);
  }

  if (opts.check_profile) {
    Trajectory corrected;
    const Trajectory* source = &traj;
    if (!solver.picard) {
      SolverOptions picard = solver;
      picard.picard = true;
      corrected = solve(spec, picard);
      source = &corrected;
    }
    if (source->blew_up() && source->status_index < opts.profile_min_steps) return report;
    const double expected = profile_coefficient(spec.alpha);
    double rel_error = std::numeric_limits<double>::infinity();
    try {
      const ProfileFit fit = fit_blowup_profile(*source, spec.alpha, 1.0, opts.fit);
      rel_error = std::fabs(fit.coefficient - expected) / expected;
    } catch (const FitError&) {
    }
    add("profile_coefficient", rel_error <= opts.profile_tolerance, rel_error, opts.profile_tolerance);
  }
  return report;
}

}  // namespace fraclog
