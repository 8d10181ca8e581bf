#include "fraclog/validation.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "fraclog/errors.hpp"
#include "fraclog/oracle.hpp"
#include "fraclog/quadrature.hpp"
#include "fraclog/special_functions.hpp"

namespace fraclog {
namespace {

std::string tag(const char* name, double alpha, double u0) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s[alpha=%g,u0=%g]", name, alpha, u0);
  return buf;
}

void merge(VerifyReport& into, const std::string& prefix, const VerifyReport& from) {
  for (auto c : from.checks) {
    c.name = prefix + "." + c.name;
    into.checks.push_back(std::move(c));
  }
}

void check_ml(VerifyReport& report, const std::vector<double>& alphas, const std::vector<double>& zs) {
  for (double alpha : alphas) {
    double worst = 0.0;
    for (double beta : {1.0, alpha}) {
      for (double z : zs) {
        const double value = mittag_leffler_two(alpha, beta, z);
        const bool series_region = z >= 0.0 || (z > -10.0 && std::pow(std::fabs(z), 1.0 / alpha) <= 60.0);
        const double ref = series_region ? oracle::ml_series_highprec(alpha, beta, z)
                                         : oracle::ml_laplace_integral(alpha, beta, z);
        worst = std::max(worst, std::fabs(value - ref) / std::max(1.0, std::fabs(ref)));
      }
    }
    report.checks.push_back({tag("ml_oracle", alpha, 0.0), worst <= 1e-10, worst, 1e-10});
  }
}

void check_weights(VerifyReport& report) {
  const double alpha = 0.5, h = 0.01;
  const Eigen::Index n = 1000;
  const WeightTable rl = cq_weights({KernelBranch::RiemannLiouville, alpha, h}, n);
  double worst = 0.0;
  double binom = std::pow(h, alpha);  // C(j + a - 1, j) h^a, built by recurrence
  for (Eigen::Index j = 0; j <= n; ++j) {
    if (j > 0) binom *= (j - 1 + alpha) / static_cast<double>(j);
    worst = std::max(worst, std::fabs(rl[j] - binom));
  }
  report.checks.push_back({"weights_rl_binomial", worst <= 1e-10, worst, 1e-10});

  const WeightTable decay = cq_weights({KernelBranch::Decay, alpha, h}, n);
  Eigen::VectorXd partial(n + 1);
  double sum = 0.0;
  for (Eigen::Index j = 0; j <= n; ++j) partial[j] = (sum += decay[j]);
  report.checks.push_back({"weights_decay_mass_upper", partial.maxCoeff() <= 1.0 + 1e-8,
                           partial.maxCoeff(), 1.0 + 1e-8});
  const double mass = 1.0 - mittag_leffler(alpha, -std::pow(static_cast<double>(n) * h, alpha));
  const double gap = std::fabs(partial[n] - mass);
  report.checks.push_back({"weights_decay_mass_limit", gap <= 0.5 * h, gap, 0.5 * h});
}

ProblemSpec logistic(double alpha, double u0, double h, double t_max) {
  ProblemSpec spec;
  spec.alpha = alpha;
  spec.u0 = u0;
  spec.step = h;
  spec.t_max = t_max;
  return spec;
}

}  // namespace

VerifyReport run_validation(std::string_view grid) {
  const bool full = grid == "full";
  if (!full && grid != "quick") throw DomainError("unknown validation grid");
  VerifyReport report;
  report.classification = std::string(grid);

  check_ml(report, {0.3, 0.5, 0.7, 0.9},
           full ? std::vector<double>{-50, -30, -20, -12, -8, -5, -3, -1, -0.25, 0.5, 2, 5}
                : std::vector<double>{-50, -8, -1, 0.5, 2});
  check_weights(report);

  // Equilibrium u = 1.
  {
    const Trajectory traj = solve(logistic(0.5, 1.0, 1e-3, full ? 5.0 : 1.0));
    const double drift = (traj.values.array() - 1.0).abs().maxCoeff();
    report.checks.push_back({"equilibrium_drift", drift <= 1e-9, drift, 1e-9});
  }

  // Global case.
  const std::vector<double> global_alphas = full ? std::vector<double>{0.3, 0.5, 0.7} : std::vector<double>{0.5};
  const std::vector<double> global_u0 = full ? std::vector<double>{0.1, 0.5, 0.9} : std::vector<double>{0.5};
  for (double alpha : global_alphas) {
    for (double u0 : global_u0) {
      const ProblemSpec spec = logistic(alpha, u0, 1e-3, full ? 20.0 : 5.0);
      const Trajectory traj = solve(spec);
      merge(report, tag("global", alpha, u0), verify_run(spec, traj));

      const ProblemSpec short_spec = logistic(alpha, u0, 1e-3, 2.0);
      const Trajectory a = solve(short_spec);
      const Trajectory b = oracle::pece_solve(short_spec);
      const double gap = (a.values - b.values).cwiseAbs().maxCoeff();
      const double bound = 5.0 * std::pow(spec.step, alpha);
      report.checks.push_back({tag("dual_method", alpha, u0), gap <= bound, gap, bound});
    }
  }

  // Caputo residual of the reference run.
  {
    const Trajectory traj = solve(logistic(0.5, 0.5, 1e-3, 2.0));
    const double worst = oracle::caputo_residual(traj, 0.5).cwiseAbs().maxCoeff();
    const double bound = kResidualConstant * std::sqrt(1e-3);
    report.checks.push_back({"caputo_residual", worst <= bound, worst, bound});
  }

  // Blow-up case.
  const std::vector<double> blow_alphas = full ? std::vector<double>{0.3, 0.5, 0.7} : std::vector<double>{0.5};
  const std::vector<double> blow_u0 = full ? std::vector<double>{1.5, 2.0, 3.0, 5.0} : std::vector<double>{2.0};
  for (double alpha : blow_alphas) {
    for (double u0 : blow_u0) {
      // Step fine enough to resolve the blow-up in a few hundred steps.
      const BoundBracket bracket = blowup_bracket(alpha, u0);
      const ProblemSpec spec = logistic(alpha, u0, std::min(1e-4, bracket.lower / 100.0), 2.0 * bracket.upper);
      const Trajectory traj = solve(spec);
      merge(report, tag("blowup", alpha, u0), verify_run(spec, traj));

      const ProblemSpec& fine = spec;
      SolverOptions corrected;
      corrected.picard = true;
      const Trajectory mine = solve(fine, corrected);
      const Trajectory other = oracle::pece_solve(fine);
      double rel = std::numeric_limits<double>::infinity();
      if (mine.blew_up() && other.blew_up()) {
        const double t1 = mine.times[mine.status_index];
        const double t2 = other.times[other.status_index];
        rel = std::fabs(t1 - t2) / t2;
      }
      report.checks.push_back({tag("dual_method_blowup", alpha, u0), rel <= 0.1, rel, 0.1});
    }
  }
  return report;
}

}  // namespace fraclog
