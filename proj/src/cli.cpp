#include "fraclog/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>

#include "fraclog/analysis.hpp"
#include "fraclog/errors.hpp"
#include "fraclog/quadrature.hpp"
#include "fraclog/solver.hpp"
#include "fraclog/special_functions.hpp"
#include "fraclog/trajectory_io.hpp"
#include "fraclog/validation.hpp"

namespace fraclog::cli {
namespace {

std::string fixed(double v, int decimals) {
  char buf[64];
  if (std::fabs(v) >= 1e10) {
    std::snprintf(buf, sizeof buf, "%.*e", decimals, v);
  } else {
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  }
  return buf;
}

std::string real17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int exit_code_for(const Trajectory& traj) {
  return traj.status == RunStatus::AccuracyFailure ? kAccuracyFailure : kOk;
}

struct SolveArgs {
  double alpha = 0.0;
  double u0 = 0.0;
  double h = 1e-3;
  double t_max = 10.0;
  double threshold = 1e10;
  std::string problem = "logistic";
  std::string homogeneous = "discrete";
  bool picard = false;
  std::string out_path;
};

int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  ProblemSpec spec;
  spec.alpha = a.alpha;
  spec.u0 = a.u0;
  spec.step = a.h;
  spec.t_max = a.t_max;
  spec.blowup_threshold = a.threshold;
  spec.nonlinearity = *parse_nonlinearity(a.problem);
  spec.validate();
  SolverOptions opts;
  opts.picard = a.picard;
  opts.homogeneous = a.homogeneous == "mittag-leffler" ? HomogeneousTerm::MittagLeffler
                                                        : HomogeneousTerm::Discrete;
  const Trajectory traj = solve(spec, opts);
  if (a.out_path.empty()) {
    write_trajectory_csv(out, traj);
  } else {
    std::ofstream file(a.out_path);
    if (!file) {
      err << "error: cannot open " << a.out_path << '\n';
      return kBadArguments;
    }
    write_trajectory_csv(file, traj);
  }
  if (traj.status == RunStatus::AccuracyFailure) err << "accuracy failure: " << traj.message << '\n';
  return exit_code_for(traj);
}

int cmd_figure(int figure, double h, const std::string& out_dir, std::ostream& out,
               std::ostream& err) {
  struct Series {
    double alpha, u0;
  };
  std::vector<Series> series;
  if (figure == 1) {
    series = {{0.5, 5.0}, {0.5, 3.0}, {0.5, 2.0}};
  } else {
    series = {{0.3, 5.0}, {0.5, 5.0}};
  }
  int code = kOk;
  bool first = true;
  for (const auto& s : series) {
    ProblemSpec spec;
    spec.alpha = s.alpha;
    spec.u0 = s.u0;
    spec.step = h;
    spec.t_max = 2.0 * blowup_bracket(s.alpha, s.u0).upper;
    const Trajectory traj = solve(spec);
    const std::string meta = "alpha=" + fixed(s.alpha, 1) + ", u0=" + fixed(s.u0, 0);
    if (out_dir.empty()) {
      if (!first) out << '\n';
      write_trajectory_csv(out, traj, {meta});
    } else {
      const auto path = std::filesystem::path(out_dir) /
                        ("figure" + std::to_string(figure) + "_alpha" + fixed(s.alpha, 1) +
                         "_u0" + fixed(s.u0, 0) + ".csv");
      std::ofstream file(path);
      if (!file) {
        err << "error: cannot open " << path << '\n';
        return kBadArguments;
      }
      write_trajectory_csv(file, traj, {meta});
      out << path.string() << '\n';
    }
    if (traj.status == RunStatus::AccuracyFailure) code = kAccuracyFailure;
    first = false;
  }
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Caputo fractional logistic equation: solver, bounds and verification", "fraclog"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "March the logistic problem and print the trajectory CSV");
  solve_cmd->add_option("--alpha", solve_args.alpha, "Fractional order in (0,1)")->required();
  solve_cmd->add_option("--u0", solve_args.u0, "Initial value (> 0)")->required();
  solve_cmd->add_option("--h", solve_args.h, "Step size");
  solve_cmd->add_option("--t-max", solve_args.t_max, "Time horizon");
  solve_cmd->add_option("--threshold", solve_args.threshold, "Blow-up threshold");
  solve_cmd->add_option("--problem", solve_args.problem, "Right-hand side")
      ->check(CLI::IsMember({"logistic", "shifted-logistic", "square", "shifted-square"}));
  solve_cmd->add_option("--homogeneous", solve_args.homogeneous, "Homogeneous term evaluation")
      ->check(CLI::IsMember({"discrete", "mittag-leffler"}));
  solve_cmd->add_flag("--picard", solve_args.picard, "Iterate the implicit step to a fixed point");
  solve_cmd->add_option("--out", solve_args.out_path, "Output path (default stdout)");

  int figure = 0;
  double figure_h = 1e-4;
  std::string figure_dir;
  auto* figure_cmd = app.add_subcommand("figure", "Emit the blow-up series of figure 1 or 2");
  figure_cmd->add_option("--figure", figure, "Figure id")->required()->check(CLI::IsMember({1, 2}));
  figure_cmd->add_option("--h", figure_h, "Step size");
  figure_cmd->add_option("--out-dir", figure_dir, "Write one CSV per series into this directory");

  double b_alpha = 0.0, b_u0 = 0.0, b_w0 = 0.0;
  auto* bracket_cmd = app.add_subcommand("bracket", "Blow-up time bounds");
  bracket_cmd->add_option("--alpha", b_alpha)->required();
  auto* b_u0_opt = bracket_cmd->add_option("--u0", b_u0, "Initial value of the logistic problem");
  auto* b_w0_opt = bracket_cmd->add_option("--w0", b_w0, "Initial value of the comparison problems");
  b_u0_opt->excludes(b_w0_opt);

  double e_alpha = 0.0, e_u0 = 0.0, e_c = 1.0, e_c1 = 0.0, e_t = 0.0, e_tmax = 0.0;
  int e_points = 101;
  auto* envelope_cmd = app.add_subcommand("envelope", "Decay envelope of the global solution");
  envelope_cmd->add_option("--alpha", e_alpha)->required();
  envelope_cmd->add_option("--u0", e_u0)->required();
  envelope_cmd->add_option("--c", e_c, "Constant of the E_a estimate");
  envelope_cmd->add_option("--c1", e_c1, "Constant of the E_{a,a} estimate (default 1/Gamma(alpha))");
  auto* e_t_opt = envelope_cmd->add_option("--t", e_t, "Single evaluation time");
  auto* e_tmax_opt = envelope_cmd->add_option("--t-max", e_tmax, "Tabulate on [0, t-max]");
  envelope_cmd->add_option("--points", e_points, "Grid points for --t-max")->check(CLI::PositiveNumber);
  e_t_opt->excludes(e_tmax_opt);

  std::string w_kernel = "decay";
  double w_alpha = 0.0, w_h = 1e-3;
  long w_n = 100;
  auto* weights_cmd = app.add_subcommand("weights", "Convolution quadrature weights as CSV");
  weights_cmd->add_option("--kernel", w_kernel)->check(CLI::IsMember({"decay", "growth", "rl"}));
  weights_cmd->add_option("--alpha", w_alpha)->required();
  weights_cmd->add_option("--h", w_h);
  weights_cmd->add_option("--n", w_n)->check(CLI::PositiveNumber);

  double m_alpha = 0.0, m_beta = 1.0, m_z = 0.0;
  auto* ml_cmd = app.add_subcommand("ml-eval", "Evaluate the Mittag-Leffler function");
  ml_cmd->add_option("--alpha", m_alpha)->required();
  ml_cmd->add_option("--beta", m_beta);
  ml_cmd->add_option("--z", m_z)->required();

  std::string v_grid = "quick";
  double v_alpha = 0.0, v_u0 = 0.0, v_h = 1e-3, v_tmax = 10.0;
  std::string v_problem = "logistic";
  bool v_picard = false;
  auto* validate_cmd = app.add_subcommand("validate", "Run the invariant suite or verify one run");
  validate_cmd->add_option("--grid", v_grid)->check(CLI::IsMember({"quick", "full"}));
  auto* v_alpha_opt = validate_cmd->add_option("--alpha", v_alpha, "Verify a single run instead");
  auto* v_u0_opt = validate_cmd->add_option("--u0", v_u0);
  validate_cmd->add_option("--h", v_h);
  validate_cmd->add_option("--t-max", v_tmax);
  validate_cmd->add_option("--problem", v_problem)
      ->check(CLI::IsMember({"logistic", "shifted-logistic", "square", "shifted-square"}));
  validate_cmd->add_flag("--picard", v_picard);
  v_alpha_opt->needs(v_u0_opt);
  v_u0_opt->needs(v_alpha_opt);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kBadArguments;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve_args, out, err);
    if (*figure_cmd) return cmd_figure(figure, figure_h, figure_dir, out, err);

    if (*bracket_cmd) {
      if (*b_w0_opt) {
        const auto br = comparison_brackets(b_alpha, b_w0);
        out << "square_lower=" << fixed(br.square.lower, 6) << " square_upper=" << fixed(br.square.upper, 6)
            << '\n'
            << "shifted_square_lower=" << fixed(br.shifted_square.lower, 6)
            << " shifted_square_upper=" << fixed(br.shifted_square.upper, 6) << '\n';
      } else if (*b_u0_opt) {
        const auto br = blowup_bracket(b_alpha, b_u0);
        out << "lower=" << fixed(br.lower, 6) << " upper=" << fixed(br.upper, 6) << '\n';
      } else {
        err << "error: bracket needs --u0 or --w0\n";
        return kBadArguments;
      }
      return kOk;
    }

    if (*envelope_cmd) {
      EnvelopeConstants consts = EnvelopeConstants::defaults(e_alpha);
      consts.c = e_c;
      if (e_c1 > 0.0) consts.c1 = e_c1;
      const double root = envelope_root(e_alpha, e_u0, consts);
      if (*e_tmax_opt) {
        out << "# T0=" << real17(root) << '\n' << "t,envelope\n";
        for (int i = 0; i < e_points; ++i) {
          const double t = e_points == 1 ? 0.0 : e_tmax * i / (e_points - 1);
          if (envelope_denominator(e_alpha, e_u0, consts, t) <= 0.0) break;
          out << real17(t) << ',' << real17(decay_envelope(e_alpha, e_u0, consts, t)) << '\n';
        }
      } else {
        out << "envelope=" << fixed(decay_envelope(e_alpha, e_u0, consts, e_t), 6)
            << " T0=" << fixed(root, 6) << '\n';
      }
      return kOk;
    }

    if (*weights_cmd) {
      KernelSpec spec;
      spec.branch = w_kernel == "decay"    ? KernelBranch::Decay
                    : w_kernel == "growth" ? KernelBranch::Growth
                                           : KernelBranch::RiemannLiouville;
      spec.alpha = w_alpha;
      spec.step = w_h;
      const WeightTable table = cq_weights(spec, w_n);
      out << "j,omega_j\n";
      for (Eigen::Index j = 0; j < table.size(); ++j) out << j << ',' << real17(table[j]) << '\n';
      return kOk;
    }

    if (*ml_cmd) {
      out << fixed(mittag_leffler_two(m_alpha, m_beta, m_z), 10) << '\n';
      return kOk;
    }

    if (*validate_cmd) {
      VerifyReport report;
      if (*v_alpha_opt) {
        ProblemSpec spec;
        spec.alpha = v_alpha;
        spec.u0 = v_u0;
        spec.step = v_h;
        spec.t_max = v_tmax;
        spec.nonlinearity = *parse_nonlinearity(v_problem);
        SolverOptions opts;
        opts.picard = v_picard;
        report = verify_run(spec, solve(spec, opts), opts);
        out << "classification=" << report.classification << '\n';
      } else {
        report = run_validation(v_grid);
      }
      out << report.to_text();
      out << "result=" << (report.passed() ? "pass" : "fail") << '\n';
      return report.passed() ? kOk : kValidationFailed;
    }
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kBadArguments;
  } catch (const ContourError& e) {
    err << "error: " << e.what() << '\n';
    return kAccuracyFailure;
  } catch (const AccuracyError& e) {
    err << "error: " << e.what() << '\n';
    return kAccuracyFailure;
  }
  return kBadArguments;
}

}  // namespace fraclog::cli
