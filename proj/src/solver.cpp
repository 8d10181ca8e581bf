#include "fraclog/solver.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "fraclog/errors.hpp"

namespace fraclog {

std::string_view to_string(Nonlinearity nl) {
  switch (nl) {
    case Nonlinearity::Logistic: return "logistic";
    case Nonlinearity::ShiftedLogistic: return "shifted-logistic";
    case Nonlinearity::Square: return "square";
    case Nonlinearity::ShiftedSquare: return "shifted-square";
  }
  return "unknown";
}

std::optional<Nonlinearity> parse_nonlinearity(std::string_view name) {
  for (auto nl : {Nonlinearity::Logistic, Nonlinearity::ShiftedLogistic, Nonlinearity::Square,
                  Nonlinearity::ShiftedSquare}) {
    if (name == to_string(nl)) return nl;
  }
  return std::nullopt;
}

std::string_view to_string(RunStatus status) {
  switch (status) {
    case RunStatus::Completed: return "completed";
    case RunStatus::BlewUp: return "blew-up";
    case RunStatus::AccuracyFailure: return "accuracy-failure";
  }
  return "unknown";
}

double rhs(Nonlinearity nl, double x) {
  switch (nl) {
    case Nonlinearity::Logistic: return -x * (1.0 - x);
    case Nonlinearity::ShiftedLogistic: return x * (1.0 + x);
    case Nonlinearity::Square: return x * x;
    case Nonlinearity::ShiftedSquare: return (x + 0.5) * (x + 0.5);
  }
  return 0.0;
}

double forcing(Nonlinearity nl, double x) {
  if (nl == Nonlinearity::ShiftedSquare) return (x + 0.5) * (x + 0.5);
  return x * x;
}

KernelBranch kernel_branch(Nonlinearity nl) {
  switch (nl) {
    case Nonlinearity::Logistic: return KernelBranch::Decay;
    case Nonlinearity::ShiftedLogistic: return KernelBranch::Growth;
    default: return KernelBranch::RiemannLiouville;
  }
}

void ProblemSpec::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1), got " + std::to_string(alpha));
  if (!(u0 > 0.0) || !std::isfinite(u0)) throw DomainError("u0 must be positive, got " + std::to_string(u0));
  if (!(step > 0.0)) throw DomainError("step must be positive");
  if (!(t_max >= step) || !std::isfinite(t_max)) throw DomainError("t_max must be >= step");
  if (!(blowup_threshold > std::max(1.0, u0))) {
    throw DomainError("blowup_threshold must exceed max(1, u0)");
  }
}

Eigen::Index ProblemSpec::steps() const {
  return static_cast<Eigen::Index>(std::llround(t_max / step));
}

bool increasing_before(const Eigen::Ref<const Eigen::VectorXd>& values, Eigen::Index k, int window) {
  for (Eigen::Index i = std::max<Eigen::Index>(0, k - window); i < k; ++i) {
    if (!(values[i] < values[i + 1])) return false;
  }
  return true;
}

std::optional<BlowUpReport> detect_blowup(const Trajectory& traj, double threshold) {
  for (Eigen::Index k = 0; k < traj.size(); ++k) {
    if (traj.values[k] > threshold && increasing_before(traj.values, k)) {
      BlowUpReport report;
      report.index = k;
      report.t_detected = traj.times[k];
      return report;
    }
  }
  return std::nullopt;
}

namespace detail {

StepRecorder::StepRecorder(const ProblemSpec& spec)
    : step_(spec.step), threshold_(spec.blowup_threshold), values_(spec.steps() + 1) {}

bool StepRecorder::push(double value) {
  if (stopped_) return false;
  const Eigen::Index k = count_;
  if (std::isnan(value)) {
    fail("non-finite value at step " + std::to_string(k));
    return false;
  }
  // Overflow is a blow-up, not a crash; keep the recorded value finite.
  if (value == std::numeric_limits<double>::infinity()) value = std::numeric_limits<double>::max();
  values_[k] = value;
  ++count_;
  if (value > threshold_) {
    stopped_ = true;
    status_index_ = k;
    if (increasing_before(values_.head(count_), k)) {
      status_ = RunStatus::BlewUp;
    } else {
      status_ = RunStatus::AccuracyFailure;
      message_ = "threshold crossed without monotone growth at step " + std::to_string(k);
    }
    return false;
  }
  if (count_ == values_.size()) {
    stopped_ = true;
    status_index_ = k;
    return false;
  }
  return true;
}

void StepRecorder::fail(std::string message) {
  stopped_ = true;
  status_ = RunStatus::AccuracyFailure;
  status_index_ = count_;
  message_ = std::move(message);
}

Trajectory StepRecorder::finish() && {
  Trajectory traj;
  traj.step = step_;
  traj.values = values_.head(count_);
  traj.times.resize(count_);
  for (Eigen::Index k = 0; k < count_; ++k) traj.times[k] = step_ * static_cast<double>(k);
  traj.status = status_;
  traj.status_index = status_index_;
  traj.message = std::move(message_);
  return traj;
}

}  // namespace detail

namespace {

double homogeneous_term(const ProblemSpec& spec, const SolverOptions& opts, double t,
                        double weight_sum) {
  switch (spec.nonlinearity) {
    case Nonlinearity::Logistic:
      if (opts.homogeneous == HomogeneousTerm::Discrete) return spec.u0 * (1.0 - weight_sum);
      return spec.u0 * mittag_leffler(spec.alpha, -std::pow(t, spec.alpha), opts.ml);
    case Nonlinearity::ShiftedLogistic:
      if (opts.homogeneous == HomogeneousTerm::Discrete) return spec.u0 * (1.0 + weight_sum);
      return spec.u0 * mittag_leffler(spec.alpha, std::pow(t, spec.alpha), opts.ml);
    default:
      return spec.u0;
  }
}

}  // namespace

Trajectory solve(const ProblemSpec& spec, const SolverOptions& opts) {
  spec.validate();
  const Eigen::Index n_steps = spec.steps();
  const Nonlinearity nl = spec.nonlinearity;

  detail::StepRecorder recorder(spec);
  recorder.push(spec.u0);

  WeightTable table;
  try {
    table = cq_weights({kernel_branch(nl), spec.alpha, spec.step}, n_steps);
  } catch (const ContourError& e) {
    recorder.fail(e.what());
    return std::move(recorder).finish();
  }
  const Eigen::VectorXd& w = table.weights;
  const double w0 = w[0];

  // g(x_j) stored back to front so the history sum is one contiguous dot
  // product: slot n_steps - j holds g(x_j).
  Eigen::VectorXd forcing_rev(n_steps + 1);
  forcing_rev[n_steps] = forcing(nl, spec.u0);

  long double weight_sum = w0;
  for (Eigen::Index n = 1; n <= n_steps; ++n) {
    weight_sum += w[n];
    const double t = spec.step * static_cast<double>(n);
    double hom = 0.0;
    try {
      hom = homogeneous_term(spec, opts, t, static_cast<double>(weight_sum));
    } catch (const AccuracyError& e) {
      recorder.fail(e.what());
      break;
    }
    const double history = w.segment(1, n).dot(forcing_rev.segment(n_steps - n + 1, n));
    const double known = hom + history;

    double x = known / (1.0 - w0);
    if (opts.picard && std::isfinite(x)) {
      for (int it = 0; it < opts.picard_max_iterations; ++it) {
        const double next = known + w0 * forcing(nl, x);
        const bool converged = std::fabs(next - x) <= opts.picard_tolerance * std::max(1.0, std::fabs(next));
        x = next;
        if (converged || !(x <= spec.blowup_threshold)) break;
      }
    }
    if (!recorder.push(x)) break;
    forcing_rev[n_steps - n] = forcing(nl, recorder.value(n));
  }
  return std::move(recorder).finish();
}

}  // namespace fraclog
