#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Core>

#include "fraclog/quadrature.hpp"
#include "fraclog/special_functions.hpp"
#include "fraclog/types.hpp"

namespace fraclog {

/// Right-hand sides of the scalar problems D^alpha x = f(x), x(0) = x0.
///
///  - Logistic:        f(u) = -u (1 - u), marched as u = E_a(-t^a) u0 + Kdecay * u^2
///  - ShiftedLogistic: f(w) = w (1 + w),  marched as w = E_a(+t^a) w0 + Kgrowth * w^2
///  - Square:          f(w) = w^2,        marched as w = w0 + J^a w^2
///  - ShiftedSquare:   f(w) = (w + 1/2)^2, marched as w = w0 + J^a (w + 1/2)^2
enum class Nonlinearity { Logistic, ShiftedLogistic, Square, ShiftedSquare };

std::string_view to_string(Nonlinearity nl);
std::optional<Nonlinearity> parse_nonlinearity(std::string_view name);

/// Full right-hand side f(x).
double rhs(Nonlinearity nl, double x);
/// The part of f that is convolved against the branch kernel.
double forcing(Nonlinearity nl, double x);
KernelBranch kernel_branch(Nonlinearity nl);

struct ProblemSpec {
  double alpha = 0.5;
  double u0 = 0.5;
  Nonlinearity nonlinearity = Nonlinearity::Logistic;
  double step = 1e-3;
  double t_max = 10.0;
  double blowup_threshold = 1e10;

  /// Throws DomainError unless 0 < alpha < 1, u0 > 0, 0 < step <= t_max and
  /// blowup_threshold > max(1, u0).
  void validate() const;
  /// Number of steps n with n * step ~ t_max.
  Eigen::Index steps() const;
};

/// How the homogeneous term E_a(-/+ t_n^a) u0 is evaluated.
///
/// Discrete uses the quadrature's own image of that term, u0 (1 -/+ sum_{j<=n}
/// omega_j), which keeps u = 1 an exact fixed point of the scheme and u < 1
/// for u0 < 1. MittagLeffler evaluates the function afresh at every t_n.
enum class HomogeneousTerm { Discrete, MittagLeffler };

struct SolverOptions {
  /// Re-solve the implicit step x = H + omega_0 g(x) by fixed-point
  /// iteration instead of the (1 - omega_0)^-1 linearization.
  bool picard = false;
  double picard_tolerance = 1e-12;
  int picard_max_iterations = 25;
  HomogeneousTerm homogeneous = HomogeneousTerm::Discrete;
  MLAccuracy ml;
};

enum class RunStatus { Completed, BlewUp, AccuracyFailure };

std::string_view to_string(RunStatus status);

struct Trajectory {
  double step = 0.0;
  Eigen::VectorXd times;
  Eigen::VectorXd values;
  RunStatus status = RunStatus::Completed;
  /// Completed: last index. BlewUp: index of the threshold crossing (recorded).
  /// AccuracyFailure: index of the failed step.
  Eigen::Index status_index = -1;
  std::string message;

  Eigen::Index size() const { return values.size(); }
  bool blew_up() const { return status == RunStatus::BlewUp; }
};

struct BlowUpReport {
  double t_detected = 0.0;
  Eigen::Index index = 0;
  std::optional<BoundBracket> bracket;
  std::optional<double> refined_T;
  std::optional<double> coeff_est;
};

/// March the convolution-quadrature recurrence
///   x_n = (1 - omega_0)^-1 [ hom_n + sum_{j<n} omega_{n-j} g(x_j) ]
/// until t_max or a confirmed threshold crossing.
Trajectory solve(const ProblemSpec& spec, const SolverOptions& opts = {});

/// First index k with values[k] > threshold and values strictly increasing
/// over [k-3, k].
std::optional<BlowUpReport> detect_blowup(const Trajectory& traj, double threshold);

/// Strictly increasing over [max(0, k - window), k].
bool increasing_before(const Eigen::Ref<const Eigen::VectorXd>& values, Eigen::Index k,
                       int window = 3);

namespace detail {

/// Shared termination bookkeeping for the marching schemes.
class StepRecorder {
 public:
  explicit StepRecorder(const ProblemSpec& spec);

  /// Record x_k for the next k. Returns false when marching must stop.
  bool push(double value);
  /// Mark the next step as failed without recording a value.
  void fail(std::string message);
  Eigen::Index recorded() const { return count_; }
  double value(Eigen::Index k) const { return values_[k]; }
  Trajectory finish() &&;

 private:
  double step_;
  double threshold_;
  Eigen::VectorXd values_;
  Eigen::Index count_ = 0;
  bool stopped_ = false;
  RunStatus status_ = RunStatus::Completed;
  Eigen::Index status_index_ = -1;
  std::string message_;
};

}  // namespace detail
}  // namespace fraclog
