#pragma once

#include <Eigen/Core>

#include "fraclog/solver.hpp"

namespace fraclog::oracle {

/// Fractional Adams predictor-corrector (product rectangle predictor,
/// product trapezoid corrector, one correction per step) on the Volterra
/// form x = x0 + J^a f(x). Uses only Gamma and power kernels, no
/// Mittag-Leffler functions or quadrature weights. Termination as solve().
Trajectory pece_solve(const ProblemSpec& spec);

/// L1-scheme Caputo derivative of the trajectory at t_1..t_N minus f(x_n).
/// Requires a completed trajectory.
Eigen::VectorXd caputo_residual(const Trajectory& traj, double alpha,
                                Nonlinearity nl = Nonlinearity::Logistic);

/// Power series of E_{a,b}(z) in MPFR arithmetic with `digits` significant
/// digits plus enough guard digits to absorb the alternating-series
/// cancellation, rounded to double. Requires |z| <= 10 and digits >= 50.
double ml_series_highprec(double alpha, double beta, double z, int digits = 50);

/// E_a(z) (beta == 1) or E_{a,a}(z) (beta == alpha) for z < 0 and 0 < a < 1
/// from the Laplace-integral representation of the completely monotone
///   E_a(-x) = int_0^inf exp(-r x) K_a(r) dr,
///   K_a(r)  = sin(a pi) r^(a-1) / (pi (r^(2a) + 2 r^a cos(a pi) + 1)),
/// with E_{a,a}(-x) = a int_0^inf r exp(-r x) K_a(r) dr, by double-exponential
/// quadrature. Independent of any series or asymptotic expansion.
double ml_laplace_integral(double alpha, double beta, double z);

}  // namespace fraclog::oracle
