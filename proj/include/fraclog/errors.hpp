#pragma once

#include <stdexcept>

namespace fraclog {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A series or expansion could not certify the requested accuracy.
class AccuracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Laplace symbol evaluated at (or numerically on top of) its pole.
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// FFT contour cannot deliver the requested weight accuracy.
class ContourError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Blow-up profile fit rejected (too few points or poor residual).
class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fraclog
