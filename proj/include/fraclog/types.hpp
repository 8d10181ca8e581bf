#pragma once

namespace fraclog {

/// Closed interval [lower, upper] of times, 0 < lower <= upper.
struct BoundBracket {
  double lower = 0.0;
  double upper = 0.0;

  bool contains(double t) const { return lower <= t && t <= upper; }
};

}  // namespace fraclog
