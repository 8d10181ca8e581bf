#pragma once

#include <string_view>

#include "fraclog/analysis.hpp"

namespace fraclog {

/// Frozen regression constant: max |L1 Caputo residual| <= C sqrt(h) on the
/// (alpha = 0.5, u0 = 0.5, h = 1e-3, t_max = 2) logistic run.
inline constexpr double kResidualConstant = 3.7;

/// Invariant suite over a named grid ("quick" or "full"); one check per
/// invariant instance. Throws DomainError on an unknown grid name.
VerifyReport run_validation(std::string_view grid);

}  // namespace fraclog
