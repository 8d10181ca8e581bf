#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fraclog/solver.hpp"

namespace fraclog {

/// CSV with header `t,u`, one row per step in 17-significant-digit decimal,
/// `#`-prefixed metadata lines before the header and a status footer:
/// `# blowup_at=<t>` or `# accuracy_failure_at=<t>`.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj,
                          const std::vector<std::string>& metadata = {});

/// Inverse of write_trajectory_csv. Throws std::runtime_error on malformed input.
Trajectory read_trajectory_csv(std::istream& in);

}  // namespace fraclog
