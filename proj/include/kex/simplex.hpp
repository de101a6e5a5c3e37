#pragma once

#include <vector>

#include "kex/model.hpp"

namespace kex {

// Solves the LP relaxation with the given bound overrides (used by the
// branch-and-bound tree to fix binaries without copying the model).
LpResult solve_lp_bounded(const IlpModel& model, const std::vector<double>& lb,
                          const std::vector<double>& ub);

}  // namespace kex
