#pragma once

#include "stm/model.hpp"
#include "stm/solver.hpp"

#include <optional>
#include <string>

namespace stm {

/// CSV plot data for the final iterate: header "x,approx,exact,abs_err"
/// (exact/abs_err omitted when no exact solution is given), one row per grid
/// point, floats printed with 17 significant digits. Output is fully
/// deterministic: identical inputs give identical bytes.
std::string emit_csv(const SolveResult& result, const std::optional<ExactSolution>& exact,
                     const Grid& grid);

/// JSON variant: iterate coefficient lists as exact rational strings
/// (e.g. "7/60") plus convergence metadata and the evaluation grid.
std::string emit_json(const SolveResult& result, const std::optional<ExactSolution>& exact,
                      const Grid& grid);

}  // namespace stm
