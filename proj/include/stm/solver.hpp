#pragma once

#include "stm/model.hpp"
#include "stm/series.hpp"

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace stm {

enum class SolveMode {
    Full,   // iterate at the fixed truncation degree, keep every term
    Paper,  // after each step keep exactly one new term beyond the previous iterate
};

struct Grid {
    double start = 0.0;
    double end = 1.0;
    double step = 0.01;
};

/// Evaluation points start, start+step, ..., through end (inclusive up to
/// rounding): floor((end-start)/step)+1 points in exact arithmetic.
std::vector<double> grid_points(const Grid& g);

struct SolveOptions {
    SolveMode mode = SolveMode::Full;
    int max_iters = 16;     // total iterate count including the initial approximation
    int trunc_degree = 16;  // must be >= problem order
    Grid grid;
};

struct SolveResult {
    std::vector<PowerSeries> iterates;  // iterates[0] is the initial approximation
    bool converged = false;
    std::optional<int> fixed_point_at;  // 1-based index of the first repeated iterate
    double residual_max = 0.0;
    std::optional<double> error_max;    // only when the problem carries an exact solution
};

/// Taylor polynomial built from the initial conditions alone:
/// sum_k ics[k] x^k / k!, truncated at N.
PowerSeries initial_approximation(std::span<const Rational> ics, int trunc_degree);

/// One transform-domain iteration:
/// y1 + S^-1[ u^n * S[ rhs(y) ] ], executed through the Sumudu route.
PowerSeries stm_step(const ProblemSpec& spec, const PowerSeries& y);

/// Zeroes every coefficient above the lowest degree that is new relative to
/// prev; next is returned unchanged when no new degree exists.
PowerSeries paper_truncate(const PowerSeries& prev, const PowerSeries& next);

/// Runs the iteration until a fixed point, the iterate budget, or (in Paper
/// mode) the degree budget. Non-convergence is reported, never thrown.
SolveResult solve(const ProblemSpec& spec, const SolveOptions& opts);

/// Equation residual y^(n) - rhs(y) as a series, plus its max |value| on the
/// grid.
std::pair<PowerSeries, double> residual(const ProblemSpec& spec, const PowerSeries& y,
                                        const Grid& grid);

/// Max |evaluate(y, x) - exact(x)| over the grid.
double compare_exact(const PowerSeries& y, const ExactSolution& ex, const Grid& grid);

}  // namespace stm
