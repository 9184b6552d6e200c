#include "stm/solver.hpp"

#include "stm/sumudu.hpp"

#include <cmath>
#include <stdexcept>

namespace stm {

std::vector<double> grid_points(const Grid& g) {
    if (!(g.step > 0.0)) throw std::invalid_argument("grid: step must be positive");
    if (!(g.start < g.end)) throw std::invalid_argument("grid: start must precede end");
    // Tiny slack so an endpoint an ulp short of an exact multiple still lands.
    const auto count =
        static_cast<std::size_t>(std::floor((g.end - g.start) / g.step * (1.0 + 1e-12) + 1e-12)) + 1;
    std::vector<double> xs(count);
    for (std::size_t i = 0; i < count; ++i) xs[i] = g.start + static_cast<double>(i) * g.step;
    return xs;
}

PowerSeries initial_approximation(std::span<const Rational> ics, int trunc_degree) {
    if (ics.empty()) throw std::invalid_argument("initial approximation: no initial conditions");
    std::vector<Rational> c(static_cast<std::size_t>(trunc_degree) + 1, Rational(0));
    BigInt factorial = 1;
    for (std::size_t k = 0; k < ics.size(); ++k) {
        if (k > 0) factorial *= k;
        if (static_cast<int>(k) <= trunc_degree) c[k] = ics[k] / Rational(factorial);
    }
    return PowerSeries(std::move(c));
}

PowerSeries stm_step(const ProblemSpec& spec, const PowerSeries& y) {
    const int n = y.trunc_degree();
    if (n < spec.order)
        throw std::invalid_argument("stm step: truncation degree below the problem order");
    const PowerSeries y1 = initial_approximation(spec.ics, n);
    const USeries image = forward(eval_expr(spec.rhs, y));
    const USeries shifted = apply_multiplier(image, lagrange_multiplier(spec.order).negated());
    return add(y1, inverse(shifted));
}

PowerSeries paper_truncate(const PowerSeries& prev, const PowerSeries& next) {
    const std::optional<int> cut = lowest_new_degree(prev, next);
    if (!cut) return next;
    std::vector<Rational> c = next.coeffs();
    for (int k = *cut + 1; k <= next.trunc_degree(); ++k) c[static_cast<std::size_t>(k)] = Rational(0);
    return PowerSeries(std::move(c));
}

SolveResult solve(const ProblemSpec& spec, const SolveOptions& opts) {
    spec.validate();
    if (opts.max_iters < 1) throw std::invalid_argument("solve: need at least one iterate");
    if (opts.trunc_degree < spec.order)
        throw std::invalid_argument("solve: truncation degree must be >= problem order");

    SolveResult result;
    result.iterates.push_back(initial_approximation(spec.ics, opts.trunc_degree));
    while (static_cast<int>(result.iterates.size()) < opts.max_iters) {
        const PowerSeries& current = result.iterates.back();
        PowerSeries next = stm_step(spec, current);
        if (opts.mode == SolveMode::Paper) next = paper_truncate(current, next);
        if (next == current) {
            result.converged = true;
            result.fixed_point_at = static_cast<int>(result.iterates.size());
            result.iterates.push_back(std::move(next));
            break;
        }
        result.iterates.push_back(std::move(next));
    }

    const PowerSeries& final_iterate = result.iterates.back();
    result.residual_max = residual(spec, final_iterate, opts.grid).second;
    if (spec.exact) result.error_max = compare_exact(final_iterate, *spec.exact, opts.grid);
    return result;
}

std::pair<PowerSeries, double> residual(const ProblemSpec& spec, const PowerSeries& y,
                                        const Grid& grid) {
    PowerSeries lhs = y;
    for (int d = 0; d < spec.order; ++d) lhs = differentiate(lhs);
    const PowerSeries res = add(lhs, scale(eval_expr(spec.rhs, y), Rational(-1)));
    double max_abs = 0.0;
    for (double x : grid_points(grid)) max_abs = std::max(max_abs, std::fabs(evaluate(res, x)));
    return {res, max_abs};
}

double compare_exact(const PowerSeries& y, const ExactSolution& ex, const Grid& grid) {
    double max_abs = 0.0;
    for (double x : grid_points(grid))
        max_abs = std::max(max_abs, std::fabs(evaluate(y, x) - evaluate_exact(ex, x)));
    return max_abs;
}

}  // namespace stm
