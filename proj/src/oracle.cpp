#include "stm/oracle.hpp"

#include "stm/solver.hpp"

#include <cmath>
#include <stdexcept>

namespace stm {

namespace {

// Laguerre recurrence: returns L_order(x) and L_{order-1}(x).
std::pair<double, double> laguerre_pair(int order, double x) {
    double prev = 1.0;  // L_0
    double cur = 1.0 - x;  // L_1
    if (order == 0) return {prev, 0.0};
    for (int j = 1; j < order; ++j) {
        const double next = ((2.0 * j + 1.0 - x) * cur - j * prev) / (j + 1.0);
        prev = cur;
        cur = next;
    }
    return {cur, prev};
}

}  // namespace

QuadratureRule laguerre_rule(int order) {
    if (order < 1 || order > 64)
        throw std::invalid_argument("laguerre rule: order must lie in [1, 64]");
    QuadratureRule rule;
    rule.order = order;
    rule.nodes.resize(static_cast<std::size_t>(order));
    rule.weights.resize(static_cast<std::size_t>(order));

    double z = 0.0;
    for (int i = 0; i < order; ++i) {
        // Stroud-Secrest style initial guesses, then Newton.
        if (i == 0) {
            z = 3.0 / (1.0 + 2.4 * order);
        } else if (i == 1) {
            z += 15.0 / (1.0 + 2.5 * order);
        } else {
            const double ai = i - 1;
            z += (1.0 + 2.55 * ai) / (1.9 * ai) * (z - rule.nodes[static_cast<std::size_t>(i - 2)]);
        }
        double ln = 0.0, lnm1 = 0.0;
        for (int it = 0; it < 100; ++it) {
            const auto [l, lp] = laguerre_pair(order, z);
            ln = l;
            lnm1 = lp;
            const double deriv = order * (ln - lnm1) / z;
            const double dz = ln / deriv;
            z -= dz;
            if (std::fabs(dz) <= 1e-14 * std::max(1.0, std::fabs(z))) {
                const auto [l2, lp2] = laguerre_pair(order, z);
                ln = l2;
                lnm1 = lp2;
                break;
            }
        }
        rule.nodes[static_cast<std::size_t>(i)] = z;
        rule.weights[static_cast<std::size_t>(i)] =
            z / (static_cast<double>(order) * order * lnm1 * lnm1);
    }
    return rule;
}

double numeric_sumudu(const PowerSeries& g, double u, const QuadratureRule& rule) {
    if (2 * rule.order <= g.trunc_degree())
        throw std::invalid_argument("numeric sumudu: rule order too low for this polynomial");
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        acc += rule.weights[i] * evaluate(g, u * rule.nodes[i]);
    return acc;
}

PowerSeries picard_step(const ProblemSpec& spec, const PowerSeries& y) {
    const int n = y.trunc_degree();
    if (n < spec.order)
        throw std::invalid_argument("picard step: truncation degree below the problem order");
    const PowerSeries y1 = initial_approximation(spec.ics, n);
    return add(y1, integrate(eval_expr(spec.rhs, y), spec.order));
}

}  // namespace stm
