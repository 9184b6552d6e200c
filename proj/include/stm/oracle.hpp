#pragma once

#include "stm/model.hpp"
#include "stm/series.hpp"

#include <vector>

namespace stm {

/// Gauss-Laguerre rule for the weight e^-x on [0, inf): integrates
/// e^-x * x^k exactly (to rounding) for k < 2*order.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    int order = 0;
};

/// Nodes via Newton iteration on the Laguerre polynomial; order <= 64.
QuadratureRule laguerre_rule(int order);

/// Quadrature evaluation of integral_0^inf g(u x) e^-x dx, the integral
/// definition of the transform. Certifies the coefficient rule used by
/// forward(); never feeds the solver.
double numeric_sumudu(const PowerSeries& g, double u, const QuadratureRule& rule);

/// Time-domain step y1 + n-fold-integral of rhs(y), computed without the
/// transform. Must agree with stm_step bit-exactly on every input; the
/// solver tests assert that equality.
PowerSeries picard_step(const ProblemSpec& spec, const PowerSeries& y);

}  // namespace stm
