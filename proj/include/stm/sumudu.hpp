#pragma once

#include "stm/rational.hpp"
#include "stm/series.hpp"

#include <span>
#include <string>
#include <vector>

namespace stm {

/// Truncated series in the Sumudu variable u. The transform maps x^k to
/// k! u^k, so on truncated polynomials the whole calculus reduces to exact
/// coefficient rules; no integral is evaluated here (the quadrature
/// cross-check lives in oracle.hpp).
class USeries {
public:
    explicit USeries(int trunc_degree);
    explicit USeries(std::vector<Rational> coeffs);

    int trunc_degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    const Rational& operator[](int k) const { return coeffs_[static_cast<std::size_t>(k)]; }

    friend bool operator==(const USeries&, const USeries&) = default;

private:
    std::vector<Rational> coeffs_;
};

/// Exactly the function sign * u^power.
struct UMonomialMultiplier {
    int sign = 1;  // -1 or +1
    int power = 0;

    UMonomialMultiplier negated() const { return {-sign, power}; }
    friend bool operator==(const UMonomialMultiplier&, const UMonomialMultiplier&) = default;
};

/// S[g]: b_k = k! * a_k, same truncation degree.
USeries forward(const PowerSeries& g);
/// S^-1[G]: a_k = b_k / k!.
PowerSeries inverse(const USeries& g);

/// Transform image of the n-th derivative:
/// (1/u^n) [G(u) - sum_{k<n} ics[k] u^k], returned at degree N-n.
/// The division by u^n is a coefficient shift, so the first n bracket
/// coefficients must vanish; a nonzero one means the initial conditions are
/// inconsistent with G and raises std::domain_error.
USeries nth_derivative_image(const USeries& g, std::span<const Rational> ics, int n);

/// The variational multiplier -u^n for an order-n problem.
UMonomialMultiplier lagrange_multiplier(int n);

/// Multiplies by sign * u^power: a signed coefficient shift, terms past N dropped.
USeries apply_multiplier(const USeries& g, UMonomialMultiplier m);

std::string to_text(const USeries& g);

}  // namespace stm
