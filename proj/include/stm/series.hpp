#pragma once

#include "stm/rational.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace stm {

/// Dense truncated power series in x over exact rationals. coeffs()[k] is the
/// coefficient of x^k and the vector always has trunc_degree()+1 entries;
/// arithmetic works modulo x^(N+1). Values are immutable after construction,
/// so series can be shared freely across threads.
class PowerSeries {
public:
    /// Zero series with the given truncation degree (>= 0).
    explicit PowerSeries(int trunc_degree);
    /// Takes the coefficient vector as-is; truncation degree is size-1.
    explicit PowerSeries(std::vector<Rational> coeffs);

    static PowerSeries constant(Rational value, int trunc_degree);
    /// c * x^degree; degrees beyond the truncation yield the zero series.
    static PowerSeries monomial(int degree, Rational coeff, int trunc_degree);

    int trunc_degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    const Rational& operator[](int k) const { return coeffs_[static_cast<std::size_t>(k)]; }

    bool is_zero() const;
    /// Degree of the last nonzero coefficient, or -1 for the zero series.
    int last_nonzero_degree() const;

    friend bool operator==(const PowerSeries&, const PowerSeries&) = default;

private:
    std::vector<Rational> coeffs_;
};

/// Elementwise sum. Both operands must share a truncation degree.
PowerSeries add(const PowerSeries& a, const PowerSeries& b);
/// Truncated Cauchy product; terms of degree > N are discarded.
PowerSeries multiply(const PowerSeries& a, const PowerSeries& b);
/// a^p for p >= 1 (square-and-multiply over truncated products).
PowerSeries pow_int(const PowerSeries& a, int p);
/// Termwise derivative; keeps the truncation degree, top coefficient zero.
PowerSeries differentiate(const PowerSeries& a);
/// n-fold antiderivative with zero integration constants:
/// a_k -> a_k * k!/(k+n)!; terms pushed past N are discarded.
PowerSeries integrate(const PowerSeries& a, int times);
/// Substitutes x -> q*x (a_k -> a_k q^k) for 0 < q <= 1.
PowerSeries delay_compose(const PowerSeries& a, const Rational& q);
/// Scalar multiple.
PowerSeries scale(const PowerSeries& a, const Rational& c);
/// Copy at a new truncation degree, dropping or zero-extending coefficients.
PowerSeries retruncate(const PowerSeries& a, int trunc_degree);

/// Smallest degree k past prev's last nonzero term with next.coeffs[k] != 0.
std::optional<int> lowest_new_degree(const PowerSeries& prev, const PowerSeries& next);

/// Horner evaluation after converting coefficients to double.
double evaluate(const PowerSeries& a, double x);

/// Canonical text: nonzero terms in ascending degree, e.g.
/// "1 + 1 x + -1 x^3 + 1/12 x^4"; the zero series renders as "0".
std::string to_text(const PowerSeries& a);
/// Inverse of to_text at a caller-chosen truncation degree.
/// Throws std::invalid_argument on malformed text or degrees beyond N.
PowerSeries series_from_text(std::string_view text, int trunc_degree);

}  // namespace stm
