#pragma once

#include "stm/rational.hpp"
#include "stm/series.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace stm {

enum class ExprKind { Const, Monomial, Delayed, Sum, Product };

/// Expression tree for the right-hand side of a canonicalized equation
/// y^(n)(x) = rhs(x, y). Node kinds:
///   Const(c)              rational constant
///   Monomial(m)           the coefficient x^m
///   Delayed(d, q, p)      (d^d/dx^d [y(q x)])^p with 0 < q <= 1, p >= 1
///   Sum / Product         >= 2 children each
///
/// A delayed derivative means "substitute the delay first, then
/// differentiate": y'(qx) stands for d/dx[y(qx)], so the chain-rule factor q
/// is part of the term's value.
class Expr {
public:
    static Expr constant(Rational value);
    static Expr monomial(int power);
    static Expr delayed(int deriv_order, Rational delay, int power);
    static Expr sum(std::vector<Expr> children);
    static Expr product(std::vector<Expr> children);

    ExprKind kind() const { return kind_; }
    const Rational& value() const { return value_; }        // Const
    const Rational& delay() const { return value_; }        // Delayed
    int power() const { return power_; }                    // Monomial / Delayed
    int deriv_order() const { return deriv_order_; }        // Delayed
    const std::vector<Expr>& children() const { return children_; }

    friend bool operator==(const Expr&, const Expr&) = default;

private:
    Expr() = default;

    ExprKind kind_ = ExprKind::Const;
    Rational value_;
    int power_ = 0;
    int deriv_order_ = 0;
    std::vector<Expr> children_;
};

/// Largest derivative order among Delayed nodes; -1 when none appear.
int max_deriv_order(const Expr& e);
bool contains_delayed(const Expr& e);

/// Evaluates the tree over truncated series at y's truncation degree.
PowerSeries eval_expr(const Expr& e, const PowerSeries& y);

/// Closed-form reference solution: either a polynomial or exp of a
/// polynomial with zero constant term (so the Maclaurin coefficients stay
/// rational).
struct ExactSolution {
    enum class Kind { Polynomial, ExpOfPolynomial };

    static ExactSolution polynomial(PowerSeries p);
    static ExactSolution exp_of_polynomial(std::vector<Rational> inner);

    Kind kind = Kind::Polynomial;
    PowerSeries poly{0};                // Polynomial payload (natural degree)
    std::vector<Rational> exp_inner;    // ExpOfPolynomial payload, inner[0] == 0

    friend bool operator==(const ExactSolution&, const ExactSolution&) = default;
};

PowerSeries taylor_of_exact(const ExactSolution& ex, int trunc_degree);
double evaluate_exact(const ExactSolution& ex, double x);

/// Canonical problem y^(n)(x) = rhs, y^(k)(0) = ics[k] for k < n, on
/// domain [0, T].
struct ProblemSpec {
    int order = 1;
    Expr rhs = Expr::constant(Rational(0));
    std::vector<Rational> ics;
    std::pair<Rational, Rational> domain{Rational(0), Rational(1)};
    std::optional<ExactSolution> exact;

    void validate() const;  // throws std::invalid_argument

    friend bool operator==(const ProblemSpec&, const ProblemSpec&) = default;
};

/// First-order integro-differential problem
/// y'(x) = forcing(x) + integral_0^x kernel(y, t) dt, y(0) = ics[0].
/// The kernel may reference y only through undifferentiated delayed terms.
struct VideSpec {
    Expr forcing = Expr::constant(Rational(0));
    Expr kernel = Expr::constant(Rational(0));
    std::vector<Rational> ics;
    std::pair<Rational, Rational> domain{Rational(0), Rational(1)};
    std::optional<ExactSolution> exact;

    void validate() const;

    friend bool operator==(const VideSpec&, const VideSpec&) = default;
};

/// Differentiates the integro-differential equation once, turning it into a
/// second-order delay problem: rhs = forcing'(x) + kernel(y, x), with the
/// derived initial condition y'(0) = forcing(0) (the integral vanishes at 0).
/// The truncation degree bounds the polynomial expansion of the forcing.
ProblemSpec vide_reduce(const VideSpec& v, int trunc_degree);

}  // namespace stm
