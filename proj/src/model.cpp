#include "stm/model.hpp"

#include <cmath>
#include <stdexcept>

namespace stm {

Expr Expr::constant(Rational value) {
    Expr e;
    e.kind_ = ExprKind::Const;
    e.value_ = std::move(value);
    return e;
}

Expr Expr::monomial(int power) {
    if (power < 0) throw std::invalid_argument("expr: negative monomial power");
    Expr e;
    e.kind_ = ExprKind::Monomial;
    e.power_ = power;
    return e;
}

Expr Expr::delayed(int deriv_order, Rational delay, int power) {
    if (deriv_order < 0) throw std::invalid_argument("expr: negative derivative order");
    if (power < 1) throw std::invalid_argument("expr: delayed term power must be >= 1");
    if (delay.sign() <= 0 || Rational(1) < delay)
        throw std::invalid_argument("expr: delay ratio must lie in (0, 1]");
    Expr e;
    e.kind_ = ExprKind::Delayed;
    e.value_ = std::move(delay);
    e.deriv_order_ = deriv_order;
    e.power_ = power;
    return e;
}

Expr Expr::sum(std::vector<Expr> children) {
    if (children.size() < 2) throw std::invalid_argument("expr: sum needs >= 2 children");
    Expr e;
    e.kind_ = ExprKind::Sum;
    e.children_ = std::move(children);
    return e;
}

Expr Expr::product(std::vector<Expr> children) {
    if (children.size() < 2) throw std::invalid_argument("expr: product needs >= 2 children");
    Expr e;
    e.kind_ = ExprKind::Product;
    e.children_ = std::move(children);
    return e;
}

int max_deriv_order(const Expr& e) {
    switch (e.kind()) {
        case ExprKind::Const:
        case ExprKind::Monomial:
            return -1;
        case ExprKind::Delayed:
            return e.deriv_order();
        case ExprKind::Sum:
        case ExprKind::Product: {
            int m = -1;
            for (const Expr& c : e.children()) m = std::max(m, max_deriv_order(c));
            return m;
        }
    }
    return -1;
}

bool contains_delayed(const Expr& e) {
    switch (e.kind()) {
        case ExprKind::Const:
        case ExprKind::Monomial:
            return false;
        case ExprKind::Delayed:
            return true;
        case ExprKind::Sum:
        case ExprKind::Product:
            for (const Expr& c : e.children())
                if (contains_delayed(c)) return true;
            return false;
    }
    return false;
}

PowerSeries eval_expr(const Expr& e, const PowerSeries& y) {
    const int n = y.trunc_degree();
    switch (e.kind()) {
        case ExprKind::Const:
            return PowerSeries::constant(e.value(), n);
        case ExprKind::Monomial:
            return PowerSeries::monomial(e.power(), Rational(1), n);
        case ExprKind::Delayed: {
            PowerSeries s = delay_compose(y, e.delay());
            for (int d = 0; d < e.deriv_order(); ++d) s = differentiate(s);
            return e.power() == 1 ? s : pow_int(s, e.power());
        }
        case ExprKind::Sum: {
            PowerSeries acc = eval_expr(e.children()[0], y);
            for (std::size_t i = 1; i < e.children().size(); ++i)
                acc = add(acc, eval_expr(e.children()[i], y));
            return acc;
        }
        case ExprKind::Product: {
            PowerSeries acc = eval_expr(e.children()[0], y);
            for (std::size_t i = 1; i < e.children().size(); ++i)
                acc = multiply(acc, eval_expr(e.children()[i], y));
            return acc;
        }
    }
    throw std::logic_error("expr: unknown node kind");
}

ExactSolution ExactSolution::polynomial(PowerSeries p) {
    ExactSolution ex;
    ex.kind = Kind::Polynomial;
    ex.poly = retruncate(p, std::max(0, p.last_nonzero_degree()));
    return ex;
}

ExactSolution ExactSolution::exp_of_polynomial(std::vector<Rational> inner) {
    if (inner.empty()) inner.push_back(Rational(0));
    while (inner.size() > 1 && inner.back().is_zero()) inner.pop_back();
    if (!inner[0].is_zero())
        throw std::invalid_argument("exact: exp argument must vanish at 0");
    ExactSolution ex;
    ex.kind = Kind::ExpOfPolynomial;
    ex.exp_inner = std::move(inner);
    return ex;
}

PowerSeries taylor_of_exact(const ExactSolution& ex, int trunc_degree) {
    if (ex.kind == ExactSolution::Kind::Polynomial) return retruncate(ex.poly, trunc_degree);
    // exp(p) = sum p^i / i!; p has no constant term, so p^i starts at degree i.
    PowerSeries p(trunc_degree);
    {
        std::vector<Rational> c(static_cast<std::size_t>(trunc_degree) + 1, Rational(0));
        for (std::size_t k = 0; k < ex.exp_inner.size() && k < c.size(); ++k) c[k] = ex.exp_inner[k];
        p = PowerSeries(std::move(c));
    }
    PowerSeries acc = PowerSeries::constant(Rational(1), trunc_degree);
    PowerSeries term = acc;
    for (int i = 1; i <= trunc_degree; ++i) {
        term = scale(multiply(term, p), Rational(BigInt(1), BigInt(i)));
        if (term.is_zero()) break;
        acc = add(acc, term);
    }
    return acc;
}

double evaluate_exact(const ExactSolution& ex, double x) {
    if (ex.kind == ExactSolution::Kind::Polynomial) return evaluate(ex.poly, x);
    double inner = 0.0;
    for (std::size_t k = ex.exp_inner.size(); k-- > 0;)
        inner = inner * x + ex.exp_inner[k].to_double();
    return std::exp(inner);
}

void ProblemSpec::validate() const {
    if (order < 1) throw std::invalid_argument("problem: order must be >= 1");
    if (static_cast<int>(ics.size()) != order)
        throw std::invalid_argument("problem: need exactly one initial condition per order");
    if (max_deriv_order(rhs) >= order)
        throw std::invalid_argument(
            "problem: right-hand side may only contain derivatives of order < " +
            std::to_string(order));
    if (!domain.first.is_zero()) throw std::invalid_argument("problem: domain must start at 0");
    if (domain.second <= domain.first)
        throw std::invalid_argument("problem: domain end must exceed its start");
}

void VideSpec::validate() const {
    if (ics.size() != 1)
        throw std::invalid_argument("vide: exactly one initial condition expected");
    if (contains_delayed(forcing))
        throw std::invalid_argument("vide: forcing must depend on x only");
    if (max_deriv_order(kernel) > 0)
        throw std::invalid_argument("vide: kernel must not contain derivative terms");
    if (!domain.first.is_zero()) throw std::invalid_argument("vide: domain must start at 0");
    if (domain.second <= domain.first)
        throw std::invalid_argument("vide: domain end must exceed its start");
}

namespace {

// Polynomial series back to expression form: c, c*x, c*x^k terms.
Expr poly_to_expr(const PowerSeries& p) {
    std::vector<Expr> terms;
    for (int k = 0; k <= p.trunc_degree(); ++k) {
        if (p[k].is_zero()) continue;
        if (k == 0)
            terms.push_back(Expr::constant(p[k]));
        else
            terms.push_back(Expr::product({Expr::constant(p[k]), Expr::monomial(k)}));
    }
    if (terms.empty()) return Expr::constant(Rational(0));
    if (terms.size() == 1) return terms[0];
    return Expr::sum(std::move(terms));
}

}  // namespace

ProblemSpec vide_reduce(const VideSpec& v, int trunc_degree) {
    v.validate();
    const PowerSeries forcing_poly = eval_expr(v.forcing, PowerSeries(trunc_degree));
    const PowerSeries forcing_deriv = differentiate(forcing_poly);

    ProblemSpec p;
    p.order = 2;
    if (forcing_deriv.is_zero()) {
        p.rhs = v.kernel;
    } else {
        Expr dpoly = poly_to_expr(forcing_deriv);
        std::vector<Expr> children;
        if (dpoly.kind() == ExprKind::Sum)
            children = dpoly.children();
        else
            children.push_back(std::move(dpoly));
        children.push_back(v.kernel);
        p.rhs = Expr::sum(std::move(children));
    }
    p.ics = {v.ics[0], forcing_poly[0]};
    p.domain = v.domain;
    p.exact = v.exact;
    p.validate();
    return p;
}

}  // namespace stm
