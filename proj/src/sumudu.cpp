#include "stm/sumudu.hpp"

#include <stdexcept>

namespace stm {

USeries::USeries(int trunc_degree) {
    if (trunc_degree < 0) throw std::invalid_argument("u-series: negative truncation degree");
    coeffs_.assign(static_cast<std::size_t>(trunc_degree) + 1, Rational(0));
}

USeries::USeries(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw std::invalid_argument("u-series: empty coefficient vector");
}

USeries forward(const PowerSeries& g) {
    const int n = g.trunc_degree();
    std::vector<Rational> c(static_cast<std::size_t>(n) + 1, Rational(0));
    BigInt factorial = 1;
    for (int k = 0; k <= n; ++k) {
        if (k > 0) factorial *= k;
        if (!g[k].is_zero()) c[static_cast<std::size_t>(k)] = g[k] * Rational(factorial);
    }
    return USeries(std::move(c));
}

PowerSeries inverse(const USeries& g) {
    const int n = g.trunc_degree();
    std::vector<Rational> c(static_cast<std::size_t>(n) + 1, Rational(0));
    BigInt factorial = 1;
    for (int k = 0; k <= n; ++k) {
        if (k > 0) factorial *= k;
        if (!g[k].is_zero()) c[static_cast<std::size_t>(k)] = g[k] / Rational(factorial);
    }
    return PowerSeries(std::move(c));
}

USeries nth_derivative_image(const USeries& g, std::span<const Rational> ics, int n) {
    if (n < 1) throw std::invalid_argument("derivative image: order must be >= 1");
    if (static_cast<int>(ics.size()) != n)
        throw std::invalid_argument("derivative image: need exactly n initial conditions");
    if (n > g.trunc_degree())
        throw std::invalid_argument("derivative image: order exceeds truncation degree");
    for (int k = 0; k < n; ++k) {
        Rational bracket = g[k] - ics[static_cast<std::size_t>(k)];
        if (!bracket.is_zero())
            throw std::domain_error("derivative image: initial condition " + std::to_string(k) +
                                    " inconsistent with the transform (residue " + bracket.str() +
                                    ")");
    }
    std::vector<Rational> c(static_cast<std::size_t>(g.trunc_degree() - n) + 1, Rational(0));
    for (int k = n; k <= g.trunc_degree(); ++k) c[static_cast<std::size_t>(k - n)] = g[k];
    return USeries(std::move(c));
}

UMonomialMultiplier lagrange_multiplier(int n) {
    if (n < 1) throw std::invalid_argument("multiplier: order must be >= 1");
    return {-1, n};
}

USeries apply_multiplier(const USeries& g, UMonomialMultiplier m) {
    const int n = g.trunc_degree();
    std::vector<Rational> c(static_cast<std::size_t>(n) + 1, Rational(0));
    for (int k = 0; k + m.power <= n; ++k) {
        if (g[k].is_zero()) continue;
        c[static_cast<std::size_t>(k + m.power)] = m.sign < 0 ? -g[k] : g[k];
    }
    return USeries(std::move(c));
}

std::string to_text(const USeries& g) {
    std::string out;
    for (int k = 0; k <= g.trunc_degree(); ++k) {
        if (g[k].is_zero()) continue;
        if (!out.empty()) out += " + ";
        out += g[k].str();
        if (k == 1)
            out += " u";
        else if (k >= 2)
            out += " u^" + std::to_string(k);
    }
    return out.empty() ? "0" : out;
}

}  // namespace stm
