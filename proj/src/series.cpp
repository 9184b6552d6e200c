#include "stm/series.hpp"

#include <stdexcept>

namespace stm {

namespace {

void require_same_degree(const PowerSeries& a, const PowerSeries& b) {
    if (a.trunc_degree() != b.trunc_degree())
        throw std::invalid_argument("series: truncation degree mismatch (" +
                                    std::to_string(a.trunc_degree()) + " vs " +
                                    std::to_string(b.trunc_degree()) + ")");
}

}  // namespace

PowerSeries::PowerSeries(int trunc_degree) {
    if (trunc_degree < 0) throw std::invalid_argument("series: negative truncation degree");
    coeffs_.assign(static_cast<std::size_t>(trunc_degree) + 1, Rational(0));
}

PowerSeries::PowerSeries(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw std::invalid_argument("series: empty coefficient vector");
}

PowerSeries PowerSeries::constant(Rational value, int trunc_degree) {
    PowerSeries s(trunc_degree);
    s.coeffs_[0] = std::move(value);
    return s;
}

PowerSeries PowerSeries::monomial(int degree, Rational coeff, int trunc_degree) {
    if (degree < 0) throw std::invalid_argument("series: negative monomial degree");
    PowerSeries s(trunc_degree);
    if (degree <= trunc_degree) s.coeffs_[static_cast<std::size_t>(degree)] = std::move(coeff);
    return s;
}

bool PowerSeries::is_zero() const { return last_nonzero_degree() < 0; }

int PowerSeries::last_nonzero_degree() const {
    for (int k = trunc_degree(); k >= 0; --k)
        if (!coeffs_[static_cast<std::size_t>(k)].is_zero()) return k;
    return -1;
}

PowerSeries add(const PowerSeries& a, const PowerSeries& b) {
    require_same_degree(a, b);
    std::vector<Rational> c = a.coeffs();
    for (int k = 0; k <= b.trunc_degree(); ++k) c[static_cast<std::size_t>(k)] += b[k];
    return PowerSeries(std::move(c));
}

PowerSeries multiply(const PowerSeries& a, const PowerSeries& b) {
    require_same_degree(a, b);
    const int n = a.trunc_degree();
    std::vector<Rational> c(static_cast<std::size_t>(n) + 1, Rational(0));
    for (int i = 0; i <= n; ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; i + j <= n; ++j) {
            if (b[j].is_zero()) continue;
            c[static_cast<std::size_t>(i + j)] += a[i] * b[j];
        }
    }
    return PowerSeries(std::move(c));
}

PowerSeries pow_int(const PowerSeries& a, int p) {
    if (p < 1) throw std::invalid_argument("series pow: exponent must be >= 1");
    PowerSeries acc = PowerSeries::constant(Rational(1), a.trunc_degree());
    PowerSeries base = a;
    while (p > 0) {
        if (p & 1) acc = multiply(acc, base);
        p >>= 1;
        if (p > 0) base = multiply(base, base);
    }
    return acc;
}

PowerSeries differentiate(const PowerSeries& a) {
    const int n = a.trunc_degree();
    std::vector<Rational> c(static_cast<std::size_t>(n) + 1, Rational(0));
    for (int k = 1; k <= n; ++k) c[static_cast<std::size_t>(k - 1)] = a[k] * Rational(k);
    return PowerSeries(std::move(c));
}

PowerSeries integrate(const PowerSeries& a, int times) {
    if (times < 1) throw std::invalid_argument("series integrate: times must be >= 1");
    const int n = a.trunc_degree();
    std::vector<Rational> c(static_cast<std::size_t>(n) + 1, Rational(0));
    for (int k = 0; k + times <= n; ++k) {
        if (a[k].is_zero()) continue;
        BigInt fall = 1;  // (k+1)(k+2)...(k+times)
        for (int j = 1; j <= times; ++j) fall *= (k + j);
        c[static_cast<std::size_t>(k + times)] = a[k] / Rational(fall);
    }
    return PowerSeries(std::move(c));
}

PowerSeries delay_compose(const PowerSeries& a, const Rational& q) {
    if (q.sign() <= 0 || Rational(1) < q)
        throw std::domain_error("series delay: ratio must lie in (0, 1], got " + q.str());
    const int n = a.trunc_degree();
    std::vector<Rational> c(static_cast<std::size_t>(n) + 1, Rational(0));
    Rational qk(1);
    for (int k = 0; k <= n; ++k) {
        if (!a[k].is_zero()) c[static_cast<std::size_t>(k)] = a[k] * qk;
        qk *= q;
    }
    return PowerSeries(std::move(c));
}

PowerSeries scale(const PowerSeries& a, const Rational& c) {
    std::vector<Rational> v = a.coeffs();
    for (auto& x : v) x *= c;
    return PowerSeries(std::move(v));
}

PowerSeries retruncate(const PowerSeries& a, int trunc_degree) {
    if (trunc_degree < 0) throw std::invalid_argument("series: negative truncation degree");
    std::vector<Rational> c(static_cast<std::size_t>(trunc_degree) + 1, Rational(0));
    const int m = std::min(trunc_degree, a.trunc_degree());
    for (int k = 0; k <= m; ++k) c[static_cast<std::size_t>(k)] = a[k];
    return PowerSeries(std::move(c));
}

std::optional<int> lowest_new_degree(const PowerSeries& prev, const PowerSeries& next) {
    require_same_degree(prev, next);
    for (int k = prev.last_nonzero_degree() + 1; k <= next.trunc_degree(); ++k)
        if (!next[k].is_zero()) return k;
    return std::nullopt;
}

double evaluate(const PowerSeries& a, double x) {
    double acc = 0.0;
    for (int k = a.trunc_degree(); k >= 0; --k) acc = acc * x + a[k].to_double();
    return acc;
}

std::string to_text(const PowerSeries& a) {
    std::string out;
    for (int k = 0; k <= a.trunc_degree(); ++k) {
        if (a[k].is_zero()) continue;
        if (!out.empty()) out += " + ";
        out += a[k].str();
        if (k == 1)
            out += " x";
        else if (k >= 2)
            out += " x^" + std::to_string(k);
    }
    return out.empty() ? "0" : out;
}

PowerSeries series_from_text(std::string_view text, int trunc_degree) {
    std::vector<Rational> c(static_cast<std::size_t>(trunc_degree) + 1, Rational(0));
    std::vector<bool> seen(c.size(), false);
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    };
    bool first = true;
    while (true) {
        skip_ws();
        if (pos >= text.size()) {
            if (first) throw std::invalid_argument("series text: empty input");
            break;
        }
        if (!first) {
            if (text[pos] != '+') throw std::invalid_argument("series text: expected '+'");
            ++pos;
            skip_ws();
        }
        first = false;
        std::size_t start = pos;
        if (pos < text.size() && text[pos] == '-') ++pos;
        while (pos < text.size() && ((text[pos] >= '0' && text[pos] <= '9') || text[pos] == '/')) ++pos;
        if (pos == start) throw std::invalid_argument("series text: expected a rational");
        Rational coeff = Rational::from_string(text.substr(start, pos - start));
        int degree = 0;
        skip_ws();
        if (pos < text.size() && text[pos] == 'x') {
            ++pos;
            degree = 1;
            if (pos < text.size() && text[pos] == '^') {
                ++pos;
                std::size_t dstart = pos;
                long long value = 0;
                while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
                    value = value * 10 + (text[pos] - '0');
                    if (value > trunc_degree)
                        throw std::invalid_argument(
                            "series text: term degree exceeds truncation degree");
                    ++pos;
                }
                if (pos == dstart) throw std::invalid_argument("series text: expected exponent");
                degree = static_cast<int>(value);
            }
        }
        if (degree > trunc_degree)
            throw std::invalid_argument("series text: term degree exceeds truncation degree");
        if (seen[static_cast<std::size_t>(degree)])
            throw std::invalid_argument("series text: duplicate degree " + std::to_string(degree));
        seen[static_cast<std::size_t>(degree)] = true;
        c[static_cast<std::size_t>(degree)] = std::move(coeff);
    }
    return PowerSeries(std::move(c));
}

}  // namespace stm
