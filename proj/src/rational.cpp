#include "stm/rational.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace stm {

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_ == 0) throw std::domain_error("rational: zero denominator");
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_ == 0) {
        den_ = 1;
        return;
    }
    BigInt g = boost::multiprecision::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
}

Rational Rational::from_string(std::string_view text) {
    auto slash = text.find('/');
    auto parse_int = [](std::string_view t) -> BigInt {
        if (t.empty()) throw std::invalid_argument("rational: empty integer");
        bool neg = false;
        std::size_t i = 0;
        if (t[0] == '-') {
            neg = true;
            i = 1;
        }
        if (i == t.size()) throw std::invalid_argument("rational: sign without digits");
        BigInt v = 0;
        for (; i < t.size(); ++i) {
            if (t[i] < '0' || t[i] > '9') throw std::invalid_argument("rational: bad digit");
            v = v * 10 + (t[i] - '0');
        }
        return neg ? BigInt(-v) : v;
    };
    if (slash == std::string_view::npos) return Rational(parse_int(text));
    BigInt num = parse_int(text.substr(0, slash));
    BigInt den = parse_int(text.substr(slash + 1));
    return Rational(std::move(num), std::move(den));
}

double Rational::to_double() const {
    if (num_ == 0) return 0.0;
    const BigInt an = num_ < 0 ? BigInt(-num_) : num_;
    const std::size_t nb = boost::multiprecision::msb(an);
    const std::size_t db = boost::multiprecision::msb(den_);
    const std::size_t top = std::max(nb, db);
    if (top > 900) {
        // Shift both sides into double range; the ratio survives to full precision.
        const unsigned shift = static_cast<unsigned>(top - 512);
        BigInt n = num_ >> shift;
        BigInt d = den_ >> shift;
        if (d == 0) d = 1;
        return n.convert_to<double>() / d.convert_to<double>();
    }
    return num_.convert_to<double>() / den_.convert_to<double>();
}

std::string Rational::str() const {
    std::string s = num_.str();
    if (den_ != 1) {
        s += '/';
        s += den_.str();
    }
    return s;
}

Rational Rational::operator-() const {
    Rational r = *this;
    r.num_ = -r.num_;
    return r;
}

Rational& Rational::operator+=(const Rational& o) {
    *this = Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    return *this;
}

Rational& Rational::operator-=(const Rational& o) {
    *this = Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    return *this;
}

Rational& Rational::operator*=(const Rational& o) {
    *this = Rational(num_ * o.num_, den_ * o.den_);
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.num_ == 0) throw std::domain_error("rational: division by zero");
    *this = Rational(num_ * o.den_, den_ * o.num_);
    return *this;
}

Rational operator+(Rational a, const Rational& b) { return a += b; }
Rational operator-(Rational a, const Rational& b) { return a -= b; }
Rational operator*(Rational a, const Rational& b) { return a *= b; }
Rational operator/(Rational a, const Rational& b) { return a /= b; }

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

Rational pow(const Rational& base, int exp) {
    if (exp < 0) throw std::invalid_argument("rational pow: negative exponent");
    Rational acc(1);
    Rational b = base;
    while (exp > 0) {
        if (exp & 1) acc *= b;
        exp >>= 1;
        if (exp > 0) b *= b;
    }
    return acc;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace stm
