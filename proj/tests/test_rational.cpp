#include "stm/rational.hpp"

#include "support.hpp"

#include <doctest.h>

#include <stdexcept>

using stm::BigInt;
using stm::Rational;
using ts::R;

TEST_CASE("rationals canonicalize on construction") {
    CHECK(R(2, 4) == R(1, 2));
    CHECK(R(-2, 4) == R(-1, 2));
    CHECK(R(2, -4) == R(-1, 2));
    CHECK(R(-2, -4) == R(1, 2));
    CHECK(R(0, 7) == R(0));
    CHECK(R(0, -7).den() == 1);
    CHECK(R(6, 3).is_integer());
    CHECK_THROWS_AS(Rational(BigInt(1), BigInt(0)), std::domain_error);
}

TEST_CASE("arithmetic stays canonical") {
    CHECK(R(1, 2) + R(1, 3) == R(5, 6));
    CHECK(R(1, 2) - R(1, 2) == R(0));
    CHECK(R(2, 3) * R(3, 4) == R(1, 2));
    CHECK(R(1, 2) / R(1, 4) == R(2));
    CHECK(-R(3, 7) == R(-3, 7));
    CHECK_THROWS_AS(R(1) / R(0), std::domain_error);

    auto g = ts::rng(11);
    for (int i = 0; i < 500; ++i) {
        const long long p = static_cast<long long>(g() % 2001) - 1000;
        const long long q = 1 + static_cast<long long>(g() % 1000);
        const long long r = static_cast<long long>(g() % 2001) - 1000;
        const long long s = 1 + static_cast<long long>(g() % 1000);
        const Rational x = R(p, q), y = R(r, s);
        for (const Rational& v : {x + y, x - y, x * y}) {
            CHECK(v.den() > 0);
            if (!v.is_zero())
                CHECK(boost::multiprecision::gcd(v.num() < 0 ? BigInt(-v.num()) : v.num(),
                                                 v.den()) == 1);
        }
    }
}

TEST_CASE("ordering and comparisons") {
    CHECK(R(1, 3) < R(1, 2));
    CHECK(R(-1, 2) < R(1, 3));
    CHECK(R(7, 60) > R(1, 12));
    CHECK(R(1, 2) <= R(1, 2));
    CHECK(abs(R(-3, 4)) == R(3, 4));
    CHECK(R(-5).sign() == -1);
    CHECK(R(0).sign() == 0);
}

TEST_CASE("string round trips") {
    CHECK(R(7, 60).str() == "7/60");
    CHECK(R(-4, 3).str() == "-4/3");
    CHECK(R(5).str() == "5");
    CHECK(Rational::from_string("7/60") == R(7, 60));
    CHECK(Rational::from_string("-22/3") == R(-22, 3));
    CHECK(Rational::from_string("0") == R(0));
    CHECK_THROWS_AS(Rational::from_string("1/0"), std::domain_error);
    CHECK_THROWS_AS(Rational::from_string("x"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::from_string(""), std::invalid_argument);
}

TEST_CASE("pow") {
    CHECK(stm::pow(R(1, 2), 0) == R(1));
    CHECK(stm::pow(R(1, 2), 3) == R(1, 8));
    CHECK(stm::pow(R(-2, 3), 2) == R(4, 9));
    CHECK_THROWS_AS(stm::pow(R(2), -1), std::invalid_argument);
}

TEST_CASE("double conversion") {
    CHECK(R(1, 2).to_double() == 0.5);
    CHECK(R(-7, 4).to_double() == -1.75);
    CHECK(R(0).to_double() == 0.0);

    // huge numerator/denominator pairs still produce a finite, accurate ratio
    BigInt big = 1;
    for (int i = 1; i <= 400; ++i) big *= 10;
    const Rational huge_ratio(3 * big, 2 * big);
    CHECK(huge_ratio.to_double() == doctest::Approx(1.5).epsilon(1e-14));
    const Rational tiny(BigInt(1), big);
    CHECK(tiny.to_double() == doctest::Approx(0.0).epsilon(1e-200));
}
