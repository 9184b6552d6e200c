#include "stm/sumudu.hpp"

#include "stm/verify.hpp"
#include "support.hpp"

#include <doctest.h>

#include <stdexcept>

using stm::PowerSeries;
using stm::Rational;
using stm::USeries;
using ts::R;
using ts::S;

namespace {

USeries U(const char* text, int degree) {
    // u-series share the coefficient layout, so reuse the x-text reader
    return USeries(stm::series_from_text(text, degree).coeffs());
}

}  // namespace

TEST_CASE("forward maps x^k to k! u^k") {
    CHECK(forward(S("2 x", 3)) == U("2 x", 3));
    CHECK(forward(S("2 x + 2 x^3", 4)) == U("2 x + 12 x^3", 4));
    CHECK(forward(S("1", 2)) == U("1", 2));
    CHECK(forward(S("1 x", 1)) == U("1 x", 1));  // linear functions are preserved
}

TEST_CASE("inverse divides by factorials") {
    CHECK(inverse(U("2 x^2", 4)) == S("1 x^2", 4));
    CHECK(inverse(U("2 x^2 + 12 x^4 + 120 x^6", 6)) == S("1 x^2 + 1/2 x^4 + 1/6 x^6", 6));
    const PowerSeries s = S("3 + -1/2 x + 1/7 x^5", 6);
    CHECK(inverse(forward(s)) == s);
}

TEST_CASE("forward is linear") {
    auto g = ts::rng(53);
    for (int i = 0; i < 100; ++i) {
        const int n = static_cast<int>(g() % 10);
        const PowerSeries a = stm::random_series(g, n), b = stm::random_series(g, n);
        const Rational alpha = stm::random_rational(g, 6, 6);
        const Rational beta = stm::random_rational(g, 6, 6);
        const PowerSeries combo = add(scale(a, alpha), scale(b, beta));
        USeries expect(combo.trunc_degree());
        {
            const USeries fa = forward(a), fb = forward(b);
            std::vector<Rational> c(fa.coeffs().size());
            for (std::size_t k = 0; k < c.size(); ++k)
                c[k] = alpha * fa[static_cast<int>(k)] + beta * fb[static_cast<int>(k)];
            expect = USeries(std::move(c));
        }
        CHECK(forward(combo) == expect);
    }
}

TEST_CASE("round trips are bit-exact at high degree") {
    auto g = ts::rng(59);
    for (int i = 0; i < 100; ++i) {
        const int n = static_cast<int>(g() % 65);
        const PowerSeries a = stm::random_series(g, n, 9, 9);
        CHECK(inverse(forward(a)) == a);
        const USeries u(stm::random_series(g, n, 9, 9).coeffs());
        CHECK(forward(inverse(u)) == u);
    }
}

TEST_CASE("nth_derivative_image") {
    // image of the second derivative of x^2 is the constant 2
    {
        const USeries image =
            nth_derivative_image(forward(S("1 x^2", 5)), std::vector<Rational>{R(0), R(0)}, 2);
        CHECK(image == U("2", 3));
    }
    {
        const USeries image =
            nth_derivative_image(forward(S("1 + 1 x", 4)), std::vector<Rational>{R(1)}, 1);
        CHECK(image == U("1", 3));
    }
    CHECK_THROWS_AS(
        nth_derivative_image(forward(S("1 x^2", 5)), std::vector<Rational>{R(1), R(0)}, 2),
        std::domain_error);
    CHECK_THROWS_AS(nth_derivative_image(U("1", 1), std::vector<Rational>{R(1), R(0)}, 2),
                    std::invalid_argument);
    CHECK_THROWS_AS(nth_derivative_image(U("1", 3), std::vector<Rational>{R(1)}, 0),
                    std::invalid_argument);
}

TEST_CASE("derivative image agrees with transforming the derivative") {
    auto g = ts::rng(61);
    for (int i = 0; i < 200; ++i) {
        const int degree = 2 + static_cast<int>(g() % 12);
        const int n = 1 + static_cast<int>(g() % std::min(4, degree));
        const PowerSeries a = stm::random_series(g, degree);

        std::vector<Rational> ics;
        PowerSeries d = a;
        for (int k = 0; k < n; ++k) {
            ics.push_back(d[0]);  // k-th derivative at 0, computed the long way
            d = differentiate(d);
        }
        PowerSeries dn = a;
        for (int k = 0; k < n; ++k) dn = differentiate(dn);

        const USeries image = nth_derivative_image(forward(a), ics, n);
        const USeries expect = forward(dn);
        for (int k = 0; k <= image.trunc_degree(); ++k) CHECK(image[k] == expect[k]);
    }
}

TEST_CASE("lagrange multiplier is -u^n and makes the variation stationary") {
    const stm::UMonomialMultiplier m2 = stm::lagrange_multiplier(2);
    CHECK(m2.sign == -1);
    CHECK(m2.power == 2);
    const stm::UMonomialMultiplier m1 = stm::lagrange_multiplier(1);
    CHECK(m1.sign == -1);
    CHECK(m1.power == 1);
    for (int n = 1; n <= 6; ++n) {
        const stm::UMonomialMultiplier m = stm::lagrange_multiplier(n);
        // 1 + phi(u)/u^n = 1 + sign * u^(power-n) must vanish identically
        CHECK(m.power - n == 0);
        CHECK(R(1) + R(m.sign) == R(0));
    }
    CHECK_THROWS_AS(stm::lagrange_multiplier(0), std::invalid_argument);
}

TEST_CASE("apply_multiplier shifts coefficients") {
    CHECK(apply_multiplier(U("2", 4), {+1, 2}) == U("2 x^2", 4));
    CHECK(apply_multiplier(U("2 x + 12 x^3", 4), {+1, 1}) == U("2 x^2 + 12 x^4", 4));
    const USeries u = U("1 + 5 x^2", 3);
    CHECK(apply_multiplier(u, {+1, 0}) == u);
    CHECK(apply_multiplier(u, {-1, 0}) ==
          USeries(scale(PowerSeries(u.coeffs()), R(-1)).coeffs()));
    // terms pushed past the truncation vanish
    CHECK(apply_multiplier(U("1 x^3", 3), {+1, 1}) == USeries(3));
}

TEST_CASE("the transform route of integration matches the time domain") {
    auto g = ts::rng(67);
    for (int i = 0; i < 200; ++i) {
        const int degree = static_cast<int>(g() % 13);
        const int n = 1 + static_cast<int>(g() % 3);
        const PowerSeries h = stm::random_series(g, degree);
        const PowerSeries via_transform = inverse(apply_multiplier(forward(h), {+1, n}));
        CHECK(via_transform == integrate(h, n));
    }
}
