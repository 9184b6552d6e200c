#include "stm/parser.hpp"

#include "stm/verify.hpp"
#include "support.hpp"

#include <doctest.h>

#include <string>
#include <variant>

using stm::Expr;
using stm::ParseError;
using stm::ParseErrorKind;
using stm::ProblemSpec;
using stm::Rational;
using stm::VideSpec;
using ts::R;

namespace {

ProblemSpec ode(const std::string& text) {
    auto p = stm::parse_problem(text);
    if (const auto* err = std::get_if<ParseError>(&p)) FAIL(err->to_string());
    return std::get<ProblemSpec>(std::move(p));
}

ParseError error_of(const std::string& text) {
    auto p = stm::parse_problem(text);
    REQUIRE(std::holds_alternative<ParseError>(p));
    return std::get<ParseError>(std::move(p));
}

Expr expr(const std::string& text) {
    auto e = stm::parse_expr(text);
    if (const auto* err = std::get_if<ParseError>(&e)) FAIL(err->to_string());
    return std::get<Expr>(std::move(e));
}

}  // namespace

TEST_CASE("parses the quadratic problem file") {
    const ProblemSpec spec = ode(
        "order = 2;\n"
        "lhs = \"y''(x)\";\n"
        "rhs = \"8*y(x/2) - x*y'(x) + 2\";\n"
        "ic = [0, 0];\n"
        "domain = [0, 1];\n"
        "exact = poly(x^2);\n");
    CHECK(spec.order == 2);
    CHECK(spec.ics == std::vector<Rational>{R(0), R(0)});
    CHECK(spec.domain.second == R(1));
    REQUIRE(spec.exact.has_value());
    CHECK(spec.exact->kind == stm::ExactSolution::Kind::Polynomial);
    CHECK(spec.exact->poly == ts::S("1 x^2", 2));
    const Expr want = Expr::sum({
        Expr::product({Expr::constant(R(8)), Expr::delayed(0, R(1, 2), 1)}),
        Expr::product({Expr::constant(R(-1)), Expr::monomial(1), Expr::delayed(1, R(1), 1)}),
        Expr::constant(R(2)),
    });
    CHECK(spec.rhs == want);
}

TEST_CASE("parses the quartic-delay problem file") {
    const ProblemSpec spec = ode(
        "order = 1;\n"
        "lhs = \"y'(x)\";\n"
        "rhs = \"2*x*y(x/2)^4\";\n"
        "ic = [1];\n");
    CHECK(spec.order == 1);
    CHECK(spec.rhs == Expr::product({Expr::constant(R(2)), Expr::monomial(1),
                                     Expr::delayed(0, R(1, 2), 4)}));
    CHECK(spec.domain == std::make_pair(R(0), R(1)));  // default domain
}

TEST_CASE("parses an integro-differential file") {
    auto p = stm::parse_problem(
        "vide_forcing = \"1\";\n"
        "vide_kernel = \"y(x/2)^2\";\n"
        "ic = [1];\n"
        "exact = exp(x);\n");
    REQUIRE(std::holds_alternative<VideSpec>(p));
    const VideSpec v = std::get<VideSpec>(std::move(p));
    CHECK(v.forcing == Expr::constant(R(1)));
    CHECK(v.kernel == Expr::delayed(0, R(1, 2), 2));
    CHECK(v.ics == std::vector<Rational>{R(1)});
    REQUIRE(v.exact.has_value());
    CHECK(v.exact->kind == stm::ExactSolution::Kind::ExpOfPolynomial);
    CHECK(v.exact->exp_inner == std::vector<Rational>{R(0), R(1)});
}

TEST_CASE("expression structure") {
    CHECK(expr("(8/3)*y'(x/2)*y(x)") ==
          Expr::product({Expr::constant(R(8, 3)), Expr::delayed(1, R(1, 2), 1),
                         Expr::delayed(0, R(1), 1)}));
    CHECK(expr("y(x/1)") == Expr::delayed(0, R(1), 1));
    CHECK(expr("y((1/2)*x)") == Expr::delayed(0, R(1, 2), 1));
    CHECK(expr("y(1/2*x)") == Expr::delayed(0, R(1, 2), 1));
    CHECK(expr("x") == Expr::monomial(1));
    CHECK(expr("x^0") == Expr::monomial(0));
    CHECK(expr("-y(x)") == Expr::product({Expr::constant(R(-1)), Expr::delayed(0, R(1), 1)}));
    CHECK(expr("1 - 1") == Expr::sum({Expr::constant(R(1)), Expr::constant(R(-1))}));
    // parenthesized subexpressions keep their structure
    CHECK(expr("(1 + x)*y(x)") ==
          Expr::product({Expr::sum({Expr::constant(R(1)), Expr::monomial(1)}),
                         Expr::delayed(0, R(1), 1)}));
}

TEST_CASE("rational literals survive bit-exactly") {
    auto g = ts::rng(79);
    for (int i = 0; i < 300; ++i) {
        const long long p = static_cast<long long>(g() % 2000001) - 1000000;
        const long long q = 1 + static_cast<long long>(g() % 1000000);
        const Rational want = R(p, q);
        const std::string text =
            (p < 0 ? std::string("-") : std::string()) + std::to_string(p < 0 ? -p : p) + "/" +
            std::to_string(q);
        const Expr e = expr(text);
        REQUIRE(e.kind() == stm::ExprKind::Const);
        CHECK(e.value() == want);
    }
}

TEST_CASE("documented parse failures") {
    SUBCASE("initial-condition arity") {
        const ParseError err = error_of(
            "order = 2;\nlhs = \"y''(x)\";\nrhs = \"2\";\nic = [0, 0, 0];\n");
        CHECK(err.kind == ParseErrorKind::MissingField);
        CHECK(err.span.line == 4);
    }
    SUBCASE("delay beyond 1") {
        auto e = stm::parse_expr("y(2*x)");
        REQUIRE(std::holds_alternative<ParseError>(e));
        const ParseError err = std::get<ParseError>(e);
        CHECK(err.kind == ParseErrorKind::DelayOutOfRange);
        CHECK(err.span.line == 1);
        CHECK(err.span.column == 3);
    }
    SUBCASE("negative or zero delays") {
        CHECK(std::get<ParseError>(stm::parse_expr("y(0*x)")).kind ==
              ParseErrorKind::DelayOutOfRange);
        CHECK(std::get<ParseError>(stm::parse_expr("y(-1/2*x)")).kind ==
              ParseErrorKind::DelayOutOfRange);
    }
    SUBCASE("zero denominator") {
        const ParseError err =
            error_of("order = 1;\nlhs = \"y'(x)\";\nrhs = \"1/0\";\nic = [0];\n");
        CHECK(err.kind == ParseErrorKind::BadRational);
    }
    SUBCASE("duplicate key") {
        const ParseError err = error_of(
            "order = 1;\norder = 1;\nlhs = \"y'(x)\";\nrhs = \"1\";\nic = [0];\n");
        CHECK(err.kind == ParseErrorKind::DuplicateField);
        CHECK(err.span.line == 2);
    }
    SUBCASE("derivative too high on the right") {
        const ParseError err = error_of(
            "order = 1;\nlhs = \"y'(x)\";\nrhs = \"y'(x/2)\";\nic = [0];\n");
        CHECK(err.kind == ParseErrorKind::DerivativeOrderTooHigh);
        CHECK(err.span.line == 3);
    }
    SUBCASE("order disagrees with lhs") {
        const ParseError err = error_of(
            "order = 1;\nlhs = \"y''(x)\";\nrhs = \"1\";\nic = [0, 0];\n");
        CHECK(err.kind == ParseErrorKind::MissingField);
    }
    SUBCASE("missing keys") {
        CHECK(error_of("").kind == ParseErrorKind::MissingField);
        CHECK(error_of("order = 2;").kind == ParseErrorKind::MissingField);
        CHECK(error_of("vide_forcing = \"1\";").kind == ParseErrorKind::MissingField);
    }
    SUBCASE("mixed problem kinds") {
        const ParseError err = error_of(
            "vide_forcing = \"1\";\nvide_kernel = \"y(x/2)\";\nic = [1];\nrhs = \"1\";\n");
        CHECK(err.kind == ParseErrorKind::UnexpectedToken);
        CHECK(err.span.line == 4);
    }
    SUBCASE("unknown key") {
        CHECK(error_of("foo = 1;").kind == ParseErrorKind::UnexpectedToken);
    }
    SUBCASE("derivative inside a kernel") {
        const ParseError err = error_of(
            "vide_forcing = \"1\";\nvide_kernel = \"y'(x/2)\";\nic = [1];\n");
        CHECK(err.kind == ParseErrorKind::DerivativeOrderTooHigh);
    }
    SUBCASE("y inside the forcing") {
        const ParseError err = error_of(
            "vide_forcing = \"y(x)\";\nvide_kernel = \"y(x/2)\";\nic = [1];\n");
        CHECK(err.kind == ParseErrorKind::UnexpectedToken);
    }
    SUBCASE("unterminated string") {
        CHECK(error_of("lhs = \"y'(x)").kind == ParseErrorKind::UnexpectedToken);
    }
    SUBCASE("bad domains") {
        CHECK(error_of("order = 1;\nlhs = \"y'(x)\";\nrhs = \"1\";\nic = [0];\ndomain = [1, 2];\n")
                  .kind == ParseErrorKind::UnexpectedToken);
        CHECK(error_of("order = 1;\nlhs = \"y'(x)\";\nrhs = \"1\";\nic = [0];\ndomain = [0, 0];\n")
                  .kind == ParseErrorKind::UnexpectedToken);
    }
    SUBCASE("exp exact with nonzero constant") {
        const ParseError err = error_of(
            "order = 1;\nlhs = \"y'(x)\";\nrhs = \"1\";\nic = [0];\nexact = exp(1 + x);\n");
        CHECK(err.kind == ParseErrorKind::UnexpectedToken);
    }
}

TEST_CASE("error text format") {
    const ParseError err = error_of("order = 2;\nlhs = \"y''(x)\";\nrhs = \"2\";\nic = [0];\n");
    const std::string text = err.to_string();
    CHECK(text.substr(0, 2) == "4:");
    CHECK(text.find("missing field") != std::string::npos);
}

TEST_CASE("serialize and reparse the worked problems") {
    for (const auto& builtin : stm::builtin_problems()) {
        auto p = stm::parse_problem(builtin.text);
        REQUIRE(!std::holds_alternative<ParseError>(p));
        if (auto* spec = std::get_if<ProblemSpec>(&p)) {
            const std::string canon = stm::serialize(*spec);
            auto q = stm::parse_problem(canon);
            REQUIRE(std::holds_alternative<ProblemSpec>(q));
            CHECK(std::get<ProblemSpec>(q) == *spec);
            CHECK(stm::serialize(std::get<ProblemSpec>(q)) == canon);
        } else {
            const VideSpec& vspec = std::get<VideSpec>(p);
            const std::string canon = stm::serialize(vspec);
            auto q = stm::parse_problem(canon);
            REQUIRE(std::holds_alternative<VideSpec>(q));
            CHECK(std::get<VideSpec>(q) == vspec);
            CHECK(stm::serialize(std::get<VideSpec>(q)) == canon);
        }
    }
}

TEST_CASE("serialize round trips fuzzed specs") {
    auto g = ts::rng(83);
    for (int i = 0; i < 250; ++i) {
        const ProblemSpec spec = stm::random_problem_spec(g);
        const std::string text = stm::serialize(spec);
        auto p = stm::parse_problem(text);
        REQUIRE_MESSAGE(std::holds_alternative<ProblemSpec>(p), text);
        CHECK(std::get<ProblemSpec>(p) == spec);
    }
    for (int i = 0; i < 250; ++i) {
        const VideSpec spec = stm::random_vide_spec(g);
        const std::string text = stm::serialize(spec);
        auto p = stm::parse_problem(text);
        REQUIRE_MESSAGE(std::holds_alternative<VideSpec>(p), text);
        CHECK(std::get<VideSpec>(p) == spec);
    }
}

TEST_CASE("hostile nesting is rejected instead of exhausting the stack") {
    const std::string deep = std::string(5000, '(') + "1" + std::string(5000, ')');
    auto e = stm::parse_expr(deep);
    REQUIRE(std::holds_alternative<ParseError>(e));
    CHECK(std::get<ParseError>(e).kind == ParseErrorKind::UnexpectedToken);

    auto minus_chain = stm::parse_expr(std::string(5000, '-') + "1");
    REQUIRE(std::holds_alternative<ParseError>(minus_chain));

    // moderate nesting still parses, and siblings do not accumulate depth
    const std::string ok = std::string(100, '(') + "x" + std::string(100, ')');
    CHECK(std::holds_alternative<Expr>(stm::parse_expr(ok)));
    std::string siblings = "(1)";
    for (int i = 0; i < 400; ++i) siblings += " + (1)";
    CHECK(std::holds_alternative<Expr>(stm::parse_expr(siblings)));
}

TEST_CASE("arbitrary bytes never crash the parser") {
    auto g = ts::rng(89);
    for (int i = 0; i < 5000; ++i) {
        const std::string junk = stm::random_bytes(g, 160);
        const auto p = stm::parse_problem(junk);  // must return, never throw
        (void)p;
    }
}

TEST_CASE("comments and loose whitespace are ignored") {
    const ProblemSpec spec = ode(
        "# leading comment\n"
        "order=2  # trailing comment\n"
        "lhs=\"y''(x)\"\n"
        "rhs = \" 8 * y( x / 2 ) + 2 \" ;\n"
        "ic=[ 0 , 0 ]\n");
    CHECK(spec.order == 2);
    CHECK(spec.rhs == Expr::sum({Expr::product({Expr::constant(R(8)), Expr::delayed(0, R(1, 2), 1)}),
                                 Expr::constant(R(2))}));
}
