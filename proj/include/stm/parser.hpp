#pragma once

#include "stm/model.hpp"

#include <string>
#include <string_view>
#include <variant>

namespace stm {

struct SourceSpan {
    int line = 1;
    int column = 1;
    int length = 1;

    friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

enum class ParseErrorKind {
    UnexpectedToken,
    BadRational,
    DelayOutOfRange,
    DerivativeOrderTooHigh,
    MissingField,
    DuplicateField,
};

const char* to_string(ParseErrorKind kind);

struct ParseError {
    SourceSpan span;
    ParseErrorKind kind = ParseErrorKind::UnexpectedToken;
    std::string message;

    std::string to_string() const;  // "line:col: kind: message"
};

/// Problem-file grammar (whitespace-insensitive, '#' comments to end of line):
///
///   file     := stmt+            stmt := key "=" value ";"?
///   keys     := order | lhs | rhs | ic | domain | exact
///             | vide_forcing | vide_kernel
///   expr     := term (("+"|"-") term)*
///   term     := factor ("*" factor)*
///   factor   := rational | "x" ("^" uint)? | delayed | "(" expr ")" | "-" factor
///   delayed  := "y" quote* "(" arg ")" ("^" uint)?
///               with arg one of "x", "x/"uint, rational"*x", "("rational")*x"
///   rational := int ("/" uint)?
///
/// lhs/rhs/vide_forcing/vide_kernel values are double-quoted expression
/// strings; ic and domain take bracketed rational lists; exact takes
/// poly(<expr in x>) or exp(<polynomial in x, zero constant term>).
/// A file defines an integro-differential problem when vide_forcing /
/// vide_kernel appear (order/lhs/rhs are then rejected), otherwise an
/// order-n delay problem where lhs must be exactly the n-th derivative
/// "y'...'(x)". Duplicate keys are errors rather than last-wins.
using ParsedProblem = std::variant<ProblemSpec, VideSpec, ParseError>;
ParsedProblem parse_problem(std::string_view text);

/// Parses a bare expression (the quoted-string sub-grammar above).
std::variant<Expr, ParseError> parse_expr(std::string_view text);

/// Canonical problem text; parse_problem(serialize(s)) is structurally
/// equal to s, and serializing the reparse reproduces the text.
std::string serialize(const ProblemSpec& spec);
std::string serialize(const VideSpec& spec);
std::string serialize_expr(const Expr& e);

}  // namespace stm
