#include "stm/parser.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>

namespace stm {

const char* to_string(ParseErrorKind kind) {
    switch (kind) {
        case ParseErrorKind::UnexpectedToken: return "unexpected token";
        case ParseErrorKind::BadRational: return "bad rational";
        case ParseErrorKind::DelayOutOfRange: return "delay out of range";
        case ParseErrorKind::DerivativeOrderTooHigh: return "derivative order too high";
        case ParseErrorKind::MissingField: return "missing field";
        case ParseErrorKind::DuplicateField: return "duplicate field";
    }
    return "unknown";
}

std::string ParseError::to_string() const {
    return std::to_string(span.line) + ":" + std::to_string(span.column) + ": " +
           stm::to_string(kind) + ": " + message;
}

namespace {

constexpr int kMaxExponent = 4096;
constexpr int kMaxOrder = 64;
constexpr int kMaxNesting = 256;

struct Abort {
    ParseError err;
};

SourceSpan span_at(std::string_view text, std::size_t offset, std::size_t length) {
    offset = std::min(offset, text.size());
    length = std::max<std::size_t>(length, 1);
    int line = 1, column = 1;
    for (std::size_t i = 0; i < offset; ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return SourceSpan{line, column, static_cast<int>(length)};
}

[[noreturn]] void fail(std::string_view text, std::size_t offset, std::size_t length,
                       ParseErrorKind kind, std::string message) {
    throw Abort{ParseError{span_at(text, offset, length), kind, std::move(message)}};
}

// Byte range of the 'y' head of a delayed term, recorded for order checks
// that can only run once the whole file is known.
struct DelayedSite {
    int deriv_order = 0;
    std::size_t offset = 0;
    std::size_t length = 1;
};

struct Cursor {
    std::string_view full;     // whole input; offsets are absolute
    std::size_t pos = 0;
    std::size_t limit = 0;
    bool comments = true;      // '#' comments are invisible inside quoted strings

    bool at_end() const { return pos >= limit; }
    char peek() const { return pos < limit ? full[pos] : '\0'; }

    void skip_ws() {
        while (pos < limit) {
            const char c = full[pos];
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                ++pos;
                continue;
            }
            if (comments && c == '#') {
                while (pos < limit && full[pos] != '\n') ++pos;
                continue;
            }
            break;
        }
    }

    void expect(char c, const char* what) {
        skip_ws();
        if (peek() != c) fail(full, pos, 1, ParseErrorKind::UnexpectedToken, std::string("expected '") + c + "' " + what);
        ++pos;
    }

    BigInt digits() {
        skip_ws();
        const std::size_t start = pos;
        BigInt v = 0;
        while (pos < limit && full[pos] >= '0' && full[pos] <= '9') {
            v = v * 10 + (full[pos] - '0');
            ++pos;
        }
        if (pos == start)
            fail(full, start, 1, ParseErrorKind::UnexpectedToken, "expected digits");
        return v;
    }

    int uint_capped(int cap, const char* what) {
        const std::size_t start = pos;
        BigInt v = digits();
        if (v > cap)
            fail(full, start, pos - start, ParseErrorKind::UnexpectedToken,
                 std::string(what) + " exceeds the supported maximum " + std::to_string(cap));
        return v.convert_to<int>();
    }

    Rational rational(bool allow_sign) {
        skip_ws();
        const std::size_t start = pos;
        bool neg = false;
        if (allow_sign && peek() == '-') {
            neg = true;
            ++pos;
        }
        BigInt num = digits();
        BigInt den = 1;
        skip_ws();
        if (peek() == '/') {
            ++pos;
            den = digits();
        }
        if (den == 0)
            fail(full, start, pos - start, ParseErrorKind::BadRational, "zero denominator");
        return Rational(neg ? BigInt(-num) : num, den);
    }

    std::string ident() {
        skip_ws();
        const std::size_t start = pos;
        while (pos < limit && ((full[pos] >= 'a' && full[pos] <= 'z') ||
                               (full[pos] >= 'A' && full[pos] <= 'Z') || full[pos] == '_'))
            ++pos;
        return std::string(full.substr(start, pos - start));
    }
};

Expr negate(Expr e) {
    if (e.kind() == ExprKind::Const) return Expr::constant(-e.value());
    if (e.kind() == ExprKind::Product) {
        std::vector<Expr> ch = e.children();
        if (ch[0].kind() == ExprKind::Const)
            ch[0] = Expr::constant(-ch[0].value());
        else
            ch.insert(ch.begin(), Expr::constant(Rational(-1)));
        return Expr::product(std::move(ch));
    }
    return Expr::product({Expr::constant(Rational(-1)), std::move(e)});
}

struct ExprParser {
    Cursor& cur;
    bool allow_delayed;
    std::vector<DelayedSite>* sites;  // may be null
    int depth = 0;

    // Bounds the recursion of '(' groups and unary minus chains so hostile
    // input cannot overflow the stack.
    struct DepthGuard {
        int& depth;
        DepthGuard(ExprParser& p) : depth(p.depth) {
            if (++depth > kMaxNesting)
                fail(p.cur.full, p.cur.pos, 1, ParseErrorKind::UnexpectedToken,
                     "expression nesting exceeds the supported maximum " +
                         std::to_string(kMaxNesting));
        }
        ~DepthGuard() { --depth; }
    };

    Expr parse() {
        std::vector<Expr> terms;
        terms.push_back(term());
        cur.skip_ws();
        while (cur.peek() == '+' || cur.peek() == '-') {
            const char op = cur.peek();
            ++cur.pos;
            Expr t = term();
            terms.push_back(op == '+' ? std::move(t) : negate(std::move(t)));
            cur.skip_ws();
        }
        if (terms.size() == 1) return std::move(terms[0]);
        return Expr::sum(std::move(terms));
    }

    Expr term() {
        std::vector<Expr> factors;
        factors.push_back(factor());
        cur.skip_ws();
        while (cur.peek() == '*') {
            ++cur.pos;
            factors.push_back(factor());
            cur.skip_ws();
        }
        if (factors.size() == 1) return std::move(factors[0]);
        return Expr::product(std::move(factors));
    }

    Expr factor() {
        const DepthGuard guard(*this);
        cur.skip_ws();
        if (cur.at_end())
            fail(cur.full, cur.pos, 1, ParseErrorKind::UnexpectedToken, "expected a factor");
        const char c = cur.peek();
        if (c == '-') {
            ++cur.pos;
            return negate(factor());
        }
        if (c == '(') {
            ++cur.pos;
            Expr inner = parse();
            cur.expect(')', "to close the group");
            return inner;
        }
        if (c >= '0' && c <= '9') return Expr::constant(cur.rational(false));
        if (c == 'x') {
            ++cur.pos;
            int power = 1;
            cur.skip_ws();
            if (cur.peek() == '^') {
                ++cur.pos;
                cur.skip_ws();
                power = cur.uint_capped(kMaxExponent, "exponent");
            }
            return Expr::monomial(power);
        }
        if (c == 'y') return delayed();
        fail(cur.full, cur.pos, 1, ParseErrorKind::UnexpectedToken,
             "expected a rational, x, y, '(', or '-'");
    }

    Expr delayed() {
        const std::size_t ystart = cur.pos;
        ++cur.pos;  // 'y'
        int quotes = 0;
        while (cur.peek() == '\'') {
            ++quotes;
            ++cur.pos;
        }
        const std::size_t head_len = cur.pos - ystart;
        if (!allow_delayed)
            fail(cur.full, ystart, head_len, ParseErrorKind::UnexpectedToken,
                 "y is not allowed in this context");
        if (quotes > kMaxOrder)
            fail(cur.full, ystart, head_len, ParseErrorKind::DerivativeOrderTooHigh,
                 "derivative order exceeds the supported maximum " + std::to_string(kMaxOrder));
        cur.expect('(', "after y");
        cur.skip_ws();

        const std::size_t argstart = cur.pos;
        Rational q(1);
        if (cur.peek() == 'x') {
            ++cur.pos;
            cur.skip_ws();
            if (cur.peek() == '/') {
                ++cur.pos;
                const std::size_t dstart = cur.pos;
                BigInt den = cur.digits();
                if (den == 0)
                    fail(cur.full, dstart, cur.pos - dstart, ParseErrorKind::BadRational,
                         "zero denominator in delay");
                q = Rational(BigInt(1), den);
            }
        } else {
            bool parened = false;
            if (cur.peek() == '(') {
                parened = true;
                ++cur.pos;
            }
            q = cur.rational(true);
            if (parened) cur.expect(')', "to close the delay ratio");
            cur.expect('*', "between the delay ratio and x");
            cur.skip_ws();
            if (cur.peek() != 'x')
                fail(cur.full, cur.pos, 1, ParseErrorKind::UnexpectedToken,
                     "expected x in the delay argument");
            ++cur.pos;
        }
        const std::size_t arglen = std::max<std::size_t>(cur.pos - argstart, 1);
        if (q.sign() <= 0 || Rational(1) < q)
            fail(cur.full, argstart, arglen, ParseErrorKind::DelayOutOfRange,
                 "delay ratio must lie in (0, 1], got " + q.str());
        cur.expect(')', "to close the delay argument");

        int power = 1;
        cur.skip_ws();
        if (cur.peek() == '^') {
            ++cur.pos;
            cur.skip_ws();
            const std::size_t pstart = cur.pos;
            power = cur.uint_capped(kMaxExponent, "power");
            if (power < 1)
                fail(cur.full, pstart, std::max<std::size_t>(cur.pos - pstart, 1),
                     ParseErrorKind::UnexpectedToken, "power must be >= 1");
        }
        if (sites) sites->push_back({quotes, ystart, head_len});
        return Expr::delayed(quotes, q, power);
    }
};

Expr parse_expr_range(Cursor cur, bool allow_delayed, std::vector<DelayedSite>* sites) {
    ExprParser p{cur, allow_delayed, sites};
    Expr e = p.parse();
    cur.skip_ws();
    if (!cur.at_end())
        fail(cur.full, cur.pos, 1, ParseErrorKind::UnexpectedToken,
             "trailing input after the expression");
    return e;
}

// Degree of an x-only polynomial expression, saturating at the cap.
int syntactic_degree(std::string_view text, std::size_t off, const Expr& e) {
    switch (e.kind()) {
        case ExprKind::Const:
            return 0;
        case ExprKind::Monomial:
            return e.power();
        case ExprKind::Delayed:
            return 0;  // unreachable: callers parse with allow_delayed=false
        case ExprKind::Sum: {
            int m = 0;
            for (const Expr& c : e.children()) m = std::max(m, syntactic_degree(text, off, c));
            return m;
        }
        case ExprKind::Product: {
            long long s = 0;
            for (const Expr& c : e.children()) {
                s += syntactic_degree(text, off, c);
                if (s > kMaxExponent)
                    fail(text, off, 1, ParseErrorKind::UnexpectedToken,
                         "polynomial degree exceeds the supported maximum " +
                             std::to_string(kMaxExponent));
            }
            return static_cast<int>(s);
        }
    }
    return 0;
}

struct FileParser {
    std::string_view text;
    Cursor cur;

    struct Field {
        bool present = false;
        std::size_t offset = 0;
        std::size_t length = 0;
    };

    Field f_order, f_lhs, f_rhs, f_ic, f_domain, f_exact, f_forcing, f_kernel;
    int order_value = 0;
    int lhs_order = 0;
    std::optional<Expr> rhs_expr;
    std::vector<DelayedSite> rhs_sites;
    std::vector<Rational> ic_values;
    std::pair<Rational, Rational> domain_value{Rational(0), Rational(1)};
    std::optional<ExactSolution> exact_value;
    std::optional<Expr> forcing_expr;
    std::optional<Expr> kernel_expr;
    std::vector<DelayedSite> kernel_sites;

    explicit FileParser(std::string_view t) : text(t), cur{t, 0, t.size(), true} {}

    // Content range of a double-quoted string (quotes excluded).
    std::pair<std::size_t, std::size_t> quoted() {
        cur.skip_ws();
        const std::size_t open = cur.pos;
        if (cur.peek() != '"')
            fail(text, cur.pos, 1, ParseErrorKind::UnexpectedToken, "expected a quoted string");
        ++cur.pos;
        const std::size_t start = cur.pos;
        while (!cur.at_end() && cur.peek() != '"' && cur.peek() != '\n') ++cur.pos;
        if (cur.peek() != '"')
            fail(text, open, 1, ParseErrorKind::UnexpectedToken, "unterminated string");
        const std::size_t end = cur.pos;
        ++cur.pos;
        return {start, end};
    }

    Cursor sub(std::size_t start, std::size_t end) const { return Cursor{text, start, end, false}; }

    std::vector<Rational> rational_list() {
        cur.expect('[', "to open the list");
        std::vector<Rational> out;
        cur.skip_ws();
        if (cur.peek() == ']') {
            ++cur.pos;
            return out;
        }
        for (;;) {
            out.push_back(cur.rational(true));
            cur.skip_ws();
            if (cur.peek() == ',') {
                ++cur.pos;
                continue;
            }
            cur.expect(']', "to close the list");
            return out;
        }
    }

    void mark(Field& f, std::size_t off, std::size_t len, const char* key) {
        if (f.present)
            fail(text, off, len, ParseErrorKind::DuplicateField,
                 std::string("duplicate key '") + key + "'");
        f = {true, off, len};
    }

    void parse_lhs_string() {
        auto [start, end] = quoted();
        Cursor s = sub(start, end);
        s.skip_ws();
        if (s.peek() != 'y')
            fail(text, s.pos, 1, ParseErrorKind::UnexpectedToken,
                 "left-hand side must be a derivative of y");
        ++s.pos;
        int quotes = 0;
        while (s.peek() == '\'') {
            ++quotes;
            ++s.pos;
        }
        if (quotes < 1)
            fail(text, start, std::max<std::size_t>(end - start, 1),
                 ParseErrorKind::UnexpectedToken, "left-hand side must carry a derivative");
        if (quotes > kMaxOrder)
            fail(text, start, end - start, ParseErrorKind::DerivativeOrderTooHigh,
                 "derivative order exceeds the supported maximum " + std::to_string(kMaxOrder));
        s.expect('(', "after y");
        s.skip_ws();
        if (s.peek() != 'x')
            fail(text, s.pos, 1, ParseErrorKind::UnexpectedToken,
                 "left-hand side argument must be plain x");
        ++s.pos;
        s.expect(')', "to close the left-hand side");
        s.skip_ws();
        if (!s.at_end())
            fail(text, s.pos, 1, ParseErrorKind::UnexpectedToken,
                 "trailing input after the left-hand side");
        lhs_order = quotes;
    }

    ExactSolution parse_exact_value() {
        cur.skip_ws();
        const std::size_t kind_off = cur.pos;
        const std::string kind = cur.ident();
        if (kind != "poly" && kind != "exp")
            fail(text, kind_off, std::max<std::size_t>(kind.size(), 1),
                 ParseErrorKind::UnexpectedToken, "exact solution must be poly(...) or exp(...)");
        cur.expect('(', "after the exact solution kind");
        cur.skip_ws();
        const std::size_t inner_off = cur.pos;
        // Find the matching close paren so the inner expression parses in place.
        int depth = 1;
        std::size_t scan = cur.pos;
        while (scan < cur.limit && depth > 0) {
            if (text[scan] == '(') ++depth;
            if (text[scan] == ')') --depth;
            ++scan;
        }
        if (depth != 0)
            fail(text, inner_off, 1, ParseErrorKind::UnexpectedToken,
                 "unterminated exact solution");
        const std::size_t inner_end = scan - 1;
        Expr inner = parse_expr_range(sub(inner_off, inner_end), false, nullptr);
        cur.pos = scan;

        const int degree = syntactic_degree(text, inner_off, inner);
        const PowerSeries p = eval_expr(inner, PowerSeries(degree));
        if (kind == "poly") return ExactSolution::polynomial(p);
        if (!p[0].is_zero())
            fail(text, inner_off, std::max<std::size_t>(inner_end - inner_off, 1),
                 ParseErrorKind::UnexpectedToken, "exp argument must vanish at x = 0");
        return ExactSolution::exp_of_polynomial(p.coeffs());
    }

    ParsedProblem run() {
        for (;;) {
            cur.skip_ws();
            if (cur.at_end()) break;
            const std::size_t key_off = cur.pos;
            const std::string key = cur.ident();
            if (key.empty())
                fail(text, key_off, 1, ParseErrorKind::UnexpectedToken, "expected a key");
            cur.expect('=', "after the key");
            cur.skip_ws();

            if (key == "order") {
                mark(f_order, key_off, key.size(), "order");
                const std::size_t voff = cur.pos;
                order_value = cur.uint_capped(kMaxOrder, "order");
                if (order_value < 1)
                    fail(text, voff, std::max<std::size_t>(cur.pos - voff, 1),
                         ParseErrorKind::UnexpectedToken, "order must be >= 1");
            } else if (key == "lhs") {
                mark(f_lhs, key_off, key.size(), "lhs");
                parse_lhs_string();
            } else if (key == "rhs") {
                mark(f_rhs, key_off, key.size(), "rhs");
                auto [start, end] = quoted();
                rhs_expr = parse_expr_range(sub(start, end), true, &rhs_sites);
            } else if (key == "ic") {
                mark(f_ic, key_off, key.size(), "ic");
                ic_values = rational_list();
            } else if (key == "domain") {
                mark(f_domain, key_off, key.size(), "domain");
                const std::size_t voff = cur.pos;
                std::vector<Rational> ends = rational_list();
                if (ends.size() != 2)
                    fail(text, voff, std::max<std::size_t>(cur.pos - voff, 1),
                         ParseErrorKind::UnexpectedToken, "domain needs exactly two endpoints");
                if (!ends[0].is_zero())
                    fail(text, voff, std::max<std::size_t>(cur.pos - voff, 1),
                         ParseErrorKind::UnexpectedToken, "domain must start at 0");
                if (ends[1] <= ends[0])
                    fail(text, voff, std::max<std::size_t>(cur.pos - voff, 1),
                         ParseErrorKind::UnexpectedToken, "domain end must exceed its start");
                domain_value = {ends[0], ends[1]};
            } else if (key == "exact") {
                mark(f_exact, key_off, key.size(), "exact");
                exact_value = parse_exact_value();
            } else if (key == "vide_forcing") {
                mark(f_forcing, key_off, key.size(), "vide_forcing");
                auto [start, end] = quoted();
                forcing_expr = parse_expr_range(sub(start, end), false, nullptr);
            } else if (key == "vide_kernel") {
                mark(f_kernel, key_off, key.size(), "vide_kernel");
                auto [start, end] = quoted();
                kernel_expr = parse_expr_range(sub(start, end), true, &kernel_sites);
            } else {
                fail(text, key_off, key.size(), ParseErrorKind::UnexpectedToken,
                     "unknown key '" + key + "'");
            }

            cur.skip_ws();
            if (cur.peek() == ';') ++cur.pos;
        }

        const bool is_vide = f_forcing.present || f_kernel.present;
        if (is_vide) return assemble_vide();
        return assemble_ode();
    }

    [[noreturn]] void missing(const char* key) {
        fail(text, 0, 1, ParseErrorKind::MissingField, std::string("missing key '") + key + "'");
    }

    ParsedProblem assemble_ode() {
        if (!f_lhs.present) missing("lhs");
        if (!f_rhs.present) missing("rhs");
        if (!f_ic.present) missing("ic");
        const int order = lhs_order;
        if (f_order.present && order_value != order)
            fail(text, f_order.offset, f_order.length, ParseErrorKind::MissingField,
                 "order " + std::to_string(order_value) + " disagrees with the left-hand side (" +
                     std::to_string(order) + ")");
        if (static_cast<int>(ic_values.size()) != order)
            fail(text, f_ic.offset, f_ic.length, ParseErrorKind::MissingField,
                 "expected " + std::to_string(order) + " initial conditions, got " +
                     std::to_string(ic_values.size()));
        for (const DelayedSite& site : rhs_sites)
            if (site.deriv_order >= order)
                fail(text, site.offset, site.length, ParseErrorKind::DerivativeOrderTooHigh,
                     "derivative of order " + std::to_string(site.deriv_order) +
                         " on the right-hand side of an order-" + std::to_string(order) +
                         " problem");
        ProblemSpec spec;
        spec.order = order;
        spec.rhs = std::move(*rhs_expr);
        spec.ics = std::move(ic_values);
        spec.domain = domain_value;
        spec.exact = std::move(exact_value);
        spec.validate();
        return spec;
    }

    ParsedProblem assemble_vide() {
        for (const Field* f : {&f_order, &f_lhs, &f_rhs}) {
            if (f->present)
                fail(text, f->offset, f->length, ParseErrorKind::UnexpectedToken,
                     "key not allowed in an integro-differential problem");
        }
        if (!f_forcing.present) missing("vide_forcing");
        if (!f_kernel.present) missing("vide_kernel");
        if (!f_ic.present) missing("ic");
        if (ic_values.size() != 1)
            fail(text, f_ic.offset, f_ic.length, ParseErrorKind::MissingField,
                 "expected exactly 1 initial condition, got " + std::to_string(ic_values.size()));
        for (const DelayedSite& site : kernel_sites)
            if (site.deriv_order > 0)
                fail(text, site.offset, site.length, ParseErrorKind::DerivativeOrderTooHigh,
                     "kernel must not contain derivative terms");
        VideSpec spec;
        spec.forcing = std::move(*forcing_expr);
        spec.kernel = std::move(*kernel_expr);
        spec.ics = std::move(ic_values);
        spec.domain = domain_value;
        spec.exact = std::move(exact_value);
        spec.validate();
        return spec;
    }
};

// -------- canonical rendering --------

enum class Parent { None, Sum, Product };

bool leading_negative(const Expr& e) {
    if (e.kind() == ExprKind::Const) return e.value().sign() < 0;
    if (e.kind() == ExprKind::Product && e.children()[0].kind() == ExprKind::Const)
        return e.children()[0].value().sign() < 0;
    return false;
}

Expr flip_leading(const Expr& e) {
    if (e.kind() == ExprKind::Const) return Expr::constant(-e.value());
    std::vector<Expr> ch = e.children();
    ch[0] = Expr::constant(-ch[0].value());
    return Expr::product(std::move(ch));
}

void render(const Expr& e, std::string& out, Parent parent);

void render_sum_body(const Expr& e, std::string& out) {
    for (std::size_t i = 0; i < e.children().size(); ++i) {
        const Expr& child = e.children()[i];
        if (i == 0) {
            render(child, out, Parent::Sum);
        } else if (leading_negative(child)) {
            out += " - ";
            render(flip_leading(child), out, Parent::Sum);
        } else {
            out += " + ";
            render(child, out, Parent::Sum);
        }
    }
}

void render(const Expr& e, std::string& out, Parent parent) {
    switch (e.kind()) {
        case ExprKind::Const:
            out += e.value().str();
            return;
        case ExprKind::Monomial:
            out += e.power() == 1 ? "x" : "x^" + std::to_string(e.power());
            return;
        case ExprKind::Delayed: {
            out += 'y';
            out.append(static_cast<std::size_t>(e.deriv_order()), '\'');
            out += '(';
            const Rational& q = e.delay();
            if (q.is_one())
                out += 'x';
            else if (q.num() == 1)
                out += "x/" + q.den().str();
            else
                out += q.str() + "*x";
            out += ')';
            if (e.power() > 1) out += '^' + std::to_string(e.power());
            return;
        }
        case ExprKind::Sum: {
            const bool parens = parent != Parent::None;
            if (parens) out += '(';
            render_sum_body(e, out);
            if (parens) out += ')';
            return;
        }
        case ExprKind::Product: {
            const bool parens = parent == Parent::Product;
            if (parens) out += '(';
            for (std::size_t i = 0; i < e.children().size(); ++i) {
                if (i > 0) out += '*';
                render(e.children()[i], out, Parent::Product);
            }
            if (parens) out += ')';
            return;
        }
    }
}

std::string render_polynomial(const PowerSeries& p) {
    std::string out;
    for (int k = 0; k <= p.trunc_degree(); ++k) {
        if (p[k].is_zero()) continue;
        const bool neg = p[k].sign() < 0;
        if (out.empty()) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        out += abs(p[k]).str();
        if (k == 1)
            out += "*x";
        else if (k >= 2)
            out += "*x^" + std::to_string(k);
    }
    return out.empty() ? "0" : out;
}

std::string serialize_exact(const ExactSolution& ex) {
    if (ex.kind == ExactSolution::Kind::Polynomial)
        return "poly(" + render_polynomial(ex.poly) + ")";
    return "exp(" + render_polynomial(PowerSeries(ex.exp_inner.empty()
                                                      ? std::vector<Rational>{Rational(0)}
                                                      : ex.exp_inner)) +
           ")";
}

std::string join_rationals(const std::vector<Rational>& rs) {
    std::string out;
    for (std::size_t i = 0; i < rs.size(); ++i) {
        if (i > 0) out += ", ";
        out += rs[i].str();
    }
    return out;
}

}  // namespace

ParsedProblem parse_problem(std::string_view text) {
    try {
        return FileParser(text).run();
    } catch (const Abort& a) {
        return a.err;
    } catch (const std::exception& e) {
        return ParseError{SourceSpan{1, 1, 1}, ParseErrorKind::UnexpectedToken, e.what()};
    }
}

std::variant<Expr, ParseError> parse_expr(std::string_view text) {
    try {
        return parse_expr_range(Cursor{text, 0, text.size(), true}, true, nullptr);
    } catch (const Abort& a) {
        return a.err;
    } catch (const std::exception& e) {
        return ParseError{SourceSpan{1, 1, 1}, ParseErrorKind::UnexpectedToken, e.what()};
    }
}

std::string serialize_expr(const Expr& e) {
    std::string out;
    render(e, out, Parent::None);
    return out;
}

std::string serialize(const ProblemSpec& spec) {
    std::string out;
    out += "order = " + std::to_string(spec.order) + ";\n";
    out += "lhs = \"y" + std::string(static_cast<std::size_t>(spec.order), '\'') + "(x)\";\n";
    out += "rhs = \"" + serialize_expr(spec.rhs) + "\";\n";
    out += "ic = [" + join_rationals(spec.ics) + "];\n";
    out += "domain = [" + spec.domain.first.str() + ", " + spec.domain.second.str() + "];\n";
    if (spec.exact) out += "exact = " + serialize_exact(*spec.exact) + ";\n";
    return out;
}

std::string serialize(const VideSpec& spec) {
    std::string out;
    out += "vide_forcing = \"" + serialize_expr(spec.forcing) + "\";\n";
    out += "vide_kernel = \"" + serialize_expr(spec.kernel) + "\";\n";
    out += "ic = [" + join_rationals(spec.ics) + "];\n";
    out += "domain = [" + spec.domain.first.str() + ", " + spec.domain.second.str() + "];\n";
    if (spec.exact) out += "exact = " + serialize_exact(*spec.exact) + ";\n";
    return out;
}

}  // namespace stm
