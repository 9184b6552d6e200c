#include "stm/verify.hpp"

#include "stm/oracle.hpp"
#include "stm/parser.hpp"
#include "stm/solver.hpp"
#include "stm/sumudu.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace stm {

const std::vector<BuiltinProblem>& builtin_problems() {
    static const std::vector<BuiltinProblem> problems = {
        {"pantograph_x2",
         "# second-order pantograph problem with exact solution x^2\n"
         "order = 2;\n"
         "lhs = \"y''(x)\";\n"
         "rhs = \"8*y(x/2) - x*y'(x) + 2\";\n"
         "ic = [0, 0];\n"
         "domain = [0, 1];\n"
         "exact = poly(x^2);\n"},
        {"pantograph_cubic",
         "# nonlinear second-order pantograph problem with exact solution 1+x-x^3\n"
         "order = 2;\n"
         "lhs = \"y''(x)\";\n"
         "rhs = \"(8/3)*y'(x/2)*y(x) + 8*x^2*y(x/2) - 4/3 - 22/3*x - 7*x^2 - 5/3*x^3\";\n"
         "ic = [1, 1];\n"
         "domain = [0, 1];\n"
         "exact = poly(1 + x - x^3);\n"},
        {"pantograph_exp_x2",
         "# first-order pantograph problem with a quartic delay term, exact exp(x^2)\n"
         "order = 1;\n"
         "lhs = \"y'(x)\";\n"
         "rhs = \"2*x*y(x/2)^4\";\n"
         "ic = [1];\n"
         "domain = [0, 1];\n"
         "exact = exp(x^2);\n"},
        {"vide_exp",
         "# integro-differential problem y' = 1 + integral of y^2(t/2), exact exp(x)\n"
         "vide_forcing = \"1\";\n"
         "vide_kernel = \"y(x/2)^2\";\n"
         "ic = [1];\n"
         "domain = [0, 1];\n"
         "exact = exp(x);\n"},
    };
    return problems;
}

ProblemSpec parse_builtin_ode(const std::string& text) {
    ParsedProblem p = parse_problem(text);
    if (auto* err = std::get_if<ParseError>(&p))
        throw std::logic_error("builtin problem failed to parse: " + err->to_string());
    return std::get<ProblemSpec>(std::move(p));
}

VideSpec parse_builtin_vide(const std::string& text) {
    ParsedProblem p = parse_problem(text);
    if (auto* err = std::get_if<ParseError>(&p))
        throw std::logic_error("builtin problem failed to parse: " + err->to_string());
    return std::get<VideSpec>(std::move(p));
}

// ---------- generators ----------

namespace {

std::mt19937_64 seeded_rng(std::uint64_t seed) {
    return std::mt19937_64(seed * 0x9E3779B97F4A7C15ULL + 0xD1B54A32D192ED03ULL);
}

std::uint64_t pick(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

}  // namespace

Rational random_rational(std::mt19937_64& rng, int max_abs_num, int max_den) {
    const long long num =
        static_cast<long long>(pick(rng, 2 * static_cast<std::uint64_t>(max_abs_num) + 1)) -
        max_abs_num;
    const long long den = 1 + static_cast<long long>(pick(rng, static_cast<std::uint64_t>(max_den)));
    return Rational(BigInt(num), BigInt(den));
}

PowerSeries random_series(std::mt19937_64& rng, int trunc_degree, int max_abs_num, int max_den) {
    std::vector<Rational> c(static_cast<std::size_t>(trunc_degree) + 1, Rational(0));
    for (auto& x : c)
        if (pick(rng, 4) != 0) x = random_rational(rng, max_abs_num, max_den);
    return PowerSeries(std::move(c));
}

FuzzCase random_fuzz_case(std::uint64_t seed) {
    std::mt19937_64 rng = seeded_rng(seed);
    const int order = 1 + static_cast<int>(pick(rng, 3));
    const int degree = order + static_cast<int>(pick(rng, static_cast<std::uint64_t>(13 - order)));
    static const Rational delays[4] = {Rational(BigInt(1), BigInt(4)), Rational(BigInt(1), BigInt(3)),
                                       Rational(BigInt(1), BigInt(2)), Rational(1)};

    const int nterms = 1 + static_cast<int>(pick(rng, 4));
    std::vector<Expr> terms;
    for (int t = 0; t < nterms; ++t) {
        std::vector<Expr> factors;
        if (pick(rng, 2) == 0) factors.push_back(Expr::constant(random_rational(rng, 5, 4)));
        if (pick(rng, 2) == 0) factors.push_back(Expr::monomial(static_cast<int>(pick(rng, 4))));
        const int ndelayed = static_cast<int>(pick(rng, 3));
        for (int d = 0; d < ndelayed; ++d)
            factors.push_back(Expr::delayed(static_cast<int>(pick(rng, static_cast<std::uint64_t>(order))),
                                            delays[pick(rng, 4)], 1 + static_cast<int>(pick(rng, 3))));
        if (factors.empty()) factors.push_back(Expr::constant(random_rational(rng, 5, 4)));
        terms.push_back(factors.size() == 1 ? std::move(factors[0]) : Expr::product(std::move(factors)));
    }

    FuzzCase c{ProblemSpec{}, PowerSeries(degree)};
    c.spec.order = order;
    c.spec.rhs = terms.size() == 1 ? std::move(terms[0]) : Expr::sum(std::move(terms));
    for (int k = 0; k < order; ++k) c.spec.ics.push_back(random_rational(rng, 3, 3));
    c.spec.validate();
    c.y = random_series(rng, degree, 4, 4);
    return c;
}

namespace {

Expr random_expr(std::mt19937_64& rng, int depth, bool allow_delayed, int max_deriv) {
    const int kind = static_cast<int>(pick(rng, depth > 0 ? 6 : 4));
    switch (kind) {
        case 0:
            return Expr::constant(random_rational(rng, 9, 9));
        case 1:
            return Expr::monomial(static_cast<int>(pick(rng, 5)));
        case 2:
        case 3: {
            if (!allow_delayed) return Expr::constant(random_rational(rng, 9, 9));
            const long long den = 1 + static_cast<long long>(pick(rng, 6));
            const long long num = 1 + static_cast<long long>(pick(rng, static_cast<std::uint64_t>(den)));
            return Expr::delayed(max_deriv > 0 ? static_cast<int>(pick(rng, static_cast<std::uint64_t>(max_deriv) + 1)) : 0,
                                 Rational(BigInt(num), BigInt(den)), 1 + static_cast<int>(pick(rng, 3)));
        }
        case 4:
        case 5: {
            std::vector<Expr> children;
            const int n = 2 + static_cast<int>(pick(rng, 2));
            for (int i = 0; i < n; ++i)
                children.push_back(random_expr(rng, depth - 1, allow_delayed, max_deriv));
            return kind == 4 ? Expr::sum(std::move(children)) : Expr::product(std::move(children));
        }
    }
    return Expr::constant(Rational(0));
}

std::optional<ExactSolution> random_exact(std::mt19937_64& rng) {
    switch (pick(rng, 3)) {
        case 0:
            return std::nullopt;
        case 1:
            return ExactSolution::polynomial(random_series(rng, static_cast<int>(pick(rng, 6)), 9, 9));
        default: {
            std::vector<Rational> inner{Rational(0)};
            const int deg = 1 + static_cast<int>(pick(rng, 4));
            for (int k = 1; k <= deg; ++k) inner.push_back(random_rational(rng, 6, 6));
            return ExactSolution::exp_of_polynomial(std::move(inner));
        }
    }
}

}  // namespace

ProblemSpec random_problem_spec(std::mt19937_64& rng) {
    ProblemSpec spec;
    spec.order = 1 + static_cast<int>(pick(rng, 3));
    spec.rhs = random_expr(rng, 3, true, spec.order - 1);
    for (int k = 0; k < spec.order; ++k) spec.ics.push_back(random_rational(rng, 6, 6));
    spec.domain = {Rational(0), Rational(BigInt(1 + static_cast<long long>(pick(rng, 8))),
                                         BigInt(1 + static_cast<long long>(pick(rng, 4))))};
    spec.exact = random_exact(rng);
    spec.validate();
    return spec;
}

VideSpec random_vide_spec(std::mt19937_64& rng) {
    VideSpec spec;
    spec.forcing = random_expr(rng, 2, false, 0);
    spec.kernel = random_expr(rng, 2, true, 0);
    if (!contains_delayed(spec.kernel))
        spec.kernel = Expr::product({spec.kernel, Expr::delayed(0, Rational(BigInt(1), BigInt(2)), 1)});
    spec.ics = {random_rational(rng, 6, 6)};
    spec.domain = {Rational(0), Rational(BigInt(1 + static_cast<long long>(pick(rng, 8))),
                                         BigInt(1 + static_cast<long long>(pick(rng, 4))))};
    spec.exact = random_exact(rng);
    spec.validate();
    return spec;
}

std::string random_bytes(std::mt19937_64& rng, std::size_t max_len) {
    switch (pick(rng, 3)) {
        case 0: {
            std::string out(pick(rng, max_len + 1), '\0');
            for (auto& c : out) c = static_cast<char>(pick(rng, 256));
            return out;
        }
        case 1: {
            // printable soup reaches deeper parser states than raw bytes
            static const char alphabet[] = "xy'()[]=,;*/^+-0123456789 \n\"#ordelhsicmavptf";
            std::string out(pick(rng, max_len + 1), '\0');
            for (auto& c : out) c = alphabet[pick(rng, sizeof(alphabet) - 1)];
            return out;
        }
        default: {
            // valid problem text with a handful of byte-level mutations
            std::string out = serialize(random_problem_spec(rng));
            const std::size_t edits = 1 + pick(rng, 8);
            for (std::size_t e = 0; e < edits && !out.empty(); ++e) {
                const std::size_t at = pick(rng, out.size());
                switch (pick(rng, 3)) {
                    case 0: out[at] = static_cast<char>(pick(rng, 256)); break;
                    case 1: out.erase(at, 1); break;
                    default: out.insert(at, 1, static_cast<char>(pick(rng, 256))); break;
                }
            }
            return out;
        }
    }
}

// ---------- batch driver ----------

namespace {

BatchOutcome run_batch(std::size_t cases, bool parallel,
                       const std::function<std::string(std::size_t)>& case_fn) {
    BatchOutcome out;
    out.cases = cases;
    out.verdicts.assign(cases, 1);
    std::size_t first_idx = std::numeric_limits<std::size_t>::max();
    std::string first_msg;
    std::size_t failures = 0;

    const auto t0 = std::chrono::steady_clock::now();
    auto run_one = [&](std::size_t i) -> std::string {
        try {
            return case_fn(i);
        } catch (const std::exception& e) {
            return std::string("exception: ") + e.what();
        } catch (...) {
            return "unknown exception";
        }
    };

    if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16)
        for (long long i = 0; i < static_cast<long long>(cases); ++i) {
            std::string detail = run_one(static_cast<std::size_t>(i));
            if (!detail.empty()) {
                out.verdicts[static_cast<std::size_t>(i)] = 0;
#pragma omp critical
                {
                    ++failures;
                    if (static_cast<std::size_t>(i) < first_idx) {
                        first_idx = static_cast<std::size_t>(i);
                        first_msg = std::move(detail);
                    }
                }
            }
        }
#else
        parallel = false;
#endif
    }
    if (!parallel) {
        for (std::size_t i = 0; i < cases; ++i) {
            std::string detail = run_one(i);
            if (!detail.empty()) {
                out.verdicts[i] = 0;
                ++failures;
                if (i < first_idx) {
                    first_idx = i;
                    first_msg = std::move(detail);
                }
            }
        }
    }

    out.failures = failures;
    if (failures > 0)
        out.first_failure = "case " + std::to_string(first_idx) + ": " + first_msg;
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

}  // namespace

BatchOutcome oracle_equivalence_batch(std::size_t cases, bool parallel) {
    return run_batch(cases, parallel, [](std::size_t i) -> std::string {
        const FuzzCase c = random_fuzz_case(0x5EED0000ULL + i);
        const PowerSeries via_transform = stm_step(c.spec, c.y);
        const PowerSeries via_time = picard_step(c.spec, c.y);
        if (via_transform == via_time) return "";
        return "transform route " + to_text(via_transform) + " != time route " + to_text(via_time);
    });
}

BatchOutcome transform_roundtrip_batch(std::size_t cases, int max_degree, bool parallel) {
    return run_batch(cases, parallel, [max_degree](std::size_t i) -> std::string {
        std::mt19937_64 rng = seeded_rng(0xF00D0000ULL + i);
        const int degree = static_cast<int>(pick(rng, static_cast<std::uint64_t>(max_degree) + 1));
        const PowerSeries s = random_series(rng, degree, 9, 9);
        if (inverse(forward(s)) != s) return "inverse(forward(s)) != s for s = " + to_text(s);
        const USeries g(random_series(rng, degree, 9, 9).coeffs());
        if (forward(inverse(g)) != g) return "forward(inverse(G)) != G for G = " + to_text(g);
        return "";
    });
}

BatchOutcome derivative_image_batch(std::size_t cases, bool parallel) {
    return run_batch(cases, parallel, [](std::size_t i) -> std::string {
        std::mt19937_64 rng = seeded_rng(0xD1FF0000ULL + i);
        const int degree = 2 + static_cast<int>(pick(rng, 15));
        const int n = 1 + static_cast<int>(pick(rng, static_cast<std::uint64_t>(std::min(4, degree))));
        const PowerSeries g = random_series(rng, degree, 9, 9);

        // Initial conditions from derivative values at zero, an independent route.
        std::vector<Rational> ics;
        PowerSeries d = g;
        for (int k = 0; k < n; ++k) {
            ics.push_back(d[0]);
            d = differentiate(d);
        }

        const USeries image = nth_derivative_image(forward(g), ics, n);
        PowerSeries dng = g;
        for (int k = 0; k < n; ++k) dng = differentiate(dng);
        const USeries expect = forward(dng);
        for (int k = 0; k <= image.trunc_degree(); ++k)
            if (image[k] != expect[k])
                return "image coefficient " + std::to_string(k) + " is " + image[k].str() +
                       ", expected " + expect[k].str();
        return "";
    });
}

BatchOutcome parser_roundtrip_batch(std::size_t cases, bool parallel) {
    return run_batch(cases, parallel, [](std::size_t i) -> std::string {
        std::mt19937_64 rng = seeded_rng(0x9A25E000ULL + i);
        if (pick(rng, 2) == 0) {
            const ProblemSpec spec = random_problem_spec(rng);
            const std::string text = serialize(spec);
            ParsedProblem back = parse_problem(text);
            if (auto* err = std::get_if<ParseError>(&back))
                return "reparse failed: " + err->to_string() + " in\n" + text;
            if (!std::holds_alternative<ProblemSpec>(back)) return "reparse changed the problem kind";
            if (!(std::get<ProblemSpec>(back) == spec)) return "round trip changed the problem:\n" + text;
            if (serialize(std::get<ProblemSpec>(back)) != text) return "serialization is not idempotent";
        } else {
            const VideSpec spec = random_vide_spec(rng);
            const std::string text = serialize(spec);
            ParsedProblem back = parse_problem(text);
            if (auto* err = std::get_if<ParseError>(&back))
                return "reparse failed: " + err->to_string() + " in\n" + text;
            if (!std::holds_alternative<VideSpec>(back)) return "reparse changed the problem kind";
            if (!(std::get<VideSpec>(back) == spec)) return "round trip changed the problem:\n" + text;
            if (serialize(std::get<VideSpec>(back)) != text) return "serialization is not idempotent";
        }
        return "";
    });
}

namespace {

// (line, column) back to a byte offset; used to check spans stay inside the input.
bool span_inside(std::string_view text, const SourceSpan& span) {
    if (span.line < 1 || span.column < 1 || span.length < 1) return false;
    std::size_t offset = 0;
    int line = 1;
    while (line < span.line) {
        const std::size_t nl = text.find('\n', offset);
        if (nl == std::string_view::npos) return false;
        offset = nl + 1;
        ++line;
    }
    offset += static_cast<std::size_t>(span.column - 1);
    return offset <= text.size();
}

}  // namespace

BatchOutcome parser_robustness_batch(std::size_t cases, bool parallel) {
    return run_batch(cases, parallel, [](std::size_t i) -> std::string {
        std::mt19937_64 rng = seeded_rng(0xB17E5000ULL + i);
        const std::string input = random_bytes(rng, 200);
        const ParsedProblem result = parse_problem(input);
        if (const auto* err = std::get_if<ParseError>(&result)) {
            if (!span_inside(input, err->span))
                return "error span escapes the input: " + err->to_string();
        }
        return "";
    });
}

BatchOutcome quadrature_certification() {
    const auto t0 = std::chrono::steady_clock::now();
    BatchOutcome out;
    auto record = [&](bool ok, const std::string& what) {
        ++out.cases;
        out.verdicts.push_back(ok ? 1 : 0);
        if (!ok) {
            ++out.failures;
            if (out.first_failure.empty()) out.first_failure = what;
        }
    };

    const QuadratureRule rule64 = laguerre_rule(64);
    double factorial = 1.0;
    for (int k = 0; k <= 12; ++k) {
        if (k > 0) factorial *= k;
        const PowerSeries xk = PowerSeries::monomial(k, Rational(1), k);
        for (double u : {0.1, 0.5, 1.0}) {
            const double got = numeric_sumudu(xk, u, rule64);
            const double expect = factorial * std::pow(u, k);
            const double rel = std::fabs(got - expect) / expect;
            record(rel <= 1e-8, "x^" + std::to_string(k) + " at u=" + std::to_string(u) +
                                    ": relative error " + std::to_string(rel));
        }
    }

    for (int order : {1, 2, 4, 8, 16, 32, 64}) {
        const QuadratureRule rule = laguerre_rule(order);
        double w_sum = 0.0, wx_sum = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            w_sum += rule.weights[i];
            wx_sum += rule.weights[i] * rule.nodes[i];
        }
        record(std::fabs(w_sum - 1.0) <= 1e-12,
               "order " + std::to_string(order) + ": weight sum " + std::to_string(w_sum));
        record(std::fabs(wx_sum - 1.0) <= 1e-12,
               "order " + std::to_string(order) + ": first moment " + std::to_string(wx_sum));
        // exactness for e^-x x^k, k < 2*order
        double fact = 1.0;
        double moment_ok = true;
        for (int k = 0; k < 2 * order && k <= 20; ++k) {
            if (k > 0) fact *= k;
            double m = 0.0;
            for (std::size_t i = 0; i < rule.nodes.size(); ++i)
                m += rule.weights[i] * std::pow(rule.nodes[i], k);
            if (std::fabs(m - fact) / fact > 1e-10) moment_ok = false;
        }
        record(moment_ok, "order " + std::to_string(order) + ": polynomial exactness");
    }

    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

BatchOutcome stationarity_batch(int max_order) {
    const auto t0 = std::chrono::steady_clock::now();
    BatchOutcome out;
    for (int n = 1; n <= max_order; ++n) {
        const UMonomialMultiplier phi = lagrange_multiplier(n);
        // 1 + phi(u)/u^n must vanish: phi/u^n = sign * u^(power-n).
        const bool ok = phi.power == n && Rational(1) + Rational(phi.sign) == Rational(0);
        ++out.cases;
        out.verdicts.push_back(ok ? 1 : 0);
        if (!ok) {
            ++out.failures;
            if (out.first_failure.empty())
                out.first_failure = "order " + std::to_string(n) + ": multiplier is not -u^n";
        }
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

// ---------- golden chains and full-mode checks ----------

namespace {

VerifyCheck from_batch(std::string name, const BatchOutcome& b) {
    VerifyCheck c;
    c.name = std::move(name);
    c.pass = b.ok();
    c.cases = b.cases;
    c.detail = b.first_failure;
    return c;
}

VerifyCheck check_fail(std::string name, std::string detail, std::size_t cases = 1) {
    return VerifyCheck{std::move(name), false, cases, std::move(detail)};
}

VerifyCheck check_pass(std::string name, std::size_t cases = 1) {
    return VerifyCheck{std::move(name), true, cases, ""};
}

struct GoldenChain {
    std::vector<std::string> texts;  // canonical series text per iterate
    int converges_at = -1;           // 1-based fixed-point index, -1 if open-ended
};

VerifyCheck chain_check(std::string name, const ProblemSpec& spec, SolveMode mode, int degree,
                        int iters, const GoldenChain& golden) {
    const int want = std::min<int>(iters, static_cast<int>(golden.texts.size()));
    if (want < 1) return check_fail(std::move(name), "iterate budget must be >= 1");
    SolveOptions opts;
    opts.mode = mode;
    opts.max_iters = want;
    opts.trunc_degree = degree;
    const SolveResult result = solve(spec, opts);
    if (static_cast<int>(result.iterates.size()) != want)
        return check_fail(std::move(name), "got " + std::to_string(result.iterates.size()) +
                                               " iterates, expected " + std::to_string(want));
    for (int i = 0; i < want; ++i) {
        const PowerSeries expect = series_from_text(golden.texts[static_cast<std::size_t>(i)], degree);
        if (!(result.iterates[static_cast<std::size_t>(i)] == expect))
            return check_fail(std::move(name),
                              "iterate " + std::to_string(i + 1) + " is " +
                                  to_text(result.iterates[static_cast<std::size_t>(i)]) +
                                  ", expected " + golden.texts[static_cast<std::size_t>(i)]);
    }
    const bool expect_converged = golden.converges_at > 0 && want > golden.converges_at;
    if (result.converged != expect_converged)
        return check_fail(std::move(name), std::string("convergence flag is ") +
                                               (result.converged ? "set" : "clear") +
                                               ", expected the opposite");
    if (expect_converged && result.fixed_point_at != golden.converges_at)
        return check_fail(std::move(name), "fixed point reported at iteration " +
                                               std::to_string(result.fixed_point_at.value_or(-1)) +
                                               ", expected " + std::to_string(golden.converges_at));
    return check_pass(std::move(name), static_cast<std::size_t>(want));
}

}  // namespace

VerifyReport run_verify(const VerifyConfig& cfg) {
    VerifyReport report;
    const auto& problems = builtin_problems();
    const ProblemSpec quadratic = parse_builtin_ode(problems[0].text);
    const ProblemSpec cubic = parse_builtin_ode(problems[1].text);
    const ProblemSpec quartic = parse_builtin_ode(problems[2].text);
    const VideSpec vide = parse_builtin_vide(problems[3].text);

    const GoldenChain quadratic_chain{{"0", "1 x^2", "1 x^2"}, 2};
    const GoldenChain cubic_chain{{"1 + 1 x", "1 + 1 x + -1 x^3", "1 + 1 x + -1 x^3"}, 2};
    const GoldenChain quartic_chain{
        {"1", "1 + 1 x^2", "1 + 1 x^2 + 1/2 x^4", "1 + 1 x^2 + 1/2 x^4 + 1/6 x^6"}, -1};
    const GoldenChain exp_chain{{"1 + 1 x", "1 + 1 x + 1/2 x^2", "1 + 1 x + 1/2 x^2 + 1/6 x^3",
                                 "1 + 1 x + 1/2 x^2 + 1/6 x^3 + 1/24 x^4"},
                                -1};

    report.checks.push_back(chain_check("pantograph x^2: full-mode chain", quadratic,
                                        SolveMode::Full, 8, cfg.chain_iters, quadratic_chain));
    report.checks.push_back(chain_check("pantograph x^2: paper-mode chain", quadratic,
                                        SolveMode::Paper, 8, cfg.chain_iters, quadratic_chain));

    // residual of the exact fixed point must vanish identically
    {
        const PowerSeries fixed = series_from_text("1 x^2", 8);
        const auto [res, res_max] = residual(quadratic, fixed, Grid{});
        if (res.is_zero() && res_max == 0.0)
            report.checks.push_back(check_pass("pantograph x^2: zero residual at the fixed point"));
        else
            report.checks.push_back(check_fail("pantograph x^2: zero residual at the fixed point",
                                               "residual " + to_text(res) + ", max " +
                                                   std::to_string(res_max)));
    }

    report.checks.push_back(chain_check("pantograph 1+x-x^3: paper-mode chain", cubic,
                                        SolveMode::Paper, 16, cfg.chain_iters, cubic_chain));

    // full-mode second iterate, fixed-point preservation, low-degree limit
    {
        const std::string name = "pantograph 1+x-x^3: full-mode step and limit";
        const PowerSeries y1 = initial_approximation(cubic.ics, 8);
        const PowerSeries y2 = stm_step(cubic, y1);
        const PowerSeries y2_expect = series_from_text("1 + 1 x + -1 x^3 + 1/12 x^4 + 7/60 x^5", 8);
        const PowerSeries exact = series_from_text("1 + 1 x + -1 x^3", 8);
        if (!(y2 == y2_expect)) {
            report.checks.push_back(check_fail(name, "second iterate is " + to_text(y2)));
        } else if (!(stm_step(cubic, exact) == exact)) {
            report.checks.push_back(check_fail(name, "exact polynomial is not a fixed point"));
        } else {
            SolveOptions opts;
            opts.max_iters = 20;
            opts.trunc_degree = 8;
            const SolveResult r = solve(cubic, opts);
            const PowerSeries& last = r.iterates.back();
            const bool low_ok = last[0] == Rational(1) && last[1] == Rational(1) &&
                                last[2] == Rational(0) && last[3] == Rational(-1);
            if (low_ok)
                report.checks.push_back(check_pass(name, 3));
            else
                report.checks.push_back(
                    check_fail(name, "low-degree coefficients did not settle: " + to_text(last)));
        }
    }

    report.checks.push_back(chain_check("pantograph exp(x^2): paper-mode chain", quartic,
                                        SolveMode::Paper, 16, cfg.chain_iters, quartic_chain));

    // full mode at degree 12: iterate k matches the exact Maclaurin
    // coefficients through degree 2k-2
    {
        const std::string name = "pantograph exp(x^2): full-mode Maclaurin prefixes";
        SolveOptions opts;
        opts.max_iters = 8;
        opts.trunc_degree = 12;
        const SolveResult r = solve(quartic, opts);
        const PowerSeries exact12 = taylor_of_exact(*quartic.exact, 12);
        std::string detail;
        for (int k = 1; k <= 7 && k <= static_cast<int>(r.iterates.size()); ++k) {
            const int upto = 2 * k - 2;
            const PowerSeries got = retruncate(r.iterates[static_cast<std::size_t>(k - 1)], upto);
            const PowerSeries want = retruncate(exact12, upto);
            if (!(got == want)) {
                detail = "iterate " + std::to_string(k) + " disagrees through degree " +
                         std::to_string(upto) + ": " + to_text(got);
                break;
            }
        }
        report.checks.push_back(detail.empty() ? check_pass(name, 7) : check_fail(name, detail));
    }

    // integro-differential reduction, chain, and error bound
    {
        const std::string name = "integro-differential exp(x): reduction";
        const ProblemSpec reduced = vide_reduce(vide, 16);
        const Expr want_rhs = Expr::delayed(0, Rational(BigInt(1), BigInt(2)), 2);
        if (reduced.order == 2 && reduced.rhs == want_rhs &&
            reduced.ics == std::vector<Rational>{Rational(1), Rational(1)})
            report.checks.push_back(check_pass(name));
        else
            report.checks.push_back(check_fail(name, "reduced problem has unexpected shape"));

        report.checks.push_back(chain_check("integro-differential exp(x): paper-mode chain",
                                            vide_reduce(vide, 16), SolveMode::Paper, 16,
                                            cfg.chain_iters, exp_chain));

        const std::string err_name = "integro-differential exp(x): full-mode error bound";
        SolveOptions opts;
        opts.max_iters = 16;
        opts.trunc_degree = 8;
        const SolveResult r = solve(vide_reduce(vide, 8), opts);
        const double bound = std::exp(1.0) - (1.0 + 1.0 + 1.0 / 2 + 1.0 / 6 + 1.0 / 24 + 1.0 / 120 +
                                              1.0 / 720 + 1.0 / 5040 + 1.0 / 40320);
        const double err = r.error_max.value_or(-1.0);
        if (err >= 0.95 * bound && err <= 1.05 * bound && err <= 3.1e-6)
            report.checks.push_back(check_pass(err_name));
        else
            report.checks.push_back(
                check_fail(err_name, "max error " + std::to_string(err) + " outside the band around " +
                                         std::to_string(bound)));
    }

    report.checks.push_back(from_batch("oracle equivalence (transform vs time domain)",
                                       oracle_equivalence_batch(cfg.fuzz_cases, cfg.parallel)));
    report.checks.push_back(from_batch("transform round trip",
                                       transform_roundtrip_batch(cfg.fuzz_cases, 64, cfg.parallel)));
    report.checks.push_back(
        from_batch("derivative image consistency", derivative_image_batch(500, cfg.parallel)));
    report.checks.push_back(from_batch("multiplier stationarity", stationarity_batch(6)));
    report.checks.push_back(from_batch("quadrature certification", quadrature_certification()));
    report.checks.push_back(from_batch("parser round trip",
                                       parser_roundtrip_batch(cfg.parser_fuzz_cases, cfg.parallel)));
    report.checks.push_back(from_batch("parser robustness",
                                       parser_robustness_batch(cfg.robustness_cases, cfg.parallel)));

    // malformed inputs must produce the documented error kinds
    {
        const std::string name = "parser error kinds";
        std::string detail;
        auto expect_kind = [&](const ParsedProblem& p, ParseErrorKind kind, const char* what) {
            const auto* err = std::get_if<ParseError>(&p);
            if (!err)
                detail = std::string(what) + ": expected a parse error";
            else if (err->kind != kind)
                detail = std::string(what) + ": got '" + to_string(err->kind) + "', expected '" +
                         to_string(kind) + "'";
        };
        expect_kind(parse_problem("order = 2;\nlhs = \"y''(x)\";\nrhs = \"2\";\nic = [0, 0, 0];\n"),
                    ParseErrorKind::MissingField, "ic arity");
        if (detail.empty()) {
            const auto e = parse_expr("y(2*x)");
            if (const auto* err = std::get_if<ParseError>(&e)) {
                if (err->kind != ParseErrorKind::DelayOutOfRange)
                    detail = std::string("y(2*x): got '") + to_string(err->kind) + "'";
            } else {
                detail = "y(2*x): expected a parse error";
            }
        }
        if (detail.empty())
            expect_kind(parse_problem("order = 1;\nlhs = \"y'(x)\";\nrhs = \"1/0\";\nic = [0];\n"),
                        ParseErrorKind::BadRational, "zero denominator");
        if (detail.empty())
            expect_kind(parse_problem("order = 1;\norder = 1;\nlhs = \"y'(x)\";\nrhs = \"1\";\nic = [0];\n"),
                        ParseErrorKind::DuplicateField, "duplicate key");
        report.checks.push_back(detail.empty() ? check_pass(name, 4)
                                               : check_fail(name, detail, 4));
    }

    return report;
}

bool VerifyReport::all_pass() const {
    for (const VerifyCheck& c : checks)
        if (!c.pass) return false;
    return true;
}

}  // namespace stm
