#include "stm/emit.hpp"
#include "stm/model.hpp"
#include "stm/parser.hpp"
#include "stm/solver.hpp"
#include "stm/verify.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitParseError = 2;
constexpr int kExitNotConverged = 3;
constexpr int kExitIo = 4;

struct RunConfig {
    std::string input_path;
    std::string mode = "full";
    int iters = 16;
    int degree = 16;
    std::string emit = "none";
    std::string out_path;
    std::string grid = "0:1:0.01";
};

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

bool parse_grid(const std::string& text, stm::Grid& grid) {
    double a = 0, b = 0, s = 0;
    char extra = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%lf%c", &a, &b, &s, &extra) != 3) return false;
    if (!(s > 0) || !(a < b)) return false;
    grid = {a, b, s};
    return true;
}

int load_problem(const RunConfig& cfg, stm::ProblemSpec& spec) {
    std::ifstream in(cfg.input_path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot open '" << cfg.input_path << "'\n";
        return kExitIo;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();

    stm::ParsedProblem parsed = stm::parse_problem(text);
    if (const auto* err = std::get_if<stm::ParseError>(&parsed)) {
        std::cerr << cfg.input_path << ":" << err->to_string() << "\n";
        return kExitParseError;
    }
    if (auto* vide = std::get_if<stm::VideSpec>(&parsed)) {
        spec = stm::vide_reduce(*vide, cfg.degree);
        return kExitOk;
    }
    spec = std::get<stm::ProblemSpec>(std::move(parsed));
    return kExitOk;
}

int solve_from_config(const RunConfig& cfg, stm::ProblemSpec& spec, stm::SolveOptions& opts,
                      stm::SolveResult& result) {
    if (int rc = load_problem(cfg, spec); rc != kExitOk) return rc;
    opts.mode = cfg.mode == "paper" ? stm::SolveMode::Paper : stm::SolveMode::Full;
    opts.max_iters = cfg.iters;
    opts.trunc_degree = cfg.degree;
    if (!parse_grid(cfg.grid, opts.grid)) {
        std::cerr << "error: bad --grid value '" << cfg.grid << "' (want start:end:step)\n";
        return kExitParseError;
    }
    try {
        result = stm::solve(spec, opts);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParseError;
    }
    return kExitOk;
}

int write_emission(const RunConfig& cfg, const stm::ProblemSpec& spec,
                   const stm::SolveOptions& opts, const stm::SolveResult& result) {
    if (cfg.emit == "none") return kExitOk;
    const std::string content = cfg.emit == "csv" ? stm::emit_csv(result, spec.exact, opts.grid)
                                                  : stm::emit_json(result, spec.exact, opts.grid);
    if (cfg.out_path.empty()) {
        std::cout << content;
        return kExitOk;
    }
    std::ofstream out(cfg.out_path, std::ios::binary);
    if (!out || !(out << content)) {
        std::cerr << "error: cannot write '" << cfg.out_path << "'\n";
        return kExitIo;
    }
    return kExitOk;
}

void print_status(const stm::SolveResult& result, int iters) {
    if (result.converged)
        std::cout << "fixed point at iteration " << *result.fixed_point_at << "\n";
    else
        std::cout << "no fixed point within " << iters << " iterates\n";
    std::cout << "residual_max = " << fmt17(result.residual_max) << "\n";
    if (result.error_max) std::cout << "error_max = " << fmt17(*result.error_max) << "\n";
}

int cmd_solve(const RunConfig& cfg) {
    stm::ProblemSpec spec;
    stm::SolveOptions opts;
    stm::SolveResult result;
    if (int rc = solve_from_config(cfg, spec, opts, result); rc != kExitOk) return rc;

    for (std::size_t i = 0; i < result.iterates.size(); ++i)
        std::cout << "y" << (i + 1) << " = " << stm::to_text(result.iterates[i]) << "\n";
    print_status(result, cfg.iters);

    if (int rc = write_emission(cfg, spec, opts, result); rc != kExitOk) return rc;
    return result.converged ? kExitOk : kExitNotConverged;
}

int cmd_residual(const RunConfig& cfg) {
    stm::ProblemSpec spec;
    stm::SolveOptions opts;
    stm::SolveResult result;
    if (int rc = solve_from_config(cfg, spec, opts, result); rc != kExitOk) return rc;

    const auto [series, res_max] = stm::residual(spec, result.iterates.back(), opts.grid);
    std::cout << "residual = " << stm::to_text(series) << "\n";
    std::cout << "residual_max = " << fmt17(res_max) << "\n";

    if (int rc = write_emission(cfg, spec, opts, result); rc != kExitOk) return rc;
    return result.converged ? kExitOk : kExitNotConverged;
}

int cmd_verify(const RunConfig& cfg) {
    stm::VerifyConfig vcfg;
    vcfg.chain_iters = cfg.iters;
    const stm::VerifyReport report = stm::run_verify(vcfg);
    std::size_t passed = 0;
    for (const stm::VerifyCheck& c : report.checks) {
        std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << " (" << c.cases
                  << (c.cases == 1 ? " case)" : " cases)");
        if (!c.pass) std::cout << " -- " << c.detail;
        std::cout << "\n";
        if (c.pass) ++passed;
    }
    std::cout << "overall: " << (report.all_pass() ? "PASS" : "FAIL") << " (" << passed << "/"
              << report.checks.size() << " checks)\n";
    return report.all_pass() ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Power-series solver for pantograph-type delay equations"};
    app.require_subcommand(1);

    RunConfig cfg;
    auto add_common = [&cfg](CLI::App* sub, bool needs_file) {
        auto* pos = sub->add_option("file", cfg.input_path, "problem file");
        if (needs_file) pos->required();
        sub->add_option("--mode", cfg.mode, "full | paper")
            ->check(CLI::IsMember({"full", "paper"}))
            ->capture_default_str();
        sub->add_option("--iters", cfg.iters, "iterate budget including the initial approximation")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        sub->add_option("--degree", cfg.degree, "truncation degree")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        sub->add_option("--emit", cfg.emit, "csv | json | none")
            ->check(CLI::IsMember({"csv", "json", "none"}))
            ->capture_default_str();
        sub->add_option("--out", cfg.out_path, "emission output path (stdout when omitted)");
        sub->add_option("--grid", cfg.grid, "evaluation grid start:end:step")
            ->capture_default_str();
    };

    CLI::App* solve = app.add_subcommand("solve", "solve a problem file and print the iterates");
    add_common(solve, true);
    CLI::App* residual =
        app.add_subcommand("residual", "solve, then report the final iterate's residual");
    add_common(residual, true);
    CLI::App* verify = app.add_subcommand("verify", "run the built-in verification suite");
    add_common(verify, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitParseError;
    }

    try {
        if (solve->parsed()) return cmd_solve(cfg);
        if (residual->parsed()) return cmd_residual(cfg);
        return cmd_verify(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
}
