// End-to-end checks of the installed CLI: exit codes, printed chains, and
// emission files, run through the real binary.

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

fs::path scratch_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("stm_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

RunResult run_cli(const std::string& args) {
    const fs::path out = scratch_dir() / "stdout.txt";
    const fs::path err = scratch_dir() / "stderr.txt";
    const std::string cmd = std::string(STM_CLI_PATH) + " " + args + " > " + out.string() +
                            " 2> " + err.string();
    const int rc = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

std::string problem(const char* name) {
    return (fs::path(STM_PROBLEMS_DIR) / name).string();
}

}  // namespace

TEST_CASE("solve prints the chain and reports the fixed point") {
    const RunResult r = run_cli("solve " + problem("pantograph_x2.stm") + " --mode full --degree 8");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("y1 = 0\n") != std::string::npos);
    CHECK(r.out.find("y2 = 1 x^2\n") != std::string::npos);
    CHECK(r.out.find("fixed point at iteration 2\n") != std::string::npos);
    CHECK(r.out.find("residual_max = 0\n") != std::string::npos);
    CHECK(r.out.find("error_max = 0\n") != std::string::npos);
}

TEST_CASE("paper-mode run prints the truncated chain and exits 3 before convergence") {
    const RunResult r =
        run_cli("solve " + problem("vide_exp.stm") + " --mode paper --iters 4");
    CHECK(r.exit_code == 3);
    CHECK(r.out.find("y4 = 1 + 1 x + 1/2 x^2 + 1/6 x^3 + 1/24 x^4\n") != std::string::npos);
    CHECK(r.out.find("no fixed point within 4 iterates\n") != std::string::npos);
}

TEST_CASE("missing input file exits 4") {
    const RunResult r = run_cli("solve " + (scratch_dir() / "nope.stm").string());
    CHECK(r.exit_code == 4);
    CHECK(!r.err.empty());
}

TEST_CASE("parse errors exit 2 and carry a position") {
    const fs::path bad = scratch_dir() / "bad.stm";
    std::ofstream(bad) << "order = 2;\nlhs = \"y''(x)\";\nrhs = \"y(2*x)\";\nic = [0, 0];\n";
    const RunResult r = run_cli("solve " + bad.string());
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("delay out of range") != std::string::npos);
    CHECK(r.err.find("3:") != std::string::npos);  // error on line 3
}

TEST_CASE("csv emission matches the library output") {
    const fs::path out = scratch_dir() / "plot.csv";
    const RunResult r = run_cli("solve " + problem("pantograph_x2.stm") +
                                " --degree 8 --emit csv --grid 0:1:0.25 --out " + out.string());
    CHECK(r.exit_code == 0);
    CHECK(slurp(out) ==
          "x,approx,exact,abs_err\n"
          "0,0,0,0\n"
          "0.25,0.0625,0.0625,0\n"
          "0.5,0.25,0.25,0\n"
          "0.75,0.5625,0.5625,0\n"
          "1,1,1,0\n");
}

TEST_CASE("json emission is written even without convergence") {
    const fs::path out = scratch_dir() / "plot.json";
    const RunResult r = run_cli("solve " + problem("pantograph_exp_x2.stm") +
                                " --mode paper --iters 3 --emit json --out " + out.string());
    CHECK(r.exit_code == 3);
    const std::string text = slurp(out);
    CHECK(text.find("\"iterates\"") != std::string::npos);
    CHECK(text.find("\"1/2\"") != std::string::npos);
}

TEST_CASE("identical invocations produce identical bytes") {
    const std::string args = "solve " + problem("pantograph_cubic.stm") + " --mode paper";
    const RunResult a = run_cli(args);
    const RunResult b = run_cli(args);
    CHECK(a.exit_code == b.exit_code);
    CHECK(a.out == b.out);
}

TEST_CASE("residual subcommand reports the final residual") {
    const RunResult r =
        run_cli("residual " + problem("pantograph_cubic.stm") + " --mode paper");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("residual = 0\n") != std::string::npos);
    CHECK(r.out.find("residual_max = 0\n") != std::string::npos);
}

TEST_CASE("verify runs the built-in suite") {
    const RunResult r = run_cli("verify --iters 4");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("overall: PASS") != std::string::npos);
    CHECK(r.out.find("[FAIL]") == std::string::npos);
}

TEST_CASE("verify honors a constrained iterate budget") {
    const RunResult r = run_cli("verify --iters 1");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("overall: PASS") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run_cli("solve").exit_code == 2);                     // missing file
    CHECK(run_cli("frobnicate x.stm").exit_code == 2);          // unknown subcommand
    const RunResult r = run_cli("solve " + problem("pantograph_x2.stm") + " --grid nonsense");
    CHECK(r.exit_code == 2);
}
