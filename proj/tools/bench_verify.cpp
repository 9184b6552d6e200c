// Times the verification batch kernels serially and under OpenMP and checks
// that both paths reach identical verdicts.

#include "stm/verify.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

struct BenchRow {
    std::string name;
    std::size_t cases;
    double serial_s;
    double parallel_s;
    bool match;
    bool clean;
};

BenchRow bench(const std::string& name,
               const std::function<stm::BatchOutcome(bool parallel)>& run, int repeats) {
    stm::BatchOutcome serial, parallel;
    double serial_s = 1e300, parallel_s = 1e300;
    for (int r = 0; r < repeats; ++r) {
        serial = run(false);
        serial_s = std::min(serial_s, serial.seconds);
        parallel = run(true);
        parallel_s = std::min(parallel_s, parallel.seconds);
    }
    return BenchRow{name,
                    serial.cases,
                    serial_s,
                    parallel_s,
                    serial.verdicts == parallel.verdicts && serial.failures == parallel.failures,
                    serial.ok() && parallel.ok()};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"serial vs OpenMP timing for the verification batches"};
    std::size_t cases = 2000;
    int repeats = 3;
    app.add_option("--cases", cases, "cases per batch")->capture_default_str();
    app.add_option("--repeats", repeats, "timing repeats (best-of)")->capture_default_str();
    CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
    std::cout << "threads: " << omp_get_max_threads() << "\n";
#else
    std::cout << "threads: 1 (compiled without OpenMP)\n";
#endif

    std::vector<BenchRow> rows;
    rows.push_back(bench(
        "oracle equivalence",
        [&](bool p) { return stm::oracle_equivalence_batch(cases, p); }, repeats));
    rows.push_back(bench(
        "transform round trip",
        [&](bool p) { return stm::transform_roundtrip_batch(cases, 64, p); }, repeats));
    rows.push_back(bench(
        "parser round trip",
        [&](bool p) { return stm::parser_roundtrip_batch(cases, p); }, repeats));
    rows.push_back(bench(
        "parser robustness",
        [&](bool p) { return stm::parser_robustness_batch(10 * cases, p); }, repeats));

    std::printf("%-22s %9s %12s %12s %9s %7s %6s\n", "batch", "cases", "serial[s]", "openmp[s]",
                "speedup", "match", "clean");
    bool all_ok = true;
    for (const BenchRow& r : rows) {
        std::printf("%-22s %9zu %12.4f %12.4f %8.2fx %7s %6s\n", r.name.c_str(), r.cases,
                    r.serial_s, r.parallel_s, r.serial_s / r.parallel_s, r.match ? "yes" : "NO",
                    r.clean ? "yes" : "NO");
        all_ok = all_ok && r.match && r.clean;
    }
    return all_ok ? 0 : 1;
}
