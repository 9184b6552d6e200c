#pragma once

#include "stm/model.hpp"
#include "stm/series.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace stm {

/// The four built-in showcase problems, in the problem-file DSL. `stm verify`
/// and the benchmark parse these instead of reading files so the binary is
/// self-contained.
struct BuiltinProblem {
    std::string name;
    std::string text;
};
const std::vector<BuiltinProblem>& builtin_problems();

ProblemSpec parse_builtin_ode(const std::string& text);
VideSpec parse_builtin_vide(const std::string& text);

// ---- deterministic fuzz generators (seeded, reproducible) ----

Rational random_rational(std::mt19937_64& rng, int max_abs_num, int max_den);
PowerSeries random_series(std::mt19937_64& rng, int trunc_degree, int max_abs_num = 6,
                          int max_den = 6);

/// Problem + candidate iterate for the transform-vs-time-domain equivalence
/// fuzz: orders 1..3, polynomial right-hand sides, delays in
/// {1/4, 1/3, 1/2, 1}, truncation degrees up to 12.
struct FuzzCase {
    ProblemSpec spec;
    PowerSeries y;
};
FuzzCase random_fuzz_case(std::uint64_t seed);

/// Richer random specs for serializer/parser round trips (nested sums and
/// products, arbitrary small delays, optional exact solutions).
ProblemSpec random_problem_spec(std::mt19937_64& rng);
VideSpec random_vide_spec(std::mt19937_64& rng);
std::string random_bytes(std::mt19937_64& rng, std::size_t max_len);

// ---- batch kernels ----
//
// Each batch runs independent cases either serially or under OpenMP; the two
// paths are bit-identical because every case derives solely from its index.
// The serial path is the reference the tests compare against, and
// tools/bench_verify times one against the other.

struct BatchOutcome {
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::string first_failure;            // detail of the lowest failing index
    double seconds = 0.0;
    std::vector<std::uint8_t> verdicts;   // 1 = pass, indexed by case

    bool ok() const { return failures == 0; }
};

BatchOutcome oracle_equivalence_batch(std::size_t cases, bool parallel);
BatchOutcome transform_roundtrip_batch(std::size_t cases, int max_degree, bool parallel);
BatchOutcome derivative_image_batch(std::size_t cases, bool parallel);
BatchOutcome parser_roundtrip_batch(std::size_t cases, bool parallel);
BatchOutcome parser_robustness_batch(std::size_t cases, bool parallel);
BatchOutcome quadrature_certification();
BatchOutcome stationarity_batch(int max_order);

// ---- the self-verification suite behind `stm verify` ----

struct VerifyCheck {
    std::string name;
    bool pass = false;
    std::size_t cases = 0;
    std::string detail;  // empty when passing
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;
    bool all_pass() const;
};

struct VerifyConfig {
    int chain_iters = 4;                   // iterate budget for the golden chains
    std::size_t fuzz_cases = 1000;
    std::size_t parser_fuzz_cases = 500;
    std::size_t robustness_cases = 100000;
    bool parallel = true;
};

VerifyReport run_verify(const VerifyConfig& cfg);

}  // namespace stm
