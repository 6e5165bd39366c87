#pragma once

#include "clusterscat/separation.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace cs {

struct SuiteOptions {
    std::uint64_t seed = 1;
    std::size_t budget = 0;  // number of random cases; 0 picks the suite default
    long ell = 8;
};

// Identity name -> checks and failures, in the order they were first recorded.
struct SuiteResult {
    std::string name;
    std::vector<std::pair<std::string, Report>> identities;

    Report& operator[](const std::string& identity);
    bool ok() const;
    std::size_t checks() const;
    std::string str() const;
};

const std::vector<std::string>& suite_names();
// Throws std::invalid_argument for an unknown name.
SuiteResult run_suite(const std::string& name, const SuiteOptions& opt = {});

struct RandomCase {
    ExchangeMatrix B0;
    Walk walk;
};
// Random skew-symmetrizable B0 (rank in [2, max_rank], core entries in [-smax, smax], symmetrizer
// entries in {1, 2}) with a reduced walk of length <= max_depth. With guard > 0 the walk stops before
// the first step producing |b_ij b_ji| > guard.
std::vector<RandomCase> random_cases(std::size_t count, std::size_t max_rank, std::size_t max_depth, long smax,
                                     std::uint64_t seed, long guard = 0);

// Every vertex within `depth` steps of t0 (reduced walks, breadth-first).
std::vector<PatternPoint> pattern_ball(const ExchangeMatrix& B0, std::size_t depth, bool with_f = true);

bool columns_sign_coherent(const IntMatrix& m);

// C-matrix at t0 in the transposed pattern whose initial vertex is t.
IntMatrix transposed_pattern_c(const PatternPoint& p);

}  // namespace cs
