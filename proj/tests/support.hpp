#pragma once

#include "clusterscat/matrix.hpp"
#include "clusterscat/pattern.hpp"

#include <random>
#include <vector>

namespace cs::testing {

inline std::mt19937_64& rng() {
    static std::mt19937_64 g(20240917);
    return g;
}

inline long uniform(long lo, long hi, std::mt19937_64& g = rng()) {
    return std::uniform_int_distribution<long>(lo, hi)(g);
}

inline IntMatrix random_matrix(std::size_t r, std::size_t c, long lo, long hi, std::mt19937_64& g = rng()) {
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = uniform(lo, hi, g);
    return m;
}

inline IntMatrix random_zero_diagonal(std::size_t n, long lo, long hi, std::mt19937_64& g = rng()) {
    IntMatrix m = random_matrix(n, n, lo, hi, g);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 0;
    return m;
}

// B = diag(delta) S with S skew-symmetric; the symmetrizer is then delta up to scaling.
inline ExchangeMatrix random_exchange(std::size_t n, long smax, long dmax, std::mt19937_64& g = rng()) {
    std::vector<long> delta(n);
    for (auto& x : delta) x = uniform(1, dmax, g);
    IntMatrix b(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            long s = uniform(-smax, smax, g);
            b(i, j) = delta[i] * s;
            b(j, i) = -delta[j] * s;
        }
    return ExchangeMatrix(b);
}

inline Walk random_walk(std::size_t n, std::size_t len, std::mt19937_64& g = rng()) {
    std::vector<std::size_t> d;
    while (d.size() < len) {
        std::size_t k = static_cast<std::size_t>(uniform(0, static_cast<long>(n) - 1, g));
        if (!d.empty() && d.back() == k) continue;
        d.push_back(k);
    }
    return Walk(d);
}

struct Case {
    ExchangeMatrix B0;
    Walk walk;
};

inline bool wild(const ExchangeMatrix& B, long limit) {
    for (std::size_t i = 0; i < B.n(); ++i)
        for (std::size_t j = 0; j < B.n(); ++j)
            if (abs(B(i, j) * B(j, i)) > limit) return true;
    return false;
}

// Fixed-seed corpus of (B0, walk) with rank in [2, max_rank] and walk length <= max_depth.
// With guard > 0 a walk stops before the first step producing |b_ij b_ji| > guard, which
// keeps F-polynomials small enough to expand.
inline std::vector<Case> corpus(std::size_t count, std::size_t max_rank, std::size_t max_depth, long smax,
                                std::uint64_t seed, long guard = 0) {
    std::mt19937_64 g(seed);
    std::vector<Case> out;
    while (out.size() < count) {
        std::size_t n = static_cast<std::size_t>(uniform(2, static_cast<long>(max_rank), g));
        ExchangeMatrix B = random_exchange(n, smax, 2, g);
        Walk w = random_walk(n, static_cast<std::size_t>(uniform(0, static_cast<long>(max_depth), g)), g);
        if (guard > 0) {
            ExchangeMatrix Bt = B;
            std::size_t keep = 0;
            for (std::size_t k : w.dirs()) {
                Bt = Bt.mutate(k);
                if (wild(Bt, guard)) break;
                ++keep;
            }
            w = w.prefix(keep);
        }
        out.push_back({B, w});
    }
    return out;
}

}  // namespace cs::testing
