#pragma once

// Monte Carlo inner loop: count samples of n d-dimensional vectors that
// are exactly pairwise equidistant. Scalar reference kernel plus an AVX2
// variant selected at runtime; both consume the same per-sample Philox
// streams, so hit counts are bitwise identical wherever both run.

#include <cstdint>
#include <string>
#include <vector>

namespace eqd {

struct MCJob {
    int n = 0;    // vectors
    int k = 0;    // support size
    int ell = 1;  // integers per squared-difference entry
    long d = 0;   // coordinates per vector
    // (x_a - x_b)^2 embedded as ell integers, flattened a*k*ell + b*ell + s.
    std::vector<std::int32_t> table;
    // Cumulative probability numerators, cdf[k-1] == denom.
    std::vector<std::uint32_t> cdf;
    std::uint32_t denom = 0;
    std::uint64_t seed = 0;
};

std::uint64_t mc_count_scalar(const MCJob& job, std::uint64_t first, std::uint64_t count);

bool avx2_supported();
// AVX2 path handles ell == 1, k <= 16 and 32-bit-safe accumulators.
bool avx2_eligible(const MCJob& job);
std::uint64_t mc_count_avx2(const MCJob& job, std::uint64_t first, std::uint64_t count);

}  // namespace eqd
