#pragma once

// Seeded Monte Carlo estimation of the equidistance probability with exact
// integer equidistance tests. Counter-based per-sample streams make the
// result a pure function of (distribution, n, d, samples, seed), bitwise
// independent of the worker count.

#include "eqd/distribution.hpp"
#include "eqd/mc_kernels.hpp"

namespace eqd {

struct MCResult {
    std::uint64_t samples = 0;
    std::uint64_t hits = 0;
    double estimate = 0;
    double std_error = 0;
    std::uint64_t seed = 0;
    std::string kernel;  // "scalar" or "avx2"
};

enum class McKernel { Auto, Scalar, Avx2 };

MCJob make_mc_job(const DistributionSpec& dist, int n, long d, std::uint64_t seed);

MCResult mc_estimate(const DistributionSpec& dist, int n, long d, std::uint64_t samples,
                     std::uint64_t seed, int workers = 1, McKernel kernel = McKernel::Auto);

}  // namespace eqd
