#pragma once

// Finite distributions with exact surd support and rational probabilities,
// plus the affine normalizations that put a support into the canonical
// position for the lattice analysis (0 contained, integer, gcd 1).

#include "eqd/surd.hpp"

#include <vector>

namespace eqd {

struct DistributionSpec {
    std::vector<SurdSum> support;  // pairwise distinct
    std::vector<Rat> probs;        // nonnegative, sum exactly 1

    static DistributionSpec uniform(std::vector<SurdSum> support);

    void validate() const;  // throws std::invalid_argument naming the field

    bool rational_support() const;
    // Support points with positive probability.
    std::vector<std::pair<SurdSum, Rat>> effective() const;
    bool degenerate() const;  // effective support is a single point
};

// y = (x - shift) * scale maps the support onto nonnegative integers
// containing 0 with gcd 1. Requires a rational, non-degenerate support.
struct LatticeNormalization {
    std::vector<BigInt> values;  // aligned with effective() order
    std::vector<Rat> probs;
    Rat shift;
    Rat scale;
};
LatticeNormalization normalize_rational(const DistributionSpec& dist);

// y = x - shift puts 0 into the support (the minimum is subtracted). The
// increment vector of squared differences is invariant under this shift.
struct GeneralNormalization {
    std::vector<SurdSum> values;
    std::vector<Rat> probs;
    SurdSum shift;
};
GeneralNormalization normalize_general(const DistributionSpec& dist);

struct MomentSet {
    Rat m1, m2, m3, m4;  // raw moments
    Rat var, mu4;        // central
};
// Exact moments; requires rational support.
MomentSet moments(const DistributionSpec& dist);

}  // namespace eqd
