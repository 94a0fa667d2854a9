#pragma once

// Lattice descriptions: a canonical (HNF) basis plus the fundamental
// volume, for integer generators or rational ones with a common
// denominator cleared.

#include "eqd/intmat.hpp"
#include "eqd/ratmat.hpp"

namespace eqd {

struct LatticeDescription {
    IntMatrix basis;  // HNF rows of the scaled generators; true basis = basis / denom
    BigInt denom = 1;
    int rank = 0;
    Rat volume;  // product of SNF invariants rescaled by denom^-rank

    bool same_lattice(const LatticeDescription& o) const;
};

LatticeDescription make_lattice(const IntMatrix& generators);
LatticeDescription make_lattice(const RatMatrix& generators);

// Product of SNF invariants rescaled to the generators' coordinate scale.
Rat fundamental_volume(const RatMatrix& generators);

// Membership of a rational vector in the described lattice.
bool lattice_contains(const LatticeDescription& lat, const std::vector<Rat>& v);

}  // namespace eqd
