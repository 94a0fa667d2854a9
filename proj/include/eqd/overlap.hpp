#pragma once

// The overlapping map H and its relatives. H sends a subset I of {1..n}
// (equivalently a binary n-vector) to the m = n(n-1)/2 indicator vector of
// pairs split by I. The embedded variant H* subtracts the (1,2) coordinate
// and drops it, which is the map producing the increment vector whose
// d-fold sums drive the equidistance probability. The generalization to a
// real support replaces indicators by squared differences, embedded as
// rational coordinates over a span basis of radicals.

#include "eqd/lattice.hpp"
#include "eqd/surd.hpp"

#include <cstdint>

namespace eqd {

// Pairs (i, j), 1 <= i < j <= n, flattened in lexicographic order:
// (1,2), (1,3), ..., (1,n), (2,3), ... All computed quantities (volumes,
// determinants, spectra) are invariant under coordinate permutations, so
// the flattening choice is fixed but immaterial.
struct PairIndex {
    int i, j;
};

inline int pair_count(int n) { return n * (n - 1) / 2; }
int pair_flat(int i, int j, int n);
std::vector<PairIndex> all_pairs(int n);

// H(I) as a 0/1 integer vector of length m; `subset` is a bitmask over
// vertices 1..n (bit k-1 <-> vertex k).
std::vector<BigInt> overlap_vector(std::uint32_t subset, int n);

// H(A) + H(B) - H(A u B) for disjoint A, B; verifies the identity
// == 2 * sum of e_{i,j} over i in A, j in B before returning it.
// Throws on overlapping inputs.
std::vector<BigInt> inclusion_exclusion_check(std::uint32_t a, std::uint32_t b, int n);

// H*(x): coordinates (i,j) != (1,2) of H(x) minus the (1,2) coordinate;
// length m-1.
std::vector<BigInt> embedded_overlap(std::uint32_t subset, int n);

// Basis of the lattice spanned by Im H: the interval images H([1:1]) ...
// H([1:n-1]) plus all 2 e_{i,j} with j < n. When `substitute_pair` is a
// flat pair index of one of those doubled units, that row is replaced by
// the all-twos vector, which generates the same lattice.
IntMatrix basis_lat_H(int n, int substitute_pair = -1);

// Basis of the lattice spanned by Supp V in the binary case: embedded
// interval images plus 2 e_{i,j} for i < j, 2 < j < n. Fundamental volume
// 2^(m-n).
LatticeDescription basis_lat_V_binary(int n);

// All 2^n rows H(I) (or H*(I)); exhaustive image generators for checks.
IntMatrix image_H(int n);
IntMatrix image_H_star(int n);

// ---------------------------------------------------------------------------
// General supports.

// X1 = {2 x y : x, y in X \ {0}}, X2 = X1 u {x^2 : x in X \ {0}},
// deduplicated, zeros dropped.
struct ProductSets {
    std::vector<SurdSum> x1, x2;
};
ProductSets product_sets(const std::vector<SurdSum>& support);

// Coordinate frame for span_Q(X1) = span_Q(X2): ambient radicand basis from
// X2 plus a row-reduced span basis. When the X2 values are single surds the
// span basis is the identity on the ambient radicals and coordinates reduce
// to the plain radicand embedding.
struct SpanEmbedding {
    HamelBasis ambient;
    Echelon span;  // rows: span basis in ambient coordinates
    int ell = 0;
    bool identity = false;  // span basis == ambient radicand basis

    // Coordinates of v in the span basis; throws BasisIncomplete when v
    // lies outside the span.
    std::vector<Rat> coords(const SurdSum& v) const;
};

SpanEmbedding make_span_embedding(const std::vector<SurdSum>& support);

// Per-pair squared differences (x_i - x_j)^2, i < j, in surd arithmetic.
std::vector<SurdSum> squared_diff_vector(const std::vector<SurdSum>& xs);

// Same embedded over the span basis, flattened to m * ell rationals
// (pair-major).
std::vector<Rat> squared_diff_embedded(const std::vector<SurdSum>& xs,
                                       const SpanEmbedding& emb);

// H*_X(x): ((x_i-x_j)^2 - (x_1-x_2)^2) per pair != (1,2), embedded and
// flattened to (m-1) * ell rationals.
std::vector<Rat> embedded_squared_diff(const std::vector<SurdSum>& xs,
                                       const SpanEmbedding& emb);

// Tensor basis of the lattice spanned by Im H_X: u (x) H([1:i]) for u in a
// basis of Lat X2, i < n, plus v (x) e_{i,j} for v in a basis of Lat X1,
// i < j < n. Rows have m * ell rational coordinates.
RatMatrix basis_lat_H_X(const std::vector<SurdSum>& support, int n, const SpanEmbedding& emb);

// Embedded variant: u (x) H*([1:i]) plus v (x) e_{i,j} for i < j, 2 < j < n;
// rows have (m-1) * ell coordinates and span Lat Im H*_X, whose volume is
// |Lat X1|^(m-n) |Lat X2|^(n-1).
RatMatrix basis_lat_V_X(const std::vector<SurdSum>& support, int n, const SpanEmbedding& emb);

// |Lat X1|^(m-n) * |Lat X2|^(n-1) on the span-basis scale, together with
// the factor volumes.
struct GeneralVolume {
    Rat lat_x1, lat_x2;
    Rat volume;
};
GeneralVolume volume_lat_V_general(const std::vector<SurdSum>& support, int n,
                                   const SpanEmbedding& emb);

// Mod-2 rank route to the volume ratio |Lat X1| / |Lat X2|. Builds the
// stacked coordinate matrix of the squares and cross products, scales
// columns by their maximal power of two, and compares ranks over GF(2).
// When the scaled matrix is not of full rank ell the hypothesis fails and
// no ratio is produced.
struct Z2RatioResult {
    bool hypothesis_met = false;
    int ell = 0;
    int r = 0;
    Rat ratio;  // 2^(ell - r) when the hypothesis holds
};
Z2RatioResult volume_ratio_z2(const std::vector<SurdSum>& support);

}  // namespace eqd
