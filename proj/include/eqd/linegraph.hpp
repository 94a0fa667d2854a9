#pragma once

// Exact eigenstructure of the adjacency matrix of the line graph of the
// complete graph K_n (vertices = pairs, adjacency = sharing one endpoint).
// Eigenvalues are 2n-4 (simple, all-ones), n-4 (multiplicity n-1, shifted
// single-vertex overlap vectors) and -2 (multiplicity m-n, alternating
// vectors of even closed walks).

#include "eqd/intmat.hpp"
#include "eqd/ratmat.hpp"

#include <vector>

namespace eqd {

// m x m 0/1 adjacency; entry (p, q) is 1 iff the pairs share one vertex.
IntMatrix linegraph_adjacency(int n);

// n x m vertex-edge incidence matrix of K_n.
IntMatrix incidence_matrix(int n);

struct EigenComponent {
    BigInt eigenvalue;
    int multiplicity = 0;
    RatMatrix basis;  // rows are exact eigenvectors
    bool verified = false;
};

// The three components, eigen-equations verified exactly. For n == 3 the
// (-2) component is empty.
std::vector<EigenComponent> eigen_structure(int n);

// Alternating +/-1 vector on the edges of an even closed walk
// (v_1, ..., v_2k), consecutive vertices distinct. Throws on odd length.
std::vector<BigInt> even_cycle_vector(const std::vector<int>& cycle, int n);

// m-n independent (-2)-eigenvectors: fundamental triangles of the star
// spanning tree at vertex 1, spliced pairwise against the reference
// triangle (1,2,3) into closed 6-walks. Requires n >= 4.
RatMatrix even_cycle_basis(int n);

// Variant basis whose first vector is the 4-cycle (1,2,3,4) vector and
// whose remaining vectors have zero (1,2) coordinate; obtained from
// even_cycle_basis by exact elimination inside the eigenspace.
RatMatrix even_cycle_basis_e12(int n);

}  // namespace eqd
