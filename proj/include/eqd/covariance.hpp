#pragma once

// Covariance structure of the increment vector V of squared pairwise
// differences, its closed-form determinant, and the asymptotic prediction
// constants. All quantities are exact rationals; the only irrational
// factor of a prediction is a power of pi, carried symbolically.

#include "eqd/distribution.hpp"
#include "eqd/overlap.hpp"
#include "eqd/ratmat.hpp"

#include <optional>

namespace eqd {

struct ScalarCov {
    Rat c0;  // Var((X1 - X2)^2)
    Rat c1;  // Cov((X1 - X2)^2, (X1 - X3)^2) = Var((X - EX)^2)
};

// Moment formulas; also checks c0 - 2 c1 == 4 var^2 and c1 == mu4 - var^2.
ScalarCov c_constants(const MomentSet& m);
ScalarCov c_constants(const DistributionSpec& dist);

struct MatrixCov {
    RatMatrix c0, c1;  // ell x ell blocks over the span embedding
};

// Exact covariance blocks of the embedded squared differences, by
// enumeration of |X|^2 and |X|^3 tuples.
MatrixCov c_matrices(const std::vector<SurdSum>& values, const std::vector<Rat>& probs,
                     const SpanEmbedding& emb);

// Cov(V) for the lattice case: (m-1) x (m-1), entry (a, b) =
// c0 (1 + [a=b]) + c1 (h_ab - h_{(1,2)a} - h_{(1,2)b}).
RatMatrix cov_matrix_V(const ScalarCov& c, int n);
// Same with ell x ell blocks; ell(m-1) square.
RatMatrix cov_matrix_V_general(const MatrixCov& c, int n);

// Brute-force covariance of V from full |X|^n tuple enumeration; the
// independent oracle for the structured forms above.
RatMatrix brute_cov_V(const std::vector<SurdSum>& values, const std::vector<Rat>& probs, int n);
RatMatrix brute_cov_V_general(const std::vector<SurdSum>& values, const std::vector<Rat>& probs,
                              int n, const SpanEmbedding& emb);

// |Var V| = m (c0 - 2 c1)^(m-n) (c0 + (n-4) c1)^(n-1).
Rat det_cov_closed(int n, const Rat& c0, const Rat& c1);

// |Var Vtilde| = m^ell |C0 - 2 C1|^(m-n) |C0 + (n-4) C1|^(n-1).
// Throws std::domain_error when C0 is singular.
Rat det_cov_general_closed(int n, const MatrixCov& c);

// det of the k x k matrix with a on the diagonal and b elsewhere:
// (a + (k-1) b) (a - b)^(k-1).
Rat structured_det(const Rat& a, const Rat& b, int k);

// K with K^2 = square_rational * pi^pi_exponent (pi_exponent < 0).
struct ExactConstant {
    Rat square_rational;
    long pi_exponent = 0;
    double value() const;
};

// Closed form for the symmetric binary case: K^2 = 2^(3m-2n-1) / m.
ExactConstant binary_constant_squared(int n);

struct AsymptoticPrediction {
    int n = 0;
    int m = 0;
    int ell = 1;
    bool degenerate = false;  // Var X == 0: the probability is identically 1
    Rat exponent;             // p_d ~ constant / d^exponent
    Rat lattice_volume;       // |Lat V| on the embedding scale
    Rat lat_x1, lat_x2;       // factor volumes (general machinery)
    Rat cov_det;              // |Var V|
    ExactConstant constant;
    // Normalization applied before the analysis: y = (x - shift) * scale.
    SurdSum shift;
    Rat scale = 1;
    std::optional<ScalarCov> scalar_cov;
    std::optional<MatrixCov> matrix_cov;
};

AsymptoticPrediction asymptotic_constant(const DistributionSpec& dist, int n);

}  // namespace eqd
