#pragma once

// Ground truth for p_d = P(n random vectors with d iid coordinates are
// pairwise equidistant): the exact law of the per-coordinate increment
// vector, its d-fold convolution by sparse DP (big-integer exact or float),
// and a full brute-force enumeration usable at tiny sizes.

#include "eqd/covariance.hpp"
#include "eqd/distribution.hpp"

#include <cstdint>
#include <memory>

namespace eqd {

struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Exact finite law of the increment vector on integer coordinates
// (dimension (m-1) * ell after embedding and denominator clearing).
struct ColumnLaw {
    int dim = 0;
    std::vector<std::pair<std::vector<std::int32_t>, BigInt>> atoms;  // point -> numerator
    BigInt denom;  // sum of numerators
    std::int32_t max_abs = 0;
};

// Enumerates |X|^n coordinate tuples; requires |X|^n <= 2^24.
ColumnLaw column_law(const DistributionSpec& dist, int n);

struct DPLimits {
    std::size_t max_states = 10'000'000;
};
struct FloatDPLimits {
    std::size_t max_states = 100'000'000;
};

struct DPRun {
    Rat p;
    std::size_t peak_states = 0;
    BigInt final_mass;  // sum of final-step numerators; equals denom^d
};

// d-fold exact convolution; mass at the origin. Throws BudgetExceeded when
// the state count, the coordinate range, or the dimension leaves the
// supported budget.
DPRun exact_p_d_run(const ColumnLaw& law, long d, const DPLimits& lim = {});
Rat exact_p_d(const ColumnLaw& law, long d, const DPLimits& lim = {});
Rat exact_p_d(const DistributionSpec& dist, int n, long d, const DPLimits& lim = {});

// Incremental exact DP: one table advanced step by step, so a whole column
// of p_d values costs a single pass to the largest d.
class ExactDPSession {
  public:
    // d_hint is the largest d the session will reach; it selects the
    // counter width (128-bit when denom^d_hint fits, big integers beyond).
    ExactDPSession(const ColumnLaw& law, long d_hint, const DPLimits& lim = {});
    ~ExactDPSession();
    ExactDPSession(ExactDPSession&&) noexcept;
    ExactDPSession& operator=(ExactDPSession&&) noexcept;

    Rat advance_to(long d);  // d must be >= the current position
    long current_d() const;
    std::size_t peak_states() const;

  private:
    friend DPRun exact_p_d_run(const ColumnLaw&, long, const DPLimits&);
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

struct FloatDPRun {
    double p = 0;
    std::size_t peak_states = 0;
};

// Float-weight variant for state counts where exact counts are too heavy.
// Accumulation order is fixed (sorted merge), so results are reproducible;
// relative error grows at most like atoms * d * machine-epsilon along any
// path. Excluded from exact-equality checks by construction.
FloatDPRun float_p_d_run(const ColumnLaw& law, long d, const FloatDPLimits& lim = {});
double float_p_d(const DistributionSpec& dist, int n, long d, const FloatDPLimits& lim = {});

// Full enumeration of all |X|^(n d) coordinate matrices with the
// equidistance test done in surd arithmetic; independent of the embedding
// and DP paths. Requires |X|^(n d) <= 2^24.
Rat brute_p_d(const DistributionSpec& dist, int n, long d);

}  // namespace eqd
