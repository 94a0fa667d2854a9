#pragma once

// Convergence tables: p_d for a list of d values, each computed by the
// cheapest method whose budget covers it (brute force, exact DP, float DP,
// Monte Carlo), scaled against the predicted asymptotic constant.

#include "eqd/covariance.hpp"
#include "eqd/mc.hpp"
#include "eqd/oracle.hpp"

#include <optional>
#include <string>

namespace eqd {

enum class Method { Brute, ExactDP, FloatDP, MonteCarlo, Refused };

std::string method_name(Method m);

struct TableLimits {
    double brute_max_configs = double(1u << 24);
    std::size_t exact_dp_max_states = 10'000'000;
    std::size_t float_dp_max_states = 100'000'000;
    std::uint64_t mc_samples = 1'000'000;
    std::uint64_t seed = 1;
    int workers = 1;
    McKernel kernel = McKernel::Auto;
};

// Cheap a-priori state bound used to pick a method for a given d.
double dp_state_bound(const ColumnLaw& law, long d);

Method choose_method(const DistributionSpec& dist, const ColumnLaw& law, int n, long d,
                     const TableLimits& lim);

struct TableRow {
    long d = 0;
    Method method = Method::Refused;
    double p = 0;
    std::string p_exact;  // "p/q" when the method is exact, else empty
    double scaled = 0;    // p * d^exponent
    double ratio = 0;     // scaled / constant
    std::optional<double> std_error;
    std::string note;  // refusal reason when method == Refused
};

struct ConvergenceTable {
    AsymptoticPrediction prediction;
    std::vector<TableRow> rows;
};

ConvergenceTable convergence_table(const DistributionSpec& dist, int n,
                                   const std::vector<long>& d_list, const TableLimits& lim = {});

}  // namespace eqd
