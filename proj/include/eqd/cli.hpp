#pragma once

// Batch command layer behind the CLI binary: parse a distribution, run one
// subcommand, emit a JSON/CSV report. Kept separate from main() so the
// commands are directly testable.

#include "eqd/distribution.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace eqd::cli {

inline constexpr const char* kToolName = "equidist";
inline constexpr const char* kToolVersion = "0.1.0";

struct RunConfig {
    std::string command;    // constant | exact | mc | table | volume | spectra
    std::string dist_json;  // inline JSON text
    std::string dist_file;  // or a path to a JSON file
    int n = 3;
    long d = 1;
    long d_max = 0;             // table: 1..d_max when d_list empty
    std::vector<long> d_list;   // table: explicit d values
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 1;
    int workers = 1;
    std::string mode = "exact";    // exact | float
    std::string format = "json";   // json | csv | pretty
    std::string kernel = "auto";   // auto | scalar | avx2
    std::size_t exact_states = 10'000'000;
    std::size_t float_states = 100'000'000;
    bool no_timestamp = false;
};

// Exit codes: 0 ok, 2 invalid input, 3 budget refusal.
int run_command(const RunConfig& config, std::ostream& out, std::ostream& err);

DistributionSpec parse_distribution(const nlohmann::json& j);
nlohmann::json distribution_json(const DistributionSpec& dist);
nlohmann::json surdsum_json(const SurdSum& v);

}  // namespace eqd::cli
