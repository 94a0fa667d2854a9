// Command-line front end. Subcommands:
//   constant  asymptotic prediction for the equidistance probability
//   exact     p_d by exact or float DP convolution
//   mc        seeded Monte Carlo estimate
//   table     convergence table over a range of d
//   volume    fundamental volume of the increment lattice
//   spectra   eigenstructure of the pair-overlap adjacency matrix

#include "eqd/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Exact asymptotics and oracles for the probability that n random vectors with "
                 "iid entries are pairwise equidistant"};
    app.require_subcommand(1);

    eqd::cli::RunConfig cfg;
    std::string out_path;

    auto add_common = [&](CLI::App* sub, bool needs_dist) {
        if (needs_dist) {
            sub->add_option("--dist", cfg.dist_json,
                            "distribution as inline JSON: {\"support\": [...], \"probs\": [...]}");
            sub->add_option("--dist-file", cfg.dist_file, "path to a distribution JSON file");
        }
        sub->add_option("-n,--vectors", cfg.n, "number of vectors")->capture_default_str();
        sub->add_option("--format", cfg.format, "json|csv|pretty")->capture_default_str();
        sub->add_option("-o,--out", out_path, "write the report to a file instead of stdout");
        sub->add_flag("--no-timestamp", cfg.no_timestamp, "omit the timestamp field");
    };

    auto* constant = app.add_subcommand("constant", "asymptotic prediction");
    add_common(constant, true);

    auto* exact = app.add_subcommand("exact", "p_d by DP convolution");
    add_common(exact, true);
    exact->add_option("-d", cfg.d, "number of coordinates")->required();
    exact->add_option("--mode", cfg.mode, "exact|float")->capture_default_str();
    exact->add_option("--state-budget", cfg.exact_states, "max DP states (exact mode)")
        ->capture_default_str();
    exact->add_option("--float-state-budget", cfg.float_states, "max DP states (float mode)")
        ->capture_default_str();

    auto* mc = app.add_subcommand("mc", "Monte Carlo estimate");
    add_common(mc, true);
    mc->add_option("-d", cfg.d, "number of coordinates")->required();
    mc->add_option("--samples", cfg.samples, "sample count")->capture_default_str();
    mc->add_option("--seed", cfg.seed, "master seed")->capture_default_str();
    mc->add_option("--workers", cfg.workers, "worker threads")->capture_default_str();
    mc->add_option("--kernel", cfg.kernel, "auto|scalar|avx2")->capture_default_str();

    auto* table = app.add_subcommand("table", "convergence table");
    add_common(table, true);
    table->add_option("--d-max", cfg.d_max, "run d = 1..d_max");
    table->add_option("--d-list", cfg.d_list, "explicit list of d values");
    table->add_option("--samples", cfg.samples, "MC sample count")->capture_default_str();
    table->add_option("--seed", cfg.seed, "master seed")->capture_default_str();
    table->add_option("--workers", cfg.workers, "worker threads")->capture_default_str();
    table->add_option("--kernel", cfg.kernel, "auto|scalar|avx2")->capture_default_str();
    table->add_option("--state-budget", cfg.exact_states, "max exact DP states")
        ->capture_default_str();
    table->add_option("--float-state-budget", cfg.float_states, "max float DP states")
        ->capture_default_str();

    auto* volume = app.add_subcommand("volume", "increment lattice volume");
    add_common(volume, true);

    auto* spectra = app.add_subcommand("spectra", "pair-overlap adjacency eigenstructure");
    add_common(spectra, false);

    CLI11_PARSE(app, argc, argv);

    for (auto* sub : {constant, exact, mc, table, volume, spectra})
        if (sub->parsed()) cfg.command = sub->get_name();

    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "invalid input: cannot open output file " << out_path << "\n";
            return 2;
        }
        return eqd::cli::run_command(cfg, out, std::cerr);
    }
    return eqd::cli::run_command(cfg, std::cout, std::cerr);
}
