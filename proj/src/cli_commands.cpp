#include "eqd/cli.hpp"

#include "eqd/linegraph.hpp"
#include "eqd/table.hpp"

#include <chrono>
#include <random>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace eqd::cli {

using nlohmann::json;

namespace {

std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string iso_timestamp() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

SurdSum parse_value(const json& v, const std::string& where) {
    try {
        if (v.is_string()) return SurdSum(parse_rat(v.get<std::string>()));
        if (v.is_number_integer()) return SurdSum(Rat(static_cast<long>(v.get<std::int64_t>())));
        if (v.is_object()) {
            Rat s = v.at("s").is_string() ? parse_rat(v.at("s").get<std::string>())
                                          : Rat(static_cast<long>(v.at("s").get<std::int64_t>()));
            std::int64_t t = v.at("t").get<std::int64_t>();
            return SurdSum(Surd(s, t));
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument(where + ": " + e.what());
    }
    throw std::invalid_argument(where + ": expected a rational string, integer, or {\"s\",\"t\"}");
}

}  // namespace

DistributionSpec parse_distribution(const json& j) {
    if (!j.is_object() || !j.contains("support") || !j.at("support").is_array())
        throw std::invalid_argument("support: missing or not an array");
    DistributionSpec d;
    const auto& sup = j.at("support");
    for (std::size_t i = 0; i < sup.size(); ++i)
        d.support.push_back(parse_value(sup[i], "support[" + std::to_string(i) + "]"));
    if (j.contains("probs")) {
        const auto& pr = j.at("probs");
        if (!pr.is_array()) throw std::invalid_argument("probs: not an array");
        for (std::size_t i = 0; i < pr.size(); ++i) {
            const auto& p = pr[i];
            if (p.is_string())
                d.probs.push_back(parse_rat(p.get<std::string>()));
            else if (p.is_number_integer())
                d.probs.push_back(Rat(static_cast<long>(p.get<std::int64_t>())));
            else
                throw std::invalid_argument("probs[" + std::to_string(i) +
                                            "]: expected a rational string");
        }
    } else {
        d.probs.assign(d.support.size(), Rat(1, static_cast<unsigned long>(d.support.size())));
        for (auto& p : d.probs) p.canonicalize();
    }
    d.validate();
    return d;
}

json surdsum_json(const SurdSum& v) {
    if (v.is_rational()) return rat_str(v.as_rational());
    if (v.is_single_surd()) {
        const Surd s = v.as_surd();
        return json{{"s", rat_str(s.coeff())}, {"t", s.radicand()}};
    }
    json arr = json::array();
    for (const auto& t : v.terms()) arr.push_back(json{{"s", rat_str(t.coeff())}, {"t", t.radicand()}});
    return arr;
}

json distribution_json(const DistributionSpec& dist) {
    json sup = json::array(), probs = json::array();
    for (const auto& v : dist.support) sup.push_back(surdsum_json(v));
    for (const auto& p : dist.probs) probs.push_back(rat_str(p));
    return json{{"support", sup}, {"probs", probs}};
}

namespace {

json ratmat_json(const RatMatrix& m) {
    json rows = json::array();
    for (int r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(rat_str(m.at(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

json config_json(const RunConfig& c, const DistributionSpec* dist) {
    json j{{"command", c.command}, {"n", c.n}, {"format", c.format}};
    if (dist) j["dist"] = distribution_json(*dist);
    if (c.command == "exact") {
        j["d"] = c.d;
        j["mode"] = c.mode;
        j["exact_states"] = c.exact_states;
        j["float_states"] = c.float_states;
    } else if (c.command == "mc") {
        j["d"] = c.d;
        j["samples"] = c.samples;
        j["seed"] = c.seed;
        j["workers"] = c.workers;
        j["kernel"] = c.kernel;
    } else if (c.command == "table") {
        if (!c.d_list.empty())
            j["d_list"] = c.d_list;
        else
            j["d_max"] = c.d_max;
        j["samples"] = c.samples;
        j["seed"] = c.seed;
        j["workers"] = c.workers;
        j["kernel"] = c.kernel;
    }
    return j;
}

json report_shell(const RunConfig& c, const DistributionSpec* dist) {
    json j{{"tool", kToolName}, {"version", kToolVersion}, {"command", c.command}};
    j["config"] = config_json(c, dist);
    if (!c.no_timestamp) j["timestamp"] = iso_timestamp();
    return j;
}

json prediction_json(const AsymptoticPrediction& p) {
    json j{{"n", p.n}, {"m", p.m}, {"degenerate", p.degenerate}};
    if (p.degenerate) {
        j["p_d"] = "1";
        return j;
    }
    j["ell"] = p.ell;
    j["exponent"] = rat_str(p.exponent);
    j["normalization"] = json{{"shift", surdsum_json(p.shift)}, {"scale", rat_str(p.scale)}};
    j["lattice"] = json{{"volume", rat_str(p.lattice_volume)},
                        {"lat_x1", rat_str(p.lat_x1)},
                        {"lat_x2", rat_str(p.lat_x2)},
                        {"x1_over_x2", rat_str(p.lat_x1 / p.lat_x2)}};
    json cov{{"det", rat_str(p.cov_det)}};
    if (p.scalar_cov) {
        cov["C0"] = rat_str(p.scalar_cov->c0);
        cov["C1"] = rat_str(p.scalar_cov->c1);
    } else if (p.matrix_cov) {
        cov["C0"] = ratmat_json(p.matrix_cov->c0);
        cov["C1"] = ratmat_json(p.matrix_cov->c1);
    }
    j["covariance"] = cov;
    j["constant"] = json{{"squared_rational", rat_str(p.constant.square_rational)},
                         {"pi_exponent", p.constant.pi_exponent},
                         {"value", p.constant.value()}};
    return j;
}

McKernel parse_kernel(const std::string& k) {
    if (k == "auto") return McKernel::Auto;
    if (k == "scalar") return McKernel::Scalar;
    if (k == "avx2") return McKernel::Avx2;
    throw std::invalid_argument("kernel: expected auto|scalar|avx2");
}

DistributionSpec load_distribution(const RunConfig& c) {
    std::string text = c.dist_json;
    if (text.empty() && !c.dist_file.empty()) {
        std::ifstream in(c.dist_file);
        if (!in) throw std::invalid_argument("dist: cannot open file " + c.dist_file);
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    if (text.empty()) throw std::invalid_argument("dist: no distribution given");
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("dist: invalid JSON: ") + e.what());
    }
    return parse_distribution(j);
}

int cmd_constant(const RunConfig& c, std::ostream& out) {
    DistributionSpec dist = load_distribution(c);
    json rep = report_shell(c, &dist);
    rep["prediction"] = prediction_json(asymptotic_constant(dist, c.n));
    out << rep.dump(2) << "\n";
    return 0;
}

int cmd_exact(const RunConfig& c, std::ostream& out) {
    DistributionSpec dist = load_distribution(c);
    json rep = report_shell(c, &dist);
    ColumnLaw law = column_law(dist, c.n);
    json r{{"d", c.d}};
    if (c.mode == "exact") {
        DPRun run = exact_p_d_run(law, c.d, DPLimits{c.exact_states});
        r["method"] = "exact_dp";
        r["p"] = rat_str(run.p);
        r["p_float"] = rat_to_double(run.p);
        r["peak_states"] = run.peak_states;
    } else if (c.mode == "float") {
        FloatDPRun run = float_p_d_run(law, c.d, FloatDPLimits{c.float_states});
        r["method"] = "float_dp";
        r["p_float"] = run.p;
        r["peak_states"] = run.peak_states;
    } else {
        throw std::invalid_argument("mode: expected exact|float");
    }
    rep["result"] = r;
    out << rep.dump(2) << "\n";
    return 0;
}

int cmd_mc(const RunConfig& c, std::ostream& out) {
    DistributionSpec dist = load_distribution(c);
    json rep = report_shell(c, &dist);
    MCResult r = mc_estimate(dist, c.n, c.d, c.samples, c.seed, c.workers,
                             parse_kernel(c.kernel));
    rep["result"] = json{{"d", c.d},           {"samples", r.samples},
                         {"hits", r.hits},     {"estimate", r.estimate},
                         {"std_error", r.std_error}, {"seed", r.seed},
                         {"kernel", r.kernel}};
    out << rep.dump(2) << "\n";
    return 0;
}

int cmd_table(const RunConfig& c, std::ostream& out) {
    DistributionSpec dist = load_distribution(c);
    std::vector<long> ds = c.d_list;
    if (ds.empty()) {
        if (c.d_max < 1) throw std::invalid_argument("d_max: must be at least 1");
        for (long d = 1; d <= c.d_max; ++d) ds.push_back(d);
    }
    TableLimits lim;
    lim.exact_dp_max_states = c.exact_states;
    lim.float_dp_max_states = c.float_states;
    lim.mc_samples = c.samples;
    lim.seed = c.seed;
    lim.workers = c.workers;
    lim.kernel = parse_kernel(c.kernel);
    ConvergenceTable tab = convergence_table(dist, c.n, ds, lim);

    if (c.format == "csv") {
        out << "d,method,p,p_exact,scaled,ratio,std_error,note\n";
        for (const auto& row : tab.rows) {
            out << row.d << "," << method_name(row.method) << "," << fmt_double(row.p) << ","
                << row.p_exact << "," << fmt_double(row.scaled) << "," << fmt_double(row.ratio)
                << "," << (row.std_error ? fmt_double(*row.std_error) : "") << "," << row.note
                << "\n";
        }
        return 0;
    }
    if (c.format == "pretty") {
        out << "d\tmethod\tp\tscaled\tratio\n";
        for (const auto& row : tab.rows)
            out << row.d << "\t" << method_name(row.method) << "\t" << fmt_double(row.p) << "\t"
                << fmt_double(row.scaled) << "\t" << fmt_double(row.ratio) << "\n";
        return 0;
    }
    json rep = report_shell(c, &dist);
    rep["prediction"] = prediction_json(tab.prediction);
    json rows = json::array();
    for (const auto& row : tab.rows) {
        json r{{"d", row.d}, {"method", method_name(row.method)}};
        if (row.method != Method::Refused) {
            r["p"] = row.p;
            if (!row.p_exact.empty()) r["p_exact"] = row.p_exact;
            r["scaled"] = row.scaled;
            r["ratio"] = row.ratio;
            if (row.std_error) r["std_error"] = *row.std_error;
        } else {
            r["note"] = row.note;
        }
        rows.push_back(std::move(r));
    }
    rep["rows"] = rows;
    out << rep.dump(2) << "\n";
    return 0;
}

int cmd_volume(const RunConfig& c, std::ostream& out) {
    DistributionSpec dist = load_distribution(c);
    json rep = report_shell(c, &dist);
    GeneralNormalization norm = normalize_general(dist);
    SpanEmbedding emb = make_span_embedding(norm.values);
    GeneralVolume gv = volume_lat_V_general(norm.values, c.n, emb);
    const int m = pair_count(c.n);
    json r{{"m", m},
           {"ell", emb.ell},
           {"lat_x1", rat_str(gv.lat_x1)},
           {"lat_x2", rat_str(gv.lat_x2)},
           {"volume", rat_str(gv.volume)}};
    LatticeDescription basis_lat = make_lattice(basis_lat_V_X(norm.values, c.n, emb));
    r["basis_volume_matches"] = basis_lat.volume == gv.volume;
    // Exhaustive verification against the image lattice when affordable;
    // beyond the cap, random image vectors are membership-tested instead.
    double configs = 1;
    for (int i = 0; i < c.n; ++i) configs *= static_cast<double>(norm.values.size());
    if (configs <= double(1u << 20)) {
        RatMatrix img(0, (m - 1) * emb.ell);
        std::vector<std::size_t> idx(static_cast<std::size_t>(c.n), 0);
        std::vector<SurdSum> xs(static_cast<std::size_t>(c.n));
        for (;;) {
            for (int i = 0; i < c.n; ++i) xs[std::size_t(i)] = norm.values[idx[std::size_t(i)]];
            img.append_row(embedded_squared_diff(xs, emb));
            int pos = c.n - 1;
            while (pos >= 0 && ++idx[std::size_t(pos)] == norm.values.size()) {
                idx[std::size_t(pos)] = 0;
                --pos;
            }
            if (pos < 0) break;
        }
        Rat image_volume = fundamental_volume(img);
        r["image_volume"] = rat_str(image_volume);
        r["verified_by_image"] = image_volume == gv.volume;
    } else {
        std::mt19937_64 rng(0x5EED);
        bool all_members = true;
        std::vector<SurdSum> xs(static_cast<std::size_t>(c.n));
        for (int s = 0; s < 200 && all_members; ++s) {
            for (int i = 0; i < c.n; ++i)
                xs[std::size_t(i)] = norm.values[rng() % norm.values.size()];
            all_members = lattice_contains(basis_lat, embedded_squared_diff(xs, emb));
        }
        r["verified_by_image"] = "sampled";
        r["sampled_members_ok"] = all_members;
    }
    rep["result"] = r;
    out << rep.dump(2) << "\n";
    return 0;
}

int cmd_spectra(const RunConfig& c, std::ostream& out) {
    json rep = report_shell(c, nullptr);
    auto comps = eigen_structure(c.n);
    const int n = c.n;
    const int m = pair_count(n);
    json cj = json::array();
    int mult_sum = 0;
    for (const auto& comp : comps) {
        mult_sum += comp.multiplicity;
        cj.push_back(json{{"eigenvalue", comp.eigenvalue.get_str()},
                          {"multiplicity", comp.multiplicity},
                          {"verified", comp.verified}});
    }
    IntMatrix inc = incidence_matrix(n);
    IntMatrix adj = linegraph_adjacency(n);
    // M M^t = J + (n-2) I on vertices; M^t M = adjacency + 2 I on pairs.
    bool mmt_ok = true, mtm_ok = true;
    for (int r = 0; r < n && mmt_ok; ++r)
        for (int cc = 0; cc < n && mmt_ok; ++cc) {
            BigInt s = 0;
            for (int e = 0; e < m; ++e) s += inc.at(r, e) * inc.at(cc, e);
            if (s != BigInt(1) + (r == cc ? n - 2 : 0)) mmt_ok = false;
        }
    for (int r = 0; r < m && mtm_ok; ++r)
        for (int cc = 0; cc < m && mtm_ok; ++cc) {
            BigInt s = 0;
            for (int v = 0; v < n; ++v) s += inc.at(v, r) * inc.at(v, cc);
            if (s != adj.at(r, cc) + (r == cc ? 2 : 0)) mtm_ok = false;
        }
    rep["result"] = json{{"n", n},
                         {"m", m},
                         {"components", cj},
                         {"multiplicity_sum_ok", mult_sum == m},
                         {"incidence_mmt_ok", mmt_ok},
                         {"incidence_mtm_ok", mtm_ok}};
    out << rep.dump(2) << "\n";
    return 0;
}

}  // namespace

int run_command(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        if (config.n < 3) throw std::invalid_argument("n: must be at least 3");
        if (config.command == "constant") return cmd_constant(config, out);
        if (config.command == "exact") return cmd_exact(config, out);
        if (config.command == "mc") return cmd_mc(config, out);
        if (config.command == "table") return cmd_table(config, out);
        if (config.command == "volume") return cmd_volume(config, out);
        if (config.command == "spectra") return cmd_spectra(config, out);
        throw std::invalid_argument("command: unknown subcommand '" + config.command + "'");
    } catch (const BudgetExceeded& e) {
        err << "budget refusal: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        err << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        err << "invalid input: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace eqd::cli
