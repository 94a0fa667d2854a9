#include "eqd/table.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace eqd {

std::string method_name(Method m) {
    switch (m) {
        case Method::Brute: return "brute";
        case Method::ExactDP: return "exact_dp";
        case Method::FloatDP: return "float_dp";
        case Method::MonteCarlo: return "mc";
        default: return "refused";
    }
}

double dp_state_bound(const ColumnLaw& law, long d) {
    // Bounding box per dimension, capped by the multiset count of atom
    // choices; both are upper bounds on reachable states.
    double box = 1;
    for (int c = 0; c < law.dim; ++c) {
        std::int32_t lo = 0, hi = 0;
        for (const auto& [pt, w] : law.atoms) {
            lo = std::min(lo, pt[std::size_t(c)]);
            hi = std::max(hi, pt[std::size_t(c)]);
        }
        box *= static_cast<double>(hi - lo) * d + 1;
        if (box > 1e18) return 1e18;
    }
    double multisets = 1;
    const double a = static_cast<double>(law.atoms.size());
    for (long i = 0; i < d; ++i) {
        multisets *= (a + static_cast<double>(i)) / static_cast<double>(i + 1);
        if (multisets > 1e18) {
            multisets = 1e18;
            break;
        }
    }
    return std::min(box, multisets);
}

Method choose_method(const DistributionSpec& dist, const ColumnLaw& law, int n, long d,
                     const TableLimits& lim) {
    const double k = static_cast<double>(dist.effective().size());
    double configs = 1;
    for (long i = 0; i < static_cast<long>(n) * d && configs <= lim.brute_max_configs; ++i)
        configs *= k;
    if (configs <= lim.brute_max_configs && d <= 4) return Method::Brute;
    bool dp_possible = law.dim <= 16 && static_cast<long long>(law.max_abs) * d <= 32000;
    if (dp_possible) {
        double bound = dp_state_bound(law, d);
        if (bound <= static_cast<double>(lim.exact_dp_max_states)) return Method::ExactDP;
        if (bound <= static_cast<double>(lim.float_dp_max_states)) return Method::FloatDP;
    }
    return Method::MonteCarlo;
}

ConvergenceTable convergence_table(const DistributionSpec& dist, int n,
                                   const std::vector<long>& d_list, const TableLimits& lim) {
    ConvergenceTable out;
    out.prediction = asymptotic_constant(dist, n);
    if (out.prediction.degenerate)
        throw std::invalid_argument("degenerate distribution: p_d is identically 1");
    const double expo = rat_to_double(out.prediction.exponent);
    const double constant = out.prediction.constant.value();
    ColumnLaw law = column_law(dist, n);

    out.rows.resize(d_list.size());
    std::vector<std::size_t> order(d_list.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return d_list[a] < d_list[b]; });

    // One shared DP table serves every exact row in ascending order.
    long exact_hint = 0;
    for (std::size_t i = 0; i < d_list.size(); ++i)
        if (choose_method(dist, law, n, d_list[i], lim) == Method::ExactDP)
            exact_hint = std::max(exact_hint, d_list[i]);
    std::optional<ExactDPSession> session;

    for (std::size_t i : order) {
        const long d = d_list[i];
        TableRow row;
        row.d = d;
        row.method = choose_method(dist, law, n, d, lim);
        try {
            switch (row.method) {
                case Method::Brute: {
                    Rat p = brute_p_d(dist, n, d);
                    row.p = rat_to_double(p);
                    row.p_exact = rat_str(p);
                    break;
                }
                case Method::ExactDP: {
                    if (!session)
                        session.emplace(law, exact_hint, DPLimits{lim.exact_dp_max_states});
                    Rat p = session->advance_to(d);
                    row.p = rat_to_double(p);
                    row.p_exact = rat_str(p);
                    break;
                }
                case Method::FloatDP: {
                    row.p = float_p_d_run(law, d, FloatDPLimits{lim.float_dp_max_states}).p;
                    break;
                }
                case Method::MonteCarlo: {
                    MCResult r = mc_estimate(dist, n, d, lim.mc_samples, lim.seed, lim.workers,
                                             lim.kernel);
                    row.p = r.estimate;
                    row.std_error = r.std_error;
                    break;
                }
                default: break;
            }
        } catch (const BudgetExceeded& e) {
            row.method = Method::Refused;
            row.note = e.what();
        }
        if (row.method != Method::Refused) {
            row.scaled = row.p * std::pow(static_cast<double>(d), expo);
            row.ratio = row.scaled / constant;
        }
        out.rows[i] = std::move(row);
    }
    return out;
}

}  // namespace eqd
