#include "eqd/distribution.hpp"

#include <algorithm>
#include <set>

namespace eqd {

DistributionSpec DistributionSpec::uniform(std::vector<SurdSum> support) {
    DistributionSpec d;
    d.probs.assign(support.size(), Rat(1, static_cast<unsigned long>(support.size())));
    for (auto& p : d.probs) p.canonicalize();
    d.support = std::move(support);
    d.validate();
    return d;
}

void DistributionSpec::validate() const {
    if (support.empty()) throw std::invalid_argument("support: must be nonempty");
    if (probs.size() != support.size())
        throw std::invalid_argument("probs: length must match support");
    std::set<SurdSum> seen;
    for (std::size_t i = 0; i < support.size(); ++i)
        if (!seen.insert(support[i]).second)
            throw std::invalid_argument("support[" + std::to_string(i) + "]: repeated value " +
                                        support[i].str());
    Rat total(0);
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] < 0)
            throw std::invalid_argument("probs[" + std::to_string(i) + "]: negative probability");
        total += probs[i];
    }
    if (total != 1) throw std::invalid_argument("probs: must sum to 1, got " + rat_str(total));
}

bool DistributionSpec::rational_support() const {
    for (const auto& x : support)
        if (!x.is_rational()) return false;
    return true;
}

std::vector<std::pair<SurdSum, Rat>> DistributionSpec::effective() const {
    std::vector<std::pair<SurdSum, Rat>> out;
    for (std::size_t i = 0; i < support.size(); ++i)
        if (probs[i] > 0) out.emplace_back(support[i], probs[i]);
    return out;
}

bool DistributionSpec::degenerate() const { return effective().size() <= 1; }

LatticeNormalization normalize_rational(const DistributionSpec& dist) {
    if (!dist.rational_support())
        throw std::invalid_argument("support: lattice normalization needs a rational support");
    auto eff = dist.effective();
    if (eff.size() <= 1) throw std::invalid_argument("support: degenerate distribution");
    LatticeNormalization out;
    Rat shift = eff[0].first.as_rational();
    for (const auto& [x, p] : eff) shift = std::min(shift, x.as_rational());
    BigInt lcm = 1;
    for (const auto& [x, p] : eff) {
        Rat y = x.as_rational() - shift;
        lcm = big_lcm(lcm, BigInt(y.get_den()));
    }
    std::vector<BigInt> vals;
    BigInt g = 0;
    for (const auto& [x, p] : eff) {
        Rat y = (x.as_rational() - shift) * Rat(lcm);
        vals.push_back(y.get_num());
        g = big_gcd(g, vals.back());
    }
    for (auto& v : vals) v /= g;
    out.values = std::move(vals);
    for (const auto& [x, p] : eff) out.probs.push_back(p);
    out.shift = shift;
    out.scale = Rat(lcm) / Rat(g);
    return out;
}

GeneralNormalization normalize_general(const DistributionSpec& dist) {
    auto eff = dist.effective();
    if (eff.size() <= 1) throw std::invalid_argument("support: degenerate distribution");
    GeneralNormalization out;
    SurdSum shift;
    bool has_zero = false;
    for (const auto& [x, p] : eff) has_zero = has_zero || x.is_zero();
    if (!has_zero) {
        bool all_single = true;
        for (const auto& [x, p] : eff) all_single = all_single && x.is_single_surd();
        if (!all_single)
            throw std::invalid_argument(
                "support: cannot order multi-term surd values to pick a shift; include 0 in the "
                "support");
        Surd min = eff[0].first.as_surd();
        for (const auto& [x, p] : eff) min = std::min(min, x.as_surd());
        shift = SurdSum(min);
    }
    for (const auto& [x, p] : eff) {
        out.values.push_back(x - shift);
        out.probs.push_back(p);
    }
    out.shift = shift;
    return out;
}

MomentSet moments(const DistributionSpec& dist) {
    if (!dist.rational_support())
        throw std::invalid_argument("support: moments need a rational support");
    MomentSet m{Rat(0), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0)};
    for (std::size_t i = 0; i < dist.support.size(); ++i) {
        Rat x = dist.support[i].as_rational();
        const Rat& p = dist.probs[i];
        Rat x2 = x * x;
        m.m1 += p * x;
        m.m2 += p * x2;
        m.m3 += p * x2 * x;
        m.m4 += p * x2 * x2;
    }
    m.var = m.m2 - m.m1 * m.m1;
    // mu4 = m4 - 4 m3 m1 + 6 m2 m1^2 - 3 m1^4
    Rat m1sq = m.m1 * m.m1;
    m.mu4 = m.m4 - 4 * m.m3 * m.m1 + 6 * m.m2 * m1sq - 3 * m1sq * m1sq;
    return m;
}

}  // namespace eqd
