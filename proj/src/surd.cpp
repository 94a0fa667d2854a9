#include "eqd/surd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace eqd {

std::pair<std::int64_t, std::int64_t> square_free_decompose(std::int64_t n) {
    if (n <= 0) throw std::invalid_argument("square_free_decompose: n must be positive");
    std::int64_t g = 1, u = n;
    for (std::int64_t d = 2; d * d <= u; ++d) {
        while (u % (d * d) == 0) {
            u /= d * d;
            g *= d;
        }
    }
    return {g, u};
}

Surd::Surd(Rat coeff, std::int64_t radicand) : coeff_(std::move(coeff)) {
    if (radicand <= 0) throw std::invalid_argument("surd radicand must be positive");
    if (radicand > kMaxInputRadicand)
        throw std::invalid_argument("surd radicand exceeds the supported bound " +
                                    std::to_string(kMaxInputRadicand));
    auto [g, u] = square_free_decompose(radicand);
    coeff_ *= g;
    radicand_ = u;
    if (coeff_ == 0) radicand_ = 1;
}

double Surd::to_double() const {
    return rat_to_double(coeff_) * std::sqrt(static_cast<double>(radicand_));
}

bool Surd::operator<(const Surd& o) const {
    int sa = sgn(coeff_), sb = sgn(o.coeff_);
    if (sa != sb) return sa < sb;
    if (sa == 0) return false;
    // Same sign: compare squares, which flips the order for negatives.
    Rat qa = coeff_ * coeff_ * radicand_;
    Rat qb = o.coeff_ * o.coeff_ * o.radicand_;
    return sa > 0 ? qa < qb : qb < qa;
}

std::string Surd::str() const {
    if (is_rational()) return rat_str(coeff_);
    std::ostringstream os;
    if (coeff_ == 1) {
    } else if (coeff_ == -1) {
        os << "-";
    } else {
        os << rat_str(coeff_) << "*";
    }
    os << "sqrt(" << radicand_ << ")";
    return os.str();
}

Surd surd_mul(const Surd& a, const Surd& b) {
    if (a.is_zero() || b.is_zero()) return Surd();
    std::int64_t g = std::gcd(a.radicand_, b.radicand_);
    // t, t' square-free => (t/g)(t'/g) square-free and t t' = g^2 (t/g)(t'/g).
    std::int64_t u = (a.radicand_ / g) * (b.radicand_ / g);
    Rat c = a.coeff_ * b.coeff_ * g;
    return Surd(std::move(c), u, Surd::raw_tag{});
}

SurdSum SurdSum::from_terms(std::vector<Surd> terms) {
    std::sort(terms.begin(), terms.end(), [](const Surd& a, const Surd& b) {
        return a.radicand() < b.radicand();
    });
    SurdSum out;
    for (auto& t : terms) {
        if (t.is_zero()) continue;
        if (!out.terms_.empty() && out.terms_.back().radicand() == t.radicand()) {
            Rat c = out.terms_.back().coeff() + t.coeff();
            std::int64_t rad = t.radicand();
            out.terms_.pop_back();
            if (c != 0) out.terms_.push_back(Surd(c, rad));
        } else {
            out.terms_.push_back(t);
        }
    }
    return out;
}

Rat SurdSum::as_rational() const {
    if (terms_.empty()) return Rat(0);
    if (terms_.size() == 1 && terms_[0].is_rational()) return terms_[0].coeff();
    throw std::logic_error("SurdSum::as_rational on an irrational value");
}

double SurdSum::to_double() const {
    double s = 0;
    for (const auto& t : terms_) s += t.to_double();
    return s;
}

std::string SurdSum::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        std::string t = terms_[i].str();
        if (i > 0 && !t.empty() && t[0] != '-') os << "+";
        os << t;
    }
    return os.str();
}

bool SurdSum::operator<(const SurdSum& o) const {
    auto key = [](const Surd& s) { return std::pair(s.radicand(), s.coeff()); };
    return std::lexicographical_compare(
        terms_.begin(), terms_.end(), o.terms_.begin(), o.terms_.end(),
        [&](const Surd& a, const Surd& b) { return key(a) < key(b); });
}

SurdSum operator+(const SurdSum& a, const SurdSum& b) {
    std::vector<Surd> all = a.terms_;
    all.insert(all.end(), b.terms_.begin(), b.terms_.end());
    return SurdSum::from_terms(std::move(all));
}

SurdSum SurdSum::operator-() const {
    SurdSum out;
    for (const auto& t : terms_)
        out.terms_.push_back(Surd(-t.coeff(), t.radicand()));
    return out;
}

SurdSum operator-(const SurdSum& a, const SurdSum& b) { return a + (-b); }

SurdSum operator*(const SurdSum& a, const SurdSum& b) {
    std::vector<Surd> prods;
    prods.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& x : a.terms_)
        for (const auto& y : b.terms_) prods.push_back(surd_mul(x, y));
    return SurdSum::from_terms(std::move(prods));
}

HamelBasis::HamelBasis(std::vector<std::int64_t> radicands) {
    std::sort(radicands.begin(), radicands.end());
    radicands.erase(std::unique(radicands.begin(), radicands.end()), radicands.end());
    for (std::int64_t t : radicands) {
        if (t <= 0) throw std::invalid_argument("radicand must be positive");
        auto [g, u] = square_free_decompose(t);
        if (g != 1) throw std::invalid_argument("radicand " + std::to_string(t) + " is not square-free");
    }
    if (radicands.empty() || radicands.front() != 1)
        radicands.insert(radicands.begin(), 1);
    radicands_ = std::move(radicands);
}

int HamelBasis::index_of(std::int64_t t) const {
    auto it = std::lower_bound(radicands_.begin(), radicands_.end(), t);
    if (it == radicands_.end() || *it != t) return -1;
    return static_cast<int>(it - radicands_.begin());
}

HamelBasis build_hamel_basis(const std::vector<SurdSum>& values) {
    std::vector<std::int64_t> rads;
    for (const auto& v : values)
        for (const auto& t : v.terms()) rads.push_back(t.radicand());
    return HamelBasis(std::move(rads));
}

HamelBasis close_under_products(const HamelBasis& basis) {
    std::vector<std::int64_t> rads = basis.radicands();
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::int64_t> cur = rads;
        for (std::size_t i = 0; i < cur.size(); ++i)
            for (std::size_t j = i; j < cur.size(); ++j) {
                std::int64_t g = std::gcd(cur[i], cur[j]);
                std::int64_t u = (cur[i] / g) * (cur[j] / g);
                if (std::find(rads.begin(), rads.end(), u) == rads.end()) {
                    rads.push_back(u);
                    grew = true;
                }
            }
    }
    return HamelBasis(std::move(rads));
}

QSpanVector to_qspan(const SurdSum& x, const HamelBasis& basis) {
    QSpanVector v;
    v.coords.assign(basis.size(), Rat(0));
    for (const auto& t : x.terms()) {
        int idx = basis.index_of(t.radicand());
        if (idx < 0)
            throw BasisIncomplete("radicand " + std::to_string(t.radicand()) +
                                  " not present in the basis");
        v.coords[static_cast<std::size_t>(idx)] = t.coeff();
    }
    return v;
}

SurdSum from_qspan(const QSpanVector& v, const HamelBasis& basis) {
    if (v.coords.size() != basis.size())
        throw std::invalid_argument("coordinate length does not match basis");
    std::vector<Surd> terms;
    for (std::size_t i = 0; i < v.coords.size(); ++i)
        if (v.coords[i] != 0) terms.push_back(Surd(v.coords[i], basis.radicands()[i]));
    return SurdSum::from_terms(std::move(terms));
}

QSpanVector qspan_add(const QSpanVector& a, const QSpanVector& b) {
    if (a.coords.size() != b.coords.size())
        throw std::invalid_argument("qspan dimension mismatch");
    QSpanVector out = a;
    for (std::size_t i = 0; i < b.coords.size(); ++i) out.coords[i] += b.coords[i];
    return out;
}

QSpanVector qspan_sub(const QSpanVector& a, const QSpanVector& b) {
    if (a.coords.size() != b.coords.size())
        throw std::invalid_argument("qspan dimension mismatch");
    QSpanVector out = a;
    for (std::size_t i = 0; i < b.coords.size(); ++i) out.coords[i] -= b.coords[i];
    return out;
}

QSpanVector qspan_scale(const QSpanVector& a, const Rat& s) {
    QSpanVector out = a;
    for (auto& c : out.coords) c *= s;
    return out;
}

QSpanVector qspan_mul(const QSpanVector& a, const QSpanVector& b, const HamelBasis& basis) {
    if (a.coords.size() != basis.size() || b.coords.size() != basis.size())
        throw std::invalid_argument("qspan dimension mismatch");
    QSpanVector out;
    out.coords.assign(basis.size(), Rat(0));
    const auto& rads = basis.radicands();
    for (std::size_t i = 0; i < rads.size(); ++i) {
        if (a.coords[i] == 0) continue;
        for (std::size_t j = 0; j < rads.size(); ++j) {
            if (b.coords[j] == 0) continue;
            std::int64_t g = std::gcd(rads[i], rads[j]);
            std::int64_t u = (rads[i] / g) * (rads[j] / g);
            int idx = basis.index_of(u);
            if (idx < 0)
                throw BasisIncomplete("basis not closed under products: missing radicand " +
                                      std::to_string(u));
            out.coords[static_cast<std::size_t>(idx)] += a.coords[i] * b.coords[j] * g;
        }
    }
    return out;
}

}  // namespace eqd
