#pragma once

// Quadratic surds s*sqrt(t) with rational s and square-free positive t,
// finite sums of such terms, and their exact embedding as rational
// coordinate vectors over a basis of square-free radicals. Distinct
// square-free radicals are linearly independent over Q, so the coordinates
// are unique and the embedding is injective.

#include "eqd/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace eqd {

// Largest radicand accepted from user input; square-free decomposition is
// by trial division, which is instant below this bound. Products of
// canonical surds never need factorization (gcd splitting), so internally
// radicands may grow past the bound.
inline constexpr std::int64_t kMaxInputRadicand = 1'000'000;

// n = g^2 * u with u square-free. Throws on n <= 0.
std::pair<std::int64_t, std::int64_t> square_free_decompose(std::int64_t n);

// Canonical surd: value = coeff * sqrt(radicand).
//  - radicand square-free and positive; sign lives in coeff
//  - coeff == 0 forces radicand == 1 (canonical zero)
//  - radicand == 1 means the value is rational
class Surd {
  public:
    Surd() : coeff_(0), radicand_(1) {}
    Surd(Rat coeff, std::int64_t radicand);  // canonicalizes; validates input

    const Rat& coeff() const { return coeff_; }
    std::int64_t radicand() const { return radicand_; }

    bool is_zero() const { return coeff_ == 0; }
    bool is_rational() const { return radicand_ == 1; }
    double to_double() const;

    bool operator==(const Surd& o) const {
        return radicand_ == o.radicand_ && coeff_ == o.coeff_;
    }
    bool operator!=(const Surd& o) const { return !(*this == o); }

    // Exact numeric order (compares s*sqrt(t) values, not representations).
    bool operator<(const Surd& o) const;

    std::string str() const;

  private:
    friend Surd surd_mul(const Surd&, const Surd&);
    // Trusted canonical constructor (no decomposition, no bound check).
    struct raw_tag {};
    Surd(Rat coeff, std::int64_t radicand, raw_tag)
        : coeff_(std::move(coeff)), radicand_(radicand) {}

    Rat coeff_;
    std::int64_t radicand_;
};

// (s sqrt t)(s' sqrt t') = (s s' g) sqrt(u) where t t' = g^2 u. Total on
// canonical surds; needs only gcd, never factorization.
Surd surd_mul(const Surd& a, const Surd& b);

// Finite sum of surds in canonical form: terms sorted by radicand, distinct
// radicands, no zero terms. Empty term list is the number 0. Closed under
// +, -, * (ring generated by square roots of square-free integers).
class SurdSum {
  public:
    SurdSum() = default;
    SurdSum(const Surd& s) { if (!s.is_zero()) terms_.push_back(s); }
    SurdSum(const Rat& r) : SurdSum(Surd(r, 1)) {}
    static SurdSum from_terms(std::vector<Surd> terms);  // canonicalizes

    const std::vector<Surd>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_rational() const {
        return terms_.empty() || (terms_.size() == 1 && terms_[0].is_rational());
    }
    // Valid only when is_rational().
    Rat as_rational() const;
    bool is_single_surd() const { return terms_.size() <= 1; }
    // Valid only when is_single_surd().
    Surd as_surd() const { return terms_.empty() ? Surd() : terms_[0]; }

    double to_double() const;
    std::string str() const;

    bool operator==(const SurdSum& o) const { return terms_ == o.terms_; }
    bool operator!=(const SurdSum& o) const { return !(*this == o); }
    // Representation order (canonical forms compare equal iff equal values).
    bool operator<(const SurdSum& o) const;

    friend SurdSum operator+(const SurdSum& a, const SurdSum& b);
    friend SurdSum operator-(const SurdSum& a, const SurdSum& b);
    friend SurdSum operator*(const SurdSum& a, const SurdSum& b);
    SurdSum operator-() const;

  private:
    std::vector<Surd> terms_;
};

inline SurdSum square(const SurdSum& x) { return x * x; }

// Ordered list of distinct square-free radicands, ascending, 1 first.
// Element 0 spans the rational direction.
class HamelBasis {
  public:
    HamelBasis() : radicands_{1} {}
    explicit HamelBasis(std::vector<std::int64_t> radicands);

    const std::vector<std::int64_t>& radicands() const { return radicands_; }
    std::size_t size() const { return radicands_.size(); }
    // Index of a radicand, or -1 when absent.
    int index_of(std::int64_t t) const;

    bool operator==(const HamelBasis& o) const { return radicands_ == o.radicands_; }

  private:
    std::vector<std::int64_t> radicands_;
};

// Collects the radicands occurring in the canonical forms of `values`,
// prepends 1 when absent. For single-surd value sets the resulting radicals
// are linearly independent over Q, so this basis spans the values exactly.
HamelBasis build_hamel_basis(const std::vector<SurdSum>& values);

// Smallest radicand set containing `basis` and closed under pairwise
// products of its radicals (needed for coordinate-space multiplication).
HamelBasis close_under_products(const HamelBasis& basis);

struct BasisIncomplete : std::runtime_error {
    explicit BasisIncomplete(const std::string& what) : std::runtime_error(what) {}
};

// Rational coordinates over a HamelBasis.
struct QSpanVector {
    std::vector<Rat> coords;

    bool operator==(const QSpanVector& o) const { return coords == o.coords; }
    bool operator!=(const QSpanVector& o) const { return !(*this == o); }
};

// Coordinate vector of x over `basis`: term s*sqrt(t) lands at the index of
// t. Throws BasisIncomplete when some radicand of x is not in the basis.
QSpanVector to_qspan(const SurdSum& x, const HamelBasis& basis);
inline QSpanVector to_qspan(const Surd& x, const HamelBasis& basis) {
    return to_qspan(SurdSum(x), basis);
}

SurdSum from_qspan(const QSpanVector& v, const HamelBasis& basis);

QSpanVector qspan_add(const QSpanVector& a, const QSpanVector& b);
QSpanVector qspan_sub(const QSpanVector& a, const QSpanVector& b);
QSpanVector qspan_scale(const QSpanVector& a, const Rat& s);
// Product in coordinates; requires the basis to be product-closed, else
// throws BasisIncomplete.
QSpanVector qspan_mul(const QSpanVector& a, const QSpanVector& b, const HamelBasis& basis);

}  // namespace eqd
