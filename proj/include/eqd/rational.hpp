#pragma once

// Exact arithmetic scalars. Rationals are always reduced with a positive
// denominator and canonical zero 0/1; both guarantees come from GMP's
// canonical mpq representation, enforced on every parse.

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace eqd {

using BigInt = mpz_class;
using Rat = mpq_class;

// Accepts "p/q", "p", optionally signed. Throws std::invalid_argument on
// malformed input or zero denominator.
inline Rat parse_rat(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    Rat r;
    if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
        throw std::invalid_argument("bad rational literal: '" + s + "'");
    if (mpz_sgn(mpq_denref(r.get_mpq_t())) == 0)
        throw std::invalid_argument("zero denominator: '" + s + "'");
    r.canonicalize();
    return r;
}

// Renders "p" when the denominator is 1, else "p/q".
inline std::string rat_str(const Rat& r) {
    return r.get_str();
}

inline Rat rat_pow(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    if (e < 0 && base == 0) throw std::domain_error("0 raised to a negative power");
    Rat b = base;
    if (e < 0) b = Rat(1) / base;
    unsigned long k = static_cast<unsigned long>(e > 0 ? e : -e);
    Rat r;
    mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(b.get_mpq_t()), k);
    mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(b.get_mpq_t()), k);
    // b reduced => b^k reduced
    return r;
}

inline BigInt int_pow(const BigInt& base, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline BigInt big_gcd(const BigInt& a, const BigInt& b) {
    BigInt g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline BigInt big_lcm(const BigInt& a, const BigInt& b) {
    BigInt l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

inline double rat_to_double(const Rat& r) { return r.get_d(); }

}  // namespace eqd
