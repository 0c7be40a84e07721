#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace realqe {

using Int = mpz_class;

// Exact rational, always reduced, denominator > 0 (mpq_class canonical form).
using Rational = mpq_class;

inline Rational make_rational(const Int& num, const Int& den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline const Int numerator(const Rational& q) { return q.get_num(); }
inline const Int denominator(const Rational& q) { return q.get_den(); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline Int floor_int(const Rational& q) {
    Int f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return f;
}

inline Int ceil_int(const Rational& q) {
    Int c;
    mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return c;
}

inline Rational rational_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

std::string to_string(const Int& z);

// "p" when the denominator is 1, otherwise "p/q".
std::string to_string(const Rational& q);

// Accepts "p", "p/q" and decimal literals like "-0.7525" (converted exactly).
std::optional<Rational> parse_rational(const std::string& text);

}  // namespace realqe
