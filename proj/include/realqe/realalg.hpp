#pragma once

#include <map>
#include <optional>
#include <string>

#include "realqe/answer.hpp"
#include "realqe/multipoly.hpp"
#include "realqe/unipoly.hpp"

namespace realqe {

// A real algebraic number: squarefree primitive defining polynomial with
// positive leading coefficient, plus an open isolating interval ]lo, hi[ with
// rational non-root endpoints containing exactly one root.
class RealAlgebraicNumber {
  public:
    // Canonical rational: defining q*t - p, interval ](p-1)/q, (p+1)/q[.
    static RealAlgebraicNumber from_rational(const Rational& value);
    // Root of p inside ]lo, hi[; throws unless exactly one root lies inside
    // and the endpoints are not roots.
    static RealAlgebraicNumber from_root(const UniPoly& p, const Rational& lo,
                                         const Rational& hi);
    // k-th real root of p in ascending order (0-based); throws if out of range.
    static RealAlgebraicNumber from_root_index(const UniPoly& p, size_t k);

    const UniPoly& defining() const { return defining_; }
    const Rational& lo() const { return lo_; }
    const Rational& hi() const { return hi_; }

    // Interval width halved; the value is unchanged.
    RealAlgebraicNumber refined() const;

    int sign() const;
    // -1, 0, +1 for value <, =, > q.
    int compare_rational(const Rational& q) const;
    int compare(const RealAlgebraicNumber& o) const;

    std::string to_string() const;

  private:
    RealAlgebraicNumber(UniPoly defining, Rational lo, Rational hi)
        : defining_(std::move(defining)), lo_(std::move(lo)), hi_(std::move(hi)) {}
    UniPoly defining_;
    Rational lo_, hi_;
};

RealAlgebraicNumber ran_neg(const RealAlgebraicNumber& x);
RealAlgebraicNumber ran_add(const RealAlgebraicNumber& x, const RealAlgebraicNumber& y);
RealAlgebraicNumber ran_sub(const RealAlgebraicNumber& x, const RealAlgebraicNumber& y);
RealAlgebraicNumber ran_mul(const RealAlgebraicNumber& x, const RealAlgebraicNumber& y);
// Throws on division by zero.
RealAlgebraicNumber ran_div(const RealAlgebraicNumber& x, const RealAlgebraicNumber& y);
// Throws on even root of a negative value.
RealAlgebraicNumber ran_nth_root(const RealAlgebraicNumber& x, unsigned g);
RealAlgebraicNumber ran_sqrt(const RealAlgebraicNumber& x);

// Exact rational value, when the number is rational.
std::optional<Rational> rational_recognition(const RealAlgebraicNumber& x);

// Correctly rounded decimal string with `digits` fractional digits
// (ties away from zero). Requires digits >= 1.
std::string approx_decimal(const RealAlgebraicNumber& x, unsigned digits);

RealAlgebraicNumber eval_poly_at_rans(const MultiPoly& p,
                                      const std::map<std::string, RealAlgebraicNumber>& point);

// Evaluates a standard answer expression; throws on eps/inf leaves, unknown
// variables, or division by zero.
RealAlgebraicNumber eval_answer(const AnswerExpression& e,
                                const std::map<std::string, RealAlgebraicNumber>& env);

}  // namespace realqe
