#pragma once

#include <string>
#include <utility>
#include <vector>

#include "realqe/multipoly.hpp"
#include "realqe/rational.hpp"

namespace realqe {

// Dense univariate polynomial over Z; coeff(i) is the coefficient of x^i.
// Invariant: no trailing zero coefficients (the zero polynomial is empty).
class UniPoly {
  public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { normalize(); }
    static UniPoly constant(Int c);
    static UniPoly variable();

    // Requires p univariate in `var` with constant coefficients.
    static UniPoly from_multi(const MultiPoly& p, const std::string& var);
    MultiPoly to_multi(const std::string& var) const;

    const std::vector<Int>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    Int leading() const { return c_.empty() ? Int(0) : c_.back(); }
    Int coeff(size_t i) const { return i < c_.size() ? c_[i] : Int(0); }

    bool operator==(const UniPoly& o) const { return c_ == o.c_; }

    UniPoly operator-() const;
    UniPoly operator+(const UniPoly& o) const;
    UniPoly operator-(const UniPoly& o) const;
    UniPoly operator*(const UniPoly& o) const;
    UniPoly operator*(const Int& k) const;

    // Exact division; throws if not divisible.
    UniPoly exact_div(const UniPoly& o) const;
    UniPoly exact_div(const Int& k) const;

    UniPoly derivative() const;
    Int content() const;
    UniPoly primitive_part() const;
    // Primitive part with positive leading coefficient.
    UniPoly normalized_primitive() const;

    Rational eval(const Rational& x) const;
    int sign_at(const Rational& x) const;

    // p(-x)
    UniPoly negate_variable() const;
    // p(x^g)
    UniPoly compose_power(unsigned g) const;
    // x^n * p(1/x), n = degree
    UniPoly reverse() const;

    std::string to_string(const std::string& var = "x") const;

  private:
    void normalize();
    std::vector<Int> c_;
};

UniPoly gcd_univariate(const UniPoly& a, const UniPoly& b);
UniPoly squarefree_part(const UniPoly& p);

// 1 + max|a_i| / |a_lead|; every real root lies strictly inside [-B, B].
// Requires p nonzero.
Rational cauchy_root_bound(const UniPoly& p);

// Open isolating intervals (one per distinct real root of the squarefree
// part), pairwise disjoint, sorted, endpoints rational non-roots, each of
// width <= 1/4.
std::vector<std::pair<Rational, Rational>> sturm_isolate(const UniPoly& p);

// Number of distinct real roots of squarefree p in the open interval ]lo,hi[.
// Requires p(lo) != 0 and p(hi) != 0.
int count_roots_in(const UniPoly& squarefree, const Rational& lo, const Rational& hi);

// Resultant of p and q viewed as polynomials in elim_var with coefficients in
// Z[keep_var], computed by the subresultant PRS. Result is univariate in
// keep_var.
UniPoly resultant_bivariate(const MultiPoly& p, const MultiPoly& q, const std::string& elim_var,
                            const std::string& keep_var);

// Resultant of two univariate polynomials (integer result).
Int resultant_univariate(const UniPoly& p, const UniPoly& q);

}  // namespace realqe
