#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "realqe/rational.hpp"

namespace realqe {

// Sparse monomial: (variable, exponent) pairs with exponent > 0, sorted by
// variable name.
using Monomial = std::vector<std::pair<std::string, unsigned>>;

unsigned total_degree(const Monomial& m);

// Graded lexicographic order: total degree first, ties broken by the first
// variable (in name order) with differing exponent, larger exponent first.
struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

struct DegreeTooHighError : std::runtime_error {
    std::string variable;
    unsigned degree;
    DegreeTooHighError(std::string var, unsigned deg)
        : std::runtime_error("degree " + std::to_string(deg) + " in " + var +
                             " exceeds the quadratic fragment"),
          variable(std::move(var)),
          degree(deg) {}
};

// Exact sparse multivariate polynomial over arbitrary-precision integers.
// Canonical form: no zero coefficients, terms ordered graded-lex.
class MultiPoly {
  public:
    using TermMap = std::map<Monomial, Int, MonomialLess>;

    MultiPoly() = default;
    static MultiPoly constant(Int c);
    static MultiPoly variable(const std::string& name);
    // c * v^e
    static MultiPoly term(Int c, const std::string& name, unsigned e);

    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // Only valid when is_constant().
    Int constant_value() const;

    MultiPoly operator-() const;
    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly operator*(const Int& c) const;
    MultiPoly pow(unsigned e) const;

    bool operator==(const MultiPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }
    bool operator<(const MultiPoly& o) const { return terms_ < o.terms_; }

    unsigned degree(const std::string& var) const;
    unsigned total_degree() const;
    bool contains(const std::string& var) const { return degree(var) > 0; }
    std::set<std::string> variables() const;

    // Dense coefficient list in `var`, index = power; coefficients are free
    // of `var`. Size is degree(var)+1 (a single zero entry for the zero
    // polynomial).
    std::vector<MultiPoly> coefficients_in(const std::string& var) const;

    MultiPoly derivative(const std::string& var, unsigned order = 1) const;

    MultiPoly substitute(const std::string& var, const MultiPoly& value) const;

    // p with var := q, scaled by den(q)^degree(var).  The scale factor is
    // positive, so relations against 0 are preserved.
    MultiPoly substitute_rational_scaled(const std::string& var, const Rational& value) const;

    Rational eval(const std::map<std::string, Rational>& point) const;

    // Positive gcd of the coefficients; 0 for the zero polynomial.
    Int content() const;
    MultiPoly primitive_part() const;
    // Leading coefficient in graded-lex order (0 for the zero polynomial).
    Int leading_coefficient() const;

    // Exact polynomial square root, if one exists.
    std::optional<MultiPoly> sqrt_exact() const;

    // gcd of all exponents of `var` over the terms containing it; 0 when the
    // variable does not occur.
    unsigned exponent_gcd(const std::string& var) const;

    std::string to_string() const;

  private:
    void add_term(const Monomial& m, const Int& c);
    TermMap terms_;
};

inline MultiPoly operator*(const Int& c, const MultiPoly& p) { return p * c; }

// f2*v^2 + f1*v + f0 decomposition; throws DegreeTooHighError above 2.
struct QuadView {
    MultiPoly f2, f1, f0;
};
QuadView quad_view(const MultiPoly& p, const std::string& var);

inline MultiPoly discriminant(const MultiPoly& f2, const MultiPoly& f1, const MultiPoly& f0) {
    return f1 * f1 - MultiPoly::constant(4) * f2 * f0;
}

}  // namespace realqe
