#pragma once

#include <optional>
#include <string>
#include <vector>

#include "realqe/formula.hpp"

namespace realqe {

// (a + b*sqrt(c)) / d with polynomial entries; meaningful under
// c >= 0 and d != 0.
struct RootExpression {
    MultiPoly a, b, c, d;

    static RootExpression from_rational(const Rational& q);
    // Cancels common integer content of (a, b, d) and makes a constant
    // denominator positive; drops the radical part when b or c vanishes.
    RootExpression normalized() const;
    // The variable w when the expression is literally w/1.
    std::optional<std::string> as_plain_variable() const;

    bool operator==(const RootExpression& o) const {
        return a == o.a && b == o.b && c == o.c && d == o.d;
    }
    std::string to_string() const;
};

struct TestPoint {
    enum class Kind {
        Root,
        RootMinusEps,
        RootPlusEps,
        VarMinusEps,
        PlusInfinity,
        MinusInfinity,
        NthRoot,
    };
    Kind kind;
    RootExpression root;  // Root / RootMinusEps / RootPlusEps
    std::string var;      // VarMinusEps target or NthRoot shadow variable
    unsigned g = 0;       // NthRoot degree

    static TestPoint make_root(RootExpression e);
    static TestPoint root_minus_eps(RootExpression e);
    static TestPoint root_plus_eps(RootExpression e);
    static TestPoint var_minus_eps(std::string w);
    static TestPoint plus_infinity();
    static TestPoint minus_infinity();
    static TestPoint nth_root(unsigned g, std::string shadow);

    bool operator==(const TestPoint& o) const {
        return kind == o.kind && root == o.root && var == o.var && g == o.g;
    }
    std::string to_string() const;
};

struct GuardedTestPoint {
    QFFormula guard;
    TestPoint point;
};

// Virtual substitution of a root expression into one atom: a quantifier-free
// formula equivalent to atom[var/e] wherever c >= 0 and d != 0.
QFFormula vs_root(const Atom& atom, const std::string& var, const RootExpression& e);

enum class EpsDirection { Minus, Plus };

// Infinitesimal substitution atom[var // t -+ eps]; the derivative expansion
// is built first, then t is substituted (virtually for a root expression,
// regularly for a variable).
QFFormula vs_eps(const Atom& atom, const std::string& var, const RootExpression& t,
                 EpsDirection dir);
QFFormula vs_eps(const Atom& atom, const std::string& var, const std::string& t,
                 EpsDirection dir);

// atom[var // +-infinity] as the coefficient sign cascade.
QFFormula vs_inf(const Atom& atom, const std::string& var, bool plus);

// atom[var // g-th root of shadow]: exponents are divided by g; pure-power
// atoms are exponent-adjusted first (any m > 0 for equations, same parity for
// orderings).
QFFormula vs_shift(const Atom& atom, const std::string& var, unsigned g,
                   const std::string& shadow);

// guard /\ psi[var // point], basic simplification applied.
QFFormula vs_formula(const QFFormula& psi, const std::string& var, const GuardedTestPoint& p);

// Elimination set for var in psi: root candidates per atom (with guards,
// wrapped in -eps for strict relations) plus the always-present +infinity.
// Throws DegreeTooHighError when some atom exceeds degree 2 in var.
std::vector<GuardedTestPoint> elimination_set(const std::string& var, const QFFormula& psi);

struct DegreeShift {
    unsigned g;
    std::string shadow;
    QFFormula shifted;  // psi with var powers divided (not including guard)
    QFFormula guard;    // shadow >= 0 for even g, true otherwise
};

// Attempts a degree shift of var in psi using the adjusted exponent gcd;
// returns nothing when the gcd is 1.
std::optional<DegreeShift> degree_shift(const std::string& var, const QFFormula& psi,
                                        const std::string& shadow_name);

}  // namespace realqe
