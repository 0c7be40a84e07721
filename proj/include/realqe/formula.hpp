#pragma once

#include <functional>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "realqe/multipoly.hpp"

namespace realqe {

enum class Rel { Eq, Le, Lt, Ge, Gt, Ne };

Rel flip_relation(Rel r);        // relation of -p vs 0 given p rel 0
Rel complement_relation(Rel r);  // relation of "not (p rel 0)"
bool relation_holds(Rel r, int sign);
std::string relation_symbol(Rel r);

// Atomic constraint lhs rel 0.
struct Atom {
    MultiPoly lhs;
    Rel rel;

    bool operator==(const Atom& o) const { return rel == o.rel && lhs == o.lhs; }
    bool operator<(const Atom& o) const {
        if (rel != o.rel) return rel < o.rel;
        return lhs < o.lhs;
    }
};

// Quantifier-free and-or combination of atoms. Immutable, shared subtrees.
class QFFormula {
  public:
    enum class Kind { True, False, Atomic, And, Or };

    QFFormula() : QFFormula(truth(true)) {}

    static QFFormula truth(bool value);
    static QFFormula atom(Atom a);
    static QFFormula atom(MultiPoly lhs, Rel rel);
    // Smart constructors: flatten nothing, but collapse units and arity 0/1.
    static QFFormula conj(std::vector<QFFormula> children);
    static QFFormula disj(std::vector<QFFormula> children);

    Kind kind() const { return rep_->kind; }
    bool is_true() const { return kind() == Kind::True; }
    bool is_false() const { return kind() == Kind::False; }
    const Atom& atom_ref() const { return rep_->atom; }
    std::span<const QFFormula> children() const { return rep_->children; }

    bool operator==(const QFFormula& o) const;
    bool operator<(const QFFormula& o) const;

    std::set<std::string> variables() const;
    bool contains(const std::string& var) const;

    // Structural map over atoms; And/Or structure preserved, units collapsed.
    QFFormula map_atoms(const std::function<QFFormula(const Atom&)>& fn) const;

    QFFormula substitute(const std::string& var, const MultiPoly& value) const;

    bool evaluate(const std::map<std::string, Rational>& point) const;

    std::string to_string() const;

  private:
    struct Rep {
        Kind kind;
        Atom atom;
        std::vector<QFFormula> children;
    };
    explicit QFFormula(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
    std::shared_ptr<const Rep> rep_;
};

// Prenex existential block over a quantifier-free matrix.
// `quantified` is ordered innermost-first: for exists x exists y psi the list
// is [y, x] and elimination processes y first.
struct ExistsBlock {
    std::vector<std::string> quantified;
    QFFormula matrix;

    std::set<std::string> parameters() const;
};

struct ParseError : std::runtime_error {
    int line, column;
    ParseError(const std::string& msg, int l, int c)
        : std::runtime_error(msg + " (line " + std::to_string(l) + ", column " +
                             std::to_string(c) + ")"),
          line(l),
          column(c) {}
};

struct UnsupportedQuantifierError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parses the s-expression input format. A formula without quantifiers comes
// back as an ExistsBlock with an empty quantifier list.
ExistsBlock parse_formula(const std::string& text);

std::string print_formula(const ExistsBlock& f);
std::string print_formula(const QFFormula& f);

using ParameterAssignment = std::map<std::string, Rational>;

// Replaces assigned variables by their rational values; atoms are rescaled by
// the positive denominator power, so relations are preserved. Assigned names
// may be parameters or quantified variables; quantified ones are removed from
// the block.
ExistsBlock fix_parameters(const ExistsBlock& f, const ParameterAssignment& a);

// Basic simplifier: ground atoms evaluated, atoms normalized (content
// removed, sign canonicalized), True/False units collapsed, duplicates and
// absorbed children removed, sign-contradictory siblings detected.
QFFormula simplify(const QFFormula& f);

// Normalizes one atom: content removal, sign canonicalization (the graded-lex
// leading coefficient is made positive; order relations are mirrored), ground
// evaluation.
QFFormula normalize_atom(const Atom& a);

}  // namespace realqe
