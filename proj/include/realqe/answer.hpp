#pragma once

#include <memory>
#include <set>
#include <span>
#include <string>

#include "realqe/multipoly.hpp"

namespace realqe {

// Expression tree for back-substituted answers: rational constants,
// parameters, field operations, radicals, and the nonstandard leaves eps_i
// and inf_i that standard-answer computation later removes.
class AnswerExpression {
  public:
    enum class Kind {
        Constant,
        Variable,
        Epsilon,
        Infinity,
        Add,
        Sub,
        Mul,
        Div,
        Sqrt,
        NthRoot,
    };

    AnswerExpression() : AnswerExpression(constant(Rational(0))) {}

    static AnswerExpression constant(Rational value);
    static AnswerExpression variable(std::string name);
    static AnswerExpression epsilon(unsigned index);
    static AnswerExpression infinity(unsigned index);
    static AnswerExpression add(AnswerExpression a, AnswerExpression b);
    static AnswerExpression sub(AnswerExpression a, AnswerExpression b);
    static AnswerExpression mul(AnswerExpression a, AnswerExpression b);
    static AnswerExpression div(AnswerExpression a, AnswerExpression b);
    static AnswerExpression sqrt(AnswerExpression a);
    static AnswerExpression nth_root(AnswerExpression a, unsigned g);

    static AnswerExpression from_poly(const MultiPoly& p);

    Kind kind() const { return rep_->kind; }
    const Rational& value() const { return rep_->value; }
    const std::string& name() const { return rep_->name; }
    unsigned index() const { return rep_->index; }
    unsigned root_degree() const { return rep_->index; }
    std::span<const AnswerExpression> operands() const { return rep_->operands; }

    bool is_constant() const { return kind() == Kind::Constant; }
    // True when no eps/inf leaf occurs anywhere.
    bool standard() const;
    std::set<std::string> variables() const;
    std::set<unsigned> epsilon_indices() const;
    std::set<unsigned> infinity_indices() const;

    AnswerExpression substitute(const std::string& var, const AnswerExpression& value) const;

    std::string to_string() const;

  private:
    struct Rep {
        Kind kind;
        Rational value;           // Constant
        std::string name;         // Variable
        unsigned index = 0;       // Epsilon/Infinity index, NthRoot degree
        std::vector<AnswerExpression> operands;
    };
    explicit AnswerExpression(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
    static AnswerExpression make(Rep rep);
    std::shared_ptr<const Rep> rep_;
};

}  // namespace realqe
