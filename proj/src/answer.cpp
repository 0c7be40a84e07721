#include "realqe/answer.hpp"

#include <sstream>

namespace realqe {

AnswerExpression AnswerExpression::make(Rep rep) {
    return AnswerExpression(std::make_shared<const Rep>(std::move(rep)));
}

AnswerExpression AnswerExpression::constant(Rational value) {
    return make({Kind::Constant, std::move(value), "", 0, {}});
}

AnswerExpression AnswerExpression::variable(std::string name) {
    return make({Kind::Variable, Rational(0), std::move(name), 0, {}});
}

AnswerExpression AnswerExpression::epsilon(unsigned index) {
    return make({Kind::Epsilon, Rational(0), "", index, {}});
}

AnswerExpression AnswerExpression::infinity(unsigned index) {
    return make({Kind::Infinity, Rational(0), "", index, {}});
}

AnswerExpression AnswerExpression::add(AnswerExpression a, AnswerExpression b) {
    if (a.is_constant() && b.is_constant()) return constant(a.value() + b.value());
    if (a.is_constant() && a.value() == 0) return b;
    if (b.is_constant() && b.value() == 0) return a;
    return make({Kind::Add, Rational(0), "", 0, {std::move(a), std::move(b)}});
}

AnswerExpression AnswerExpression::sub(AnswerExpression a, AnswerExpression b) {
    if (a.is_constant() && b.is_constant()) return constant(a.value() - b.value());
    if (b.is_constant() && b.value() == 0) return a;
    return make({Kind::Sub, Rational(0), "", 0, {std::move(a), std::move(b)}});
}

AnswerExpression AnswerExpression::mul(AnswerExpression a, AnswerExpression b) {
    if (a.is_constant() && b.is_constant()) return constant(a.value() * b.value());
    if (a.is_constant()) {
        if (a.value() == 0) return constant(Rational(0));
        if (a.value() == 1) return b;
    }
    if (b.is_constant()) {
        if (b.value() == 0) return constant(Rational(0));
        if (b.value() == 1) return a;
    }
    return make({Kind::Mul, Rational(0), "", 0, {std::move(a), std::move(b)}});
}

AnswerExpression AnswerExpression::div(AnswerExpression a, AnswerExpression b) {
    if (b.is_constant() && b.value() == 1) return a;
    if (a.is_constant() && b.is_constant() && b.value() != 0)
        return constant(a.value() / b.value());
    return make({Kind::Div, Rational(0), "", 0, {std::move(a), std::move(b)}});
}

AnswerExpression AnswerExpression::sqrt(AnswerExpression a) {
    return make({Kind::Sqrt, Rational(0), "", 0, {std::move(a)}});
}

AnswerExpression AnswerExpression::nth_root(AnswerExpression a, unsigned g) {
    if (g == 1) return a;
    if (g == 2) return sqrt(std::move(a));
    return make({Kind::NthRoot, Rational(0), "", g, {std::move(a)}});
}

AnswerExpression AnswerExpression::from_poly(const MultiPoly& p) {
    AnswerExpression acc = constant(Rational(0));
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        AnswerExpression term = constant(Rational(abs(c)));
        for (const auto& [v, e] : m)
            for (unsigned k = 0; k < e; ++k) term = mul(term, variable(v));
        if (first) {
            acc = c < 0 ? sub(constant(Rational(0)), term) : term;
            first = false;
        } else {
            acc = c < 0 ? sub(std::move(acc), term) : add(std::move(acc), term);
        }
    }
    return acc;
}

bool AnswerExpression::standard() const {
    if (kind() == Kind::Epsilon || kind() == Kind::Infinity) return false;
    for (const auto& op : operands())
        if (!op.standard()) return false;
    return true;
}

std::set<std::string> AnswerExpression::variables() const {
    std::set<std::string> vars;
    if (kind() == Kind::Variable) vars.insert(name());
    for (const auto& op : operands()) {
        auto sub = op.variables();
        vars.insert(sub.begin(), sub.end());
    }
    return vars;
}

std::set<unsigned> AnswerExpression::epsilon_indices() const {
    std::set<unsigned> idx;
    if (kind() == Kind::Epsilon) idx.insert(index());
    for (const auto& op : operands()) {
        auto sub = op.epsilon_indices();
        idx.insert(sub.begin(), sub.end());
    }
    return idx;
}

std::set<unsigned> AnswerExpression::infinity_indices() const {
    std::set<unsigned> idx;
    if (kind() == Kind::Infinity) idx.insert(index());
    for (const auto& op : operands()) {
        auto sub = op.infinity_indices();
        idx.insert(sub.begin(), sub.end());
    }
    return idx;
}

AnswerExpression AnswerExpression::substitute(const std::string& var,
                                              const AnswerExpression& value) const {
    switch (kind()) {
        case Kind::Variable: return name() == var ? value : *this;
        case Kind::Constant:
        case Kind::Epsilon:
        case Kind::Infinity: return *this;
        case Kind::Add:
            return add(operands()[0].substitute(var, value), operands()[1].substitute(var, value));
        case Kind::Sub:
            return sub(operands()[0].substitute(var, value), operands()[1].substitute(var, value));
        case Kind::Mul:
            return mul(operands()[0].substitute(var, value), operands()[1].substitute(var, value));
        case Kind::Div:
            return div(operands()[0].substitute(var, value), operands()[1].substitute(var, value));
        case Kind::Sqrt: return sqrt(operands()[0].substitute(var, value));
        case Kind::NthRoot: return nth_root(operands()[0].substitute(var, value), index());
    }
    return *this;
}

namespace {

// Precedence: additive 1, multiplicative 2, leaves/calls 3.
int precedence(AnswerExpression::Kind k) {
    switch (k) {
        case AnswerExpression::Kind::Add:
        case AnswerExpression::Kind::Sub: return 1;
        case AnswerExpression::Kind::Mul:
        case AnswerExpression::Kind::Div: return 2;
        default: return 3;
    }
}

void print(std::ostringstream& out, const AnswerExpression& e, int parent_prec) {
    int prec = precedence(e.kind());
    bool parens = prec < parent_prec;
    // Negative constants need parentheses inside products.
    if (e.kind() == AnswerExpression::Kind::Constant && e.value() < 0 && parent_prec >= 2)
        parens = true;
    if (parens) out << "(";
    switch (e.kind()) {
        case AnswerExpression::Kind::Constant: out << to_string(e.value()); break;
        case AnswerExpression::Kind::Variable: out << e.name(); break;
        case AnswerExpression::Kind::Epsilon: out << "eps_" << e.index(); break;
        case AnswerExpression::Kind::Infinity: out << "inf_" << e.index(); break;
        case AnswerExpression::Kind::Add:
            print(out, e.operands()[0], 1);
            out << " + ";
            print(out, e.operands()[1], 2);
            break;
        case AnswerExpression::Kind::Sub:
            if (e.operands()[0].kind() == AnswerExpression::Kind::Constant &&
                e.operands()[0].value() == 0) {
                out << "-";
                print(out, e.operands()[1], 2);
                break;
            }
            print(out, e.operands()[0], 1);
            out << " - ";
            print(out, e.operands()[1], 2);
            break;
        case AnswerExpression::Kind::Mul:
            print(out, e.operands()[0], 2);
            out << "*";
            print(out, e.operands()[1], 3);
            break;
        case AnswerExpression::Kind::Div:
            print(out, e.operands()[0], 3);
            out << "/";
            print(out, e.operands()[1], 3);
            break;
        case AnswerExpression::Kind::Sqrt:
            out << "sqrt(";
            print(out, e.operands()[0], 0);
            out << ")";
            break;
        case AnswerExpression::Kind::NthRoot:
            out << "root(" << e.root_degree() << ", ";
            print(out, e.operands()[0], 0);
            out << ")";
            break;
    }
    if (parens) out << ")";
}

}  // namespace

std::string AnswerExpression::to_string() const {
    std::ostringstream out;
    print(out, *this, 0);
    return out.str();
}

}  // namespace realqe
