#include "realqe/formula.hpp"

#include <algorithm>
#include <sstream>

namespace realqe {

Rel flip_relation(Rel r) {
    switch (r) {
        case Rel::Le: return Rel::Ge;
        case Rel::Lt: return Rel::Gt;
        case Rel::Ge: return Rel::Le;
        case Rel::Gt: return Rel::Lt;
        default: return r;
    }
}

Rel complement_relation(Rel r) {
    switch (r) {
        case Rel::Eq: return Rel::Ne;
        case Rel::Ne: return Rel::Eq;
        case Rel::Le: return Rel::Gt;
        case Rel::Lt: return Rel::Ge;
        case Rel::Ge: return Rel::Lt;
        case Rel::Gt: return Rel::Le;
    }
    return r;
}

bool relation_holds(Rel r, int sign) {
    switch (r) {
        case Rel::Eq: return sign == 0;
        case Rel::Ne: return sign != 0;
        case Rel::Le: return sign <= 0;
        case Rel::Lt: return sign < 0;
        case Rel::Ge: return sign >= 0;
        case Rel::Gt: return sign > 0;
    }
    return false;
}

std::string relation_symbol(Rel r) {
    switch (r) {
        case Rel::Eq: return "=";
        case Rel::Ne: return "!=";
        case Rel::Le: return "<=";
        case Rel::Lt: return "<";
        case Rel::Ge: return ">=";
        case Rel::Gt: return ">";
    }
    return "?";
}

QFFormula QFFormula::truth(bool value) {
    static const auto true_rep = std::make_shared<const Rep>(Rep{Kind::True, {}, {}});
    static const auto false_rep = std::make_shared<const Rep>(Rep{Kind::False, {}, {}});
    return QFFormula(value ? true_rep : false_rep);
}

QFFormula QFFormula::atom(Atom a) {
    return QFFormula(std::make_shared<const Rep>(Rep{Kind::Atomic, std::move(a), {}}));
}

QFFormula QFFormula::atom(MultiPoly lhs, Rel rel) { return atom(Atom{std::move(lhs), rel}); }

QFFormula QFFormula::conj(std::vector<QFFormula> children) {
    std::vector<QFFormula> kept;
    for (auto& c : children) {
        if (c.is_false()) return truth(false);
        if (c.is_true()) continue;
        kept.push_back(std::move(c));
    }
    if (kept.empty()) return truth(true);
    if (kept.size() == 1) return kept.front();
    return QFFormula(std::make_shared<const Rep>(Rep{Kind::And, {}, std::move(kept)}));
}

QFFormula QFFormula::disj(std::vector<QFFormula> children) {
    std::vector<QFFormula> kept;
    for (auto& c : children) {
        if (c.is_true()) return truth(true);
        if (c.is_false()) continue;
        kept.push_back(std::move(c));
    }
    if (kept.empty()) return truth(false);
    if (kept.size() == 1) return kept.front();
    return QFFormula(std::make_shared<const Rep>(Rep{Kind::Or, {}, std::move(kept)}));
}

bool QFFormula::operator==(const QFFormula& o) const {
    if (rep_ == o.rep_) return true;
    if (kind() != o.kind()) return false;
    switch (kind()) {
        case Kind::True:
        case Kind::False: return true;
        case Kind::Atomic: return atom_ref() == o.atom_ref();
        default: break;
    }
    if (children().size() != o.children().size()) return false;
    for (size_t i = 0; i < children().size(); ++i)
        if (!(children()[i] == o.children()[i])) return false;
    return true;
}

bool QFFormula::operator<(const QFFormula& o) const {
    if (kind() != o.kind()) return kind() < o.kind();
    switch (kind()) {
        case Kind::True:
        case Kind::False: return false;
        case Kind::Atomic: return atom_ref() < o.atom_ref();
        default: break;
    }
    const auto a = children();
    const auto b = o.children();
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::set<std::string> QFFormula::variables() const {
    std::set<std::string> vars;
    switch (kind()) {
        case Kind::Atomic: return atom_ref().lhs.variables();
        case Kind::And:
        case Kind::Or:
            for (const auto& c : children()) {
                auto sub = c.variables();
                vars.insert(sub.begin(), sub.end());
            }
            break;
        default: break;
    }
    return vars;
}

bool QFFormula::contains(const std::string& var) const {
    switch (kind()) {
        case Kind::Atomic: return atom_ref().lhs.contains(var);
        case Kind::And:
        case Kind::Or:
            for (const auto& c : children())
                if (c.contains(var)) return true;
            return false;
        default: return false;
    }
}

QFFormula QFFormula::map_atoms(const std::function<QFFormula(const Atom&)>& fn) const {
    switch (kind()) {
        case Kind::True:
        case Kind::False: return *this;
        case Kind::Atomic: return fn(atom_ref());
        case Kind::And: {
            std::vector<QFFormula> mapped;
            mapped.reserve(children().size());
            for (const auto& c : children()) mapped.push_back(c.map_atoms(fn));
            return conj(std::move(mapped));
        }
        case Kind::Or: {
            std::vector<QFFormula> mapped;
            mapped.reserve(children().size());
            for (const auto& c : children()) mapped.push_back(c.map_atoms(fn));
            return disj(std::move(mapped));
        }
    }
    return *this;
}

QFFormula QFFormula::substitute(const std::string& var, const MultiPoly& value) const {
    return map_atoms([&](const Atom& a) {
        return QFFormula::atom(a.lhs.substitute(var, value), a.rel);
    });
}

bool QFFormula::evaluate(const std::map<std::string, Rational>& point) const {
    switch (kind()) {
        case Kind::True: return true;
        case Kind::False: return false;
        case Kind::Atomic: return relation_holds(atom_ref().rel, sgn(atom_ref().lhs.eval(point)));
        case Kind::And:
            for (const auto& c : children())
                if (!c.evaluate(point)) return false;
            return true;
        case Kind::Or:
            for (const auto& c : children())
                if (c.evaluate(point)) return true;
            return false;
    }
    return false;
}

std::set<std::string> ExistsBlock::parameters() const {
    std::set<std::string> vars = matrix.variables();
    for (const auto& q : quantified) vars.erase(q);
    return vars;
}

ExistsBlock fix_parameters(const ExistsBlock& f, const ParameterAssignment& a) {
    std::set<std::string> known = f.matrix.variables();
    for (const auto& q : f.quantified) known.insert(q);
    for (const auto& [var, value] : a) {
        (void)value;
        if (!known.count(var))
            throw std::runtime_error("fix: unknown variable " + var);
    }
    QFFormula matrix = f.matrix.map_atoms([&](const Atom& at) {
        MultiPoly p = at.lhs;
        for (const auto& [var, value] : a)
            if (p.contains(var)) p = p.substitute_rational_scaled(var, value);
        return QFFormula::atom(std::move(p), at.rel);
    });
    std::vector<std::string> quantified;
    for (const auto& q : f.quantified)
        if (!a.count(q)) quantified.push_back(q);
    return ExistsBlock{std::move(quantified), std::move(matrix)};
}

}  // namespace realqe
