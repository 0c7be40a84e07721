#include <algorithm>
#include <set>

#include "realqe/formula.hpp"
#include "realqe/unipoly.hpp"

namespace realqe {

namespace {

// Sign set of a relation against 0: bit 0 = negative, bit 1 = zero, bit 2 = positive.
using SignMask = unsigned;
constexpr SignMask kNeg = 1, kZero = 2, kPos = 4, kAll = 7;

SignMask mask_of(Rel r) {
    switch (r) {
        case Rel::Lt: return kNeg;
        case Rel::Le: return kNeg | kZero;
        case Rel::Eq: return kZero;
        case Rel::Ge: return kZero | kPos;
        case Rel::Gt: return kPos;
        case Rel::Ne: return kNeg | kPos;
    }
    return kAll;
}

QFFormula from_mask(const MultiPoly& lhs, SignMask m) {
    switch (m) {
        case 0: return QFFormula::truth(false);
        case kNeg: return QFFormula::atom(lhs, Rel::Lt);
        case kZero: return QFFormula::atom(lhs, Rel::Eq);
        case kPos: return QFFormula::atom(lhs, Rel::Gt);
        case kNeg | kZero: return QFFormula::atom(lhs, Rel::Le);
        case kZero | kPos: return QFFormula::atom(lhs, Rel::Ge);
        case kNeg | kPos: return QFFormula::atom(lhs, Rel::Ne);
        default: return QFFormula::truth(true);
    }
}

bool is_univariate(const MultiPoly& p, std::string* var) {
    auto vars = p.variables();
    if (vars.size() != 1) return false;
    *var = *vars.begin();
    return true;
}

// Context: for each normalized lhs, the sign set known to hold.
using Context = std::map<MultiPoly, SignMask>;

QFFormula apply_context(const QFFormula& f, const Context& ctx) {
    if (ctx.empty()) return f;
    return f.map_atoms([&](const Atom& a) {
        auto it = ctx.find(a.lhs);
        if (it == ctx.end()) return QFFormula::atom(a);
        SignMask m = mask_of(a.rel);
        if ((m & it->second) == 0) return QFFormula::truth(false);
        if ((it->second & ~m & kAll) == 0) return QFFormula::truth(true);
        return QFFormula::atom(a);
    });
}

QFFormula simplify_node(const QFFormula& f);

QFFormula simplify_junction(const QFFormula& f) {
    const bool conjunctive = f.kind() == QFFormula::Kind::And;
    // Simplify children and flatten nested junctions of the same kind.
    std::vector<QFFormula> flat;
    for (const auto& c : f.children()) {
        QFFormula s = simplify_node(c);
        if (s.kind() == f.kind())
            for (const auto& g : s.children()) flat.push_back(g);
        else
            flat.push_back(std::move(s));
    }
    // Merge atoms over the same normalized lhs.
    std::vector<MultiPoly> order;
    Context merged;
    std::vector<QFFormula> others;
    std::set<QFFormula> seen;
    for (auto& c : flat) {
        if (c.kind() == QFFormula::Kind::Atomic) {
            const Atom& a = c.atom_ref();
            auto [it, fresh] = merged.emplace(a.lhs, mask_of(a.rel));
            if (fresh)
                order.push_back(a.lhs);
            else if (conjunctive)
                it->second &= mask_of(a.rel);
            else
                it->second |= mask_of(a.rel);
        } else if (seen.insert(c).second) {
            others.push_back(std::move(c));
        }
    }
    for (const auto& [lhs, m] : merged) {
        if (conjunctive && m == 0) return QFFormula::truth(false);
        if (!conjunctive && m == kAll) return QFFormula::truth(true);
    }
    // Propagate atom facts into the composite siblings. In a conjunction the
    // atom holds as stated; in a disjunction the remaining branches may assume
    // its complement.
    Context ctx;
    for (const auto& [lhs, m] : merged) ctx.emplace(lhs, conjunctive ? m : (~m & kAll));
    std::vector<QFFormula> rebuilt;
    for (const auto& lhs : order) rebuilt.push_back(from_mask(lhs, merged.at(lhs)));
    for (const auto& c : others) rebuilt.push_back(apply_context(c, ctx));
    // Absorption: in an And, an Or child containing a sibling as a disjunct is
    // redundant (dually for Or with And children).
    const auto absorbed = [&](const QFFormula& child) {
        auto inner = conjunctive ? QFFormula::Kind::Or : QFFormula::Kind::And;
        if (child.kind() != inner) return false;
        for (const auto& d : child.children())
            for (const auto& s : rebuilt)
                if (!(s == child) && s == d) return true;
        return false;
    };
    std::vector<QFFormula> kept;
    for (const auto& c : rebuilt)
        if (!absorbed(c)) kept.push_back(c);
    return conjunctive ? QFFormula::conj(std::move(kept)) : QFFormula::disj(std::move(kept));
}

QFFormula simplify_node(const QFFormula& f) {
    switch (f.kind()) {
        case QFFormula::Kind::True:
        case QFFormula::Kind::False: return f;
        case QFFormula::Kind::Atomic: return normalize_atom(f.atom_ref());
        case QFFormula::Kind::And:
        case QFFormula::Kind::Or: return simplify_junction(f);
    }
    return f;
}

}  // namespace

QFFormula normalize_atom(const Atom& a) {
    MultiPoly p = a.lhs;
    Rel rel = a.rel;
    if (p.is_constant()) return QFFormula::truth(relation_holds(rel, sgn(p.constant_value())));
    p = p.primitive_part();
    // Equations over one variable: the squarefree part has the same zeros.
    // Applied only when it lands inside the quadratic fragment; otherwise it
    // can destroy the even-exponent structure a degree shift needs
    // (x^4 + x^2 would become x^3 + x).
    std::string var;
    if ((rel == Rel::Eq || rel == Rel::Ne) && is_univariate(p, &var)) {
        UniPoly u = UniPoly::from_multi(p, var);
        if (u.degree() >= 2) {
            UniPoly sf = squarefree_part(u);
            if (sf.degree() <= 2) p = sf.to_multi(var).primitive_part();
        }
    }
    if (p.leading_coefficient() < 0) {
        p = -p;
        rel = flip_relation(rel);
    }
    return QFFormula::atom(std::move(p), rel);
}

QFFormula simplify(const QFFormula& f) {
    QFFormula cur = f;
    for (int pass = 0; pass < 8; ++pass) {
        QFFormula next = simplify_node(cur);
        if (next == cur) break;
        cur = std::move(next);
    }
    return cur;
}

}  // namespace realqe
