#include "realqe/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>

namespace realqe {

namespace {

// A linear constraint sum(coeffs) + c0 (<|<=) 0.
struct LinearConstraint {
    std::map<std::string, Rational> coeffs;
    Rational c0;
    bool strict;
};

std::optional<LinearConstraint> to_linear(const MultiPoly& p, bool strict) {
    LinearConstraint out;
    out.strict = strict;
    out.c0 = 0;
    for (const auto& [m, c] : p.terms()) {
        if (m.empty()) {
            out.c0 += Rational(c);
        } else if (m.size() == 1 && m[0].second == 1) {
            out.coeffs[m[0].first] += Rational(c);
        } else {
            return std::nullopt;
        }
    }
    return out;
}

// DNF of a formula whose atoms carry only <= and < (rewritten below).
using Conjunct = std::vector<Atom>;

void expand_dnf(const QFFormula& f, std::vector<Conjunct>& out, size_t cap) {
    switch (f.kind()) {
        case QFFormula::Kind::True: out.push_back({}); return;
        case QFFormula::Kind::False: return;
        case QFFormula::Kind::Atomic: out.push_back({f.atom_ref()}); return;
        case QFFormula::Kind::Or:
            for (const auto& c : f.children()) {
                expand_dnf(c, out, cap);
                if (out.size() > cap)
                    throw std::runtime_error("fourier_motzkin: DNF expansion exceeds cap");
            }
            return;
        case QFFormula::Kind::And: {
            std::vector<Conjunct> acc{{}};
            for (const auto& c : f.children()) {
                std::vector<Conjunct> child;
                expand_dnf(c, child, cap);
                std::vector<Conjunct> next;
                for (const auto& a : acc)
                    for (const auto& b : child) {
                        Conjunct merged = a;
                        merged.insert(merged.end(), b.begin(), b.end());
                        next.push_back(std::move(merged));
                        if (next.size() > cap)
                            throw std::runtime_error(
                                "fourier_motzkin: DNF expansion exceeds cap");
                    }
                acc = std::move(next);
            }
            for (auto& c : acc) out.push_back(std::move(c));
            if (out.size() > cap)
                throw std::runtime_error("fourier_motzkin: DNF expansion exceeds cap");
            return;
        }
    }
}

bool conjunct_satisfiable(const Conjunct& atoms, const std::vector<std::string>& vars) {
    // Normalize every atom into <=/< constraints.
    std::vector<LinearConstraint> cs;
    for (const auto& a : atoms) {
        auto add = [&](const MultiPoly& p, bool strict) {
            auto lc = to_linear(p, strict);
            if (!lc) throw NonlinearAtomError("fourier_motzkin: nonlinear atom");
            cs.push_back(std::move(*lc));
        };
        switch (a.rel) {
            case Rel::Le: add(a.lhs, false); break;
            case Rel::Lt: add(a.lhs, true); break;
            case Rel::Ge: add(-a.lhs, false); break;
            case Rel::Gt: add(-a.lhs, true); break;
            case Rel::Eq:
                add(a.lhs, false);
                add(-a.lhs, false);
                break;
            case Rel::Ne:
                throw std::runtime_error("fourier_motzkin: '!=' must be split before DNF");
        }
    }
    for (const auto& v : vars) {
        std::vector<LinearConstraint> lowers, uppers, rest;
        for (auto& c : cs) {
            auto it = c.coeffs.find(v);
            Rational k = it == c.coeffs.end() ? Rational(0) : it->second;
            if (k == 0) {
                rest.push_back(std::move(c));
            } else {
                // normalize to v (<|<=) expr or v (>|>=) expr
                LinearConstraint b;
                b.strict = c.strict;
                for (const auto& [w, cw] : c.coeffs)
                    if (w != v) b.coeffs[w] = -cw / k;
                b.c0 = -c.c0 / k;
                if (k > 0)
                    uppers.push_back(std::move(b));  // v <= bound
                else
                    lowers.push_back(std::move(b));  // v >= bound
            }
        }
        cs = std::move(rest);
        for (const auto& lo : lowers)
            for (const auto& up : uppers) {
                // lo_expr <= v <= up_expr: require lo_expr - up_expr (<|<=) 0
                LinearConstraint c;
                c.strict = lo.strict || up.strict;
                c.coeffs = lo.coeffs;
                for (const auto& [w, cw] : up.coeffs) c.coeffs[w] -= cw;
                for (auto it = c.coeffs.begin(); it != c.coeffs.end();)
                    it = it->second == 0 ? c.coeffs.erase(it) : std::next(it);
                c.c0 = lo.c0 - up.c0;
                cs.push_back(std::move(c));
            }
    }
    for (const auto& c : cs) {
        if (!c.coeffs.empty())
            throw std::runtime_error("fourier_motzkin: free variable left over");
        if (c.strict ? !(c.c0 < 0) : !(c.c0 <= 0)) return false;
    }
    return true;
}

}  // namespace

bool fourier_motzkin_decide(const ExistsBlock& f, size_t max_dnf) {
    if (!f.parameters().empty())
        throw std::runtime_error("fourier_motzkin: formula is not closed");
    if (max_dnf == 0) {
        max_dnf = 4096;
        if (const char* env = std::getenv("REALQE_MAX_DNF")) {
            size_t v = std::strtoull(env, nullptr, 10);
            if (v > 0) max_dnf = v;
        }
    }
    // Split '=' into two inequalities and '!=' into a strict disjunction.
    QFFormula matrix = f.matrix.map_atoms([](const Atom& a) {
        if (a.rel == Rel::Ne)
            return QFFormula::disj(
                {QFFormula::atom(a.lhs, Rel::Lt), QFFormula::atom(a.lhs, Rel::Gt)});
        return QFFormula::atom(a);
    });
    std::vector<Conjunct> dnf;
    expand_dnf(matrix, dnf, max_dnf);
    for (const auto& conj : dnf)
        if (conjunct_satisfiable(conj, f.quantified)) return true;
    return false;
}

bool univariate_sample_decide(const ExistsBlock& f) {
    if (f.quantified.size() != 1)
        throw std::runtime_error("univariate_sample_decide: need exactly one quantified variable");
    if (!f.parameters().empty())
        throw std::runtime_error("univariate_sample_decide: formula is not closed");
    const std::string& v = f.quantified.front();
    // Collect distinct nonconstant atom polynomials.
    std::vector<UniPoly> polys;
    f.matrix.map_atoms([&](const Atom& a) {
        if (!a.lhs.is_constant()) {
            UniPoly p = UniPoly::from_multi(a.lhs, v);
            if (std::find(polys.begin(), polys.end(), p) == polys.end()) polys.push_back(p);
        }
        return QFFormula::atom(a);
    });
    if (polys.empty()) return f.matrix.evaluate({{v, Rational(0)}});
    // All roots, sorted and deduplicated.
    std::vector<RealAlgebraicNumber> roots;
    for (const auto& p : polys)
        for (const auto& [lo, hi] : sturm_isolate(p))
            roots.push_back(RealAlgebraicNumber::from_root(p, lo, hi));
    // Every atom polynomial is sign-constant when no real roots exist.
    if (roots.empty()) return f.matrix.evaluate({{v, Rational(0)}});
    std::sort(roots.begin(), roots.end(),
              [](const RealAlgebraicNumber& a, const RealAlgebraicNumber& b) {
                  return a.compare(b) < 0;
              });
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [](const RealAlgebraicNumber& a, const RealAlgebraicNumber& b) {
                                return a.compare(b) == 0;
                            }),
                roots.end());
    // Rational samples between consecutive roots and beyond the extremes.
    std::vector<Rational> rational_samples;
    rational_samples.push_back(roots.front().lo() - 1);
    rational_samples.push_back(roots.back().hi() + 1);
    for (size_t i = 0; i + 1 < roots.size(); ++i) {
        RealAlgebraicNumber a = roots[i], b = roots[i + 1];
        while (!(a.hi() <= b.lo())) {
            a = a.refined();
            b = b.refined();
        }
        rational_samples.push_back((a.hi() + b.lo()) / 2);
    }
    for (const auto& q : rational_samples)
        if (f.matrix.evaluate({{v, q}})) return true;
    for (const auto& r : roots)
        if (check_satisfaction(f.matrix, {{v, r}})) return true;
    return false;
}

bool check_satisfaction(const QFFormula& psi,
                        const std::map<std::string, RealAlgebraicNumber>& assignment) {
    switch (psi.kind()) {
        case QFFormula::Kind::True: return true;
        case QFFormula::Kind::False: return false;
        case QFFormula::Kind::Atomic: {
            const Atom& a = psi.atom_ref();
            int s = eval_poly_at_rans(a.lhs, assignment).sign();
            return relation_holds(a.rel, s);
        }
        case QFFormula::Kind::And:
            for (const auto& c : psi.children())
                if (!check_satisfaction(c, assignment)) return false;
            return true;
        case QFFormula::Kind::Or:
            for (const auto& c : psi.children())
                if (check_satisfaction(c, assignment)) return true;
            return false;
    }
    return false;
}

}  // namespace realqe
