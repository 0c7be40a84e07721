#include "realqe/vs.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace realqe {

RootExpression RootExpression::from_rational(const Rational& q) {
    return RootExpression{MultiPoly::constant(q.get_num()), MultiPoly(), MultiPoly(),
                          MultiPoly::constant(q.get_den())};
}

RootExpression RootExpression::normalized() const {
    RootExpression e = *this;
    if (e.b.is_zero() || e.c.is_zero()) {
        e.b = MultiPoly();
        e.c = MultiPoly();
    }
    Int g = e.a.content();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.b.content().get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.d.content().get_mpz_t());
    if (g > 1) {
        auto divide = [&](const MultiPoly& p) {
            MultiPoly r;
            for (const auto& [m, c] : p.terms()) {
                MultiPoly t = MultiPoly::constant(c / g);
                for (const auto& [v, k] : m) t = t * MultiPoly::term(1, v, k);
                r = r + t;
            }
            return r;
        };
        e.a = divide(e.a);
        e.b = divide(e.b);
        e.d = divide(e.d);
    }
    if (e.d.is_constant() && e.d.constant_value() < 0) {
        e.a = -e.a;
        e.b = -e.b;
        e.d = -e.d;
    }
    return e;
}

std::optional<std::string> RootExpression::as_plain_variable() const {
    if (!b.is_zero() || !(d == MultiPoly::constant(1))) return std::nullopt;
    const auto& terms = a.terms();
    if (terms.size() != 1) return std::nullopt;
    const auto& [m, c] = *terms.begin();
    if (c != 1 || m.size() != 1 || m[0].second != 1) return std::nullopt;
    return m[0].first;
}

std::string RootExpression::to_string() const {
    std::ostringstream out;
    if (b.is_zero()) {
        out << "(" << a.to_string() << ")";
    } else {
        out << "(" << a.to_string() << " + (" << b.to_string() << ")*sqrt(" << c.to_string()
            << "))";
    }
    if (!(d == MultiPoly::constant(1))) out << "/(" << d.to_string() << ")";
    return out.str();
}

TestPoint TestPoint::make_root(RootExpression e) {
    return TestPoint{Kind::Root, std::move(e), "", 0};
}
TestPoint TestPoint::root_minus_eps(RootExpression e) {
    return TestPoint{Kind::RootMinusEps, std::move(e), "", 0};
}
TestPoint TestPoint::root_plus_eps(RootExpression e) {
    return TestPoint{Kind::RootPlusEps, std::move(e), "", 0};
}
TestPoint TestPoint::var_minus_eps(std::string w) {
    return TestPoint{Kind::VarMinusEps, {}, std::move(w), 0};
}
TestPoint TestPoint::plus_infinity() { return TestPoint{Kind::PlusInfinity, {}, "", 0}; }
TestPoint TestPoint::minus_infinity() { return TestPoint{Kind::MinusInfinity, {}, "", 0}; }
TestPoint TestPoint::nth_root(unsigned g, std::string shadow) {
    return TestPoint{Kind::NthRoot, {}, std::move(shadow), g};
}

std::string TestPoint::to_string() const {
    switch (kind) {
        case Kind::Root: return root.to_string();
        case Kind::RootMinusEps: return root.to_string() + " - eps";
        case Kind::RootPlusEps: return root.to_string() + " + eps";
        case Kind::VarMinusEps: return var + " - eps";
        case Kind::PlusInfinity: return "+inf";
        case Kind::MinusInfinity: return "-inf";
        case Kind::NthRoot: return "root(" + std::to_string(g) + ", " + var + ")";
    }
    return "?";
}

namespace {

// Sign rules for A + B*sqrt(c) rel 0, assuming c >= 0. D = A^2 - B^2*c.
QFFormula radical_sign_formula(Rel rel, const MultiPoly& A, const MultiPoly& B,
                               const MultiPoly& c) {
    MultiPoly D = A * A - B * B * c;
    MultiPoly AB = A * B;
    auto atom = [](const MultiPoly& p, Rel r) { return QFFormula::atom(p, r); };
    switch (rel) {
        case Rel::Eq:
            return QFFormula::conj({atom(D, Rel::Eq), atom(AB, Rel::Le)});
        case Rel::Ne:
            return QFFormula::disj({atom(D, Rel::Ne), atom(AB, Rel::Gt)});
        case Rel::Le:
            return QFFormula::disj({QFFormula::conj({atom(A, Rel::Le), atom(D, Rel::Ge)}),
                                    QFFormula::conj({atom(B, Rel::Le), atom(D, Rel::Le)})});
        case Rel::Ge:
            return QFFormula::disj({QFFormula::conj({atom(A, Rel::Ge), atom(D, Rel::Ge)}),
                                    QFFormula::conj({atom(B, Rel::Ge), atom(D, Rel::Le)})});
        case Rel::Lt:
            return QFFormula::conj({QFFormula::disj({atom(A, Rel::Lt), atom(D, Rel::Lt)}),
                                    QFFormula::disj({atom(B, Rel::Lt), atom(D, Rel::Gt)})});
        case Rel::Gt:
            return QFFormula::conj({QFFormula::disj({atom(A, Rel::Gt), atom(D, Rel::Lt)}),
                                    QFFormula::disj({atom(B, Rel::Gt), atom(D, Rel::Gt)})});
    }
    return QFFormula::truth(false);
}

}  // namespace

QFFormula vs_root(const Atom& atom, const std::string& var, const RootExpression& e) {
    if (!atom.lhs.contains(var)) return QFFormula::atom(atom);
    const unsigned deg = atom.lhs.degree(var);
    auto coeffs = atom.lhs.coefficients_in(var);
    // (a + b sqrt(c))^j = A_j + B_j sqrt(c)
    std::vector<MultiPoly> pa(deg + 1), pb(deg + 1);
    pa[0] = MultiPoly::constant(1);
    pb[0] = MultiPoly();
    for (unsigned j = 1; j <= deg; ++j) {
        pa[j] = e.a * pa[j - 1] + e.b * e.c * pb[j - 1];
        pb[j] = e.a * pb[j - 1] + e.b * pa[j - 1];
    }
    std::vector<MultiPoly> dpow(deg + 1);
    dpow[0] = MultiPoly::constant(1);
    for (unsigned j = 1; j <= deg; ++j) dpow[j] = dpow[j - 1] * e.d;
    MultiPoly A, B;
    for (unsigned j = 0; j <= deg; ++j) {
        A = A + coeffs[j] * pa[j] * dpow[deg - j];
        B = B + coeffs[j] * pb[j] * dpow[deg - j];
    }
    // Clear the denominator sign: multiply by d once more when the implicit
    // power d^deg is odd, making it an even power.
    if (deg % 2 == 1) {
        A = A * e.d;
        B = B * e.d;
    }
    // Radical-free expressions substitute without the squaring rules.
    if (B.is_zero() || e.c.is_zero()) return QFFormula::atom(A, atom.rel);
    return radical_sign_formula(atom.rel, A, B, e.c);
}

namespace {

QFFormula eps_expansion(const Atom& atom, const std::string& var, EpsDirection dir,
                        const std::function<QFFormula(const Atom&)>& subst) {
    if (!atom.lhs.contains(var)) return QFFormula::atom(atom);
    const unsigned deg = atom.lhs.degree(var);
    std::vector<MultiPoly> derivs(deg + 1);
    derivs[0] = atom.lhs;
    for (unsigned k = 1; k <= deg; ++k) derivs[k] = derivs[k - 1].derivative(var);
    // sign of f^{(k)} as seen from the test point side
    auto signed_deriv = [&](unsigned k) {
        return (dir == EpsDirection::Minus && k % 2 == 1) ? -derivs[k] : derivs[k];
    };
    auto strict_cascade = [&](Rel strict_rel) {
        std::vector<QFFormula> cases;
        for (unsigned k = 0; k <= deg; ++k) {
            std::vector<QFFormula> conj;
            for (unsigned j = 0; j < k; ++j) conj.push_back(subst(Atom{derivs[j], Rel::Eq}));
            conj.push_back(subst(Atom{signed_deriv(k), strict_rel}));
            cases.push_back(QFFormula::conj(std::move(conj)));
        }
        return QFFormula::disj(std::move(cases));
    };
    auto all_zero = [&] {
        std::vector<QFFormula> conj;
        for (unsigned k = 0; k <= deg; ++k) conj.push_back(subst(Atom{derivs[k], Rel::Eq}));
        return QFFormula::conj(std::move(conj));
    };
    switch (atom.rel) {
        case Rel::Lt: return strict_cascade(Rel::Lt);
        case Rel::Gt: return strict_cascade(Rel::Gt);
        case Rel::Eq: return all_zero();
        case Rel::Ne: {
            std::vector<QFFormula> disj;
            for (unsigned k = 0; k <= deg; ++k) disj.push_back(subst(Atom{derivs[k], Rel::Ne}));
            return QFFormula::disj(std::move(disj));
        }
        case Rel::Le: return QFFormula::disj({strict_cascade(Rel::Lt), all_zero()});
        case Rel::Ge: return QFFormula::disj({strict_cascade(Rel::Gt), all_zero()});
    }
    return QFFormula::truth(false);
}

}  // namespace

QFFormula vs_eps(const Atom& atom, const std::string& var, const RootExpression& t,
                 EpsDirection dir) {
    return eps_expansion(atom, var, dir,
                         [&](const Atom& a) { return vs_root(a, var, t); });
}

QFFormula vs_eps(const Atom& atom, const std::string& var, const std::string& t,
                 EpsDirection dir) {
    MultiPoly tv = MultiPoly::variable(t);
    return eps_expansion(atom, var, dir, [&](const Atom& a) {
        return QFFormula::atom(a.lhs.substitute(var, tv), a.rel);
    });
}

QFFormula vs_inf(const Atom& atom, const std::string& var, bool plus) {
    if (!atom.lhs.contains(var)) return QFFormula::atom(atom);
    auto coeffs = atom.lhs.coefficients_in(var);
    // At -infinity the coefficient of v^k carries a (-1)^k.
    if (!plus)
        for (size_t k = 1; k < coeffs.size(); k += 2) coeffs[k] = -coeffs[k];
    const size_t d = coeffs.size() - 1;
    auto cascade = [&](Rel strict_rel, Rel last_rel) {
        std::vector<QFFormula> cases;
        for (size_t k = d + 1; k-- > 0;) {
            std::vector<QFFormula> conj;
            for (size_t j = d; j > k; --j) conj.push_back(QFFormula::atom(coeffs[j], Rel::Eq));
            conj.push_back(QFFormula::atom(coeffs[k], k == 0 ? last_rel : strict_rel));
            cases.push_back(QFFormula::conj(std::move(conj)));
        }
        return QFFormula::disj(std::move(cases));
    };
    switch (atom.rel) {
        case Rel::Lt: return cascade(Rel::Lt, Rel::Lt);
        case Rel::Le: return cascade(Rel::Lt, Rel::Le);
        case Rel::Gt: return cascade(Rel::Gt, Rel::Gt);
        case Rel::Ge: return cascade(Rel::Gt, Rel::Ge);
        case Rel::Eq: {
            std::vector<QFFormula> conj;
            for (const auto& c : coeffs) conj.push_back(QFFormula::atom(c, Rel::Eq));
            return QFFormula::conj(std::move(conj));
        }
        case Rel::Ne: {
            std::vector<QFFormula> disj;
            for (const auto& c : coeffs) disj.push_back(QFFormula::atom(c, Rel::Ne));
            return QFFormula::disj(std::move(disj));
        }
    }
    return QFFormula::truth(false);
}

namespace {

// Pure power: lhs = v^n * cofactor with a v-free cofactor; yields n.
std::optional<unsigned> pure_power(const MultiPoly& lhs, const std::string& var) {
    unsigned n = 0;
    bool seen = false;
    for (const auto& [m, c] : lhs.terms()) {
        (void)c;
        unsigned e = 0;
        for (const auto& [v, k] : m)
            if (v == var) e = k;
        if (!seen) {
            n = e;
            seen = true;
        } else if (e != n) {
            return std::nullopt;
        }
    }
    if (!seen || n == 0) return std::nullopt;
    return n;
}

MultiPoly shift_powers(const MultiPoly& lhs, const std::string& var, unsigned g,
                       const std::string& shadow, unsigned pure_exponent_to /* 0 = floor rule */) {
    MultiPoly r;
    for (const auto& [m, c] : lhs.terms()) {
        MultiPoly t = MultiPoly::constant(c);
        for (const auto& [v, k] : m) {
            if (v == var) {
                unsigned e = pure_exponent_to ? pure_exponent_to
                                              : std::max(k, g) / g;  // floor(max(k,g)/g)
                t = t * MultiPoly::term(1, shadow, e);
            } else {
                t = t * MultiPoly::term(1, v, k);
            }
        }
        r = r + t;
    }
    return r;
}

}  // namespace

QFFormula vs_shift(const Atom& atom, const std::string& var, unsigned g,
                   const std::string& shadow) {
    if (!atom.lhs.contains(var)) return QFFormula::atom(atom);
    auto pure = pure_power(atom.lhs, var);
    if (pure) {
        if (atom.rel == Rel::Eq || atom.rel == Rel::Ne) {
            // v^n f = 0 is equivalent to v^m f = 0 for any m > 0.
            return QFFormula::atom(shift_powers(atom.lhs, var, g, shadow, 1), atom.rel);
        }
        // Order relations: adjust to the smallest multiple of g of equal parity.
        unsigned m = (*pure % 2 == g % 2) ? g : 2 * g;
        return QFFormula::atom(shift_powers(atom.lhs, var, g, shadow, m / g), atom.rel);
    }
    return QFFormula::atom(shift_powers(atom.lhs, var, g, shadow, 0), atom.rel);
}

QFFormula vs_formula(const QFFormula& psi, const std::string& var, const GuardedTestPoint& p) {
    QFFormula applied = psi.map_atoms([&](const Atom& a) -> QFFormula {
        switch (p.point.kind) {
            case TestPoint::Kind::Root: return vs_root(a, var, p.point.root);
            case TestPoint::Kind::RootMinusEps:
                return vs_eps(a, var, p.point.root, EpsDirection::Minus);
            case TestPoint::Kind::RootPlusEps:
                return vs_eps(a, var, p.point.root, EpsDirection::Plus);
            case TestPoint::Kind::VarMinusEps:
                return vs_eps(a, var, p.point.var, EpsDirection::Minus);
            case TestPoint::Kind::PlusInfinity: return vs_inf(a, var, true);
            case TestPoint::Kind::MinusInfinity: return vs_inf(a, var, false);
            case TestPoint::Kind::NthRoot: return vs_shift(a, var, p.point.g, p.point.var);
        }
        return QFFormula::atom(a);
    });
    return simplify(QFFormula::conj({p.guard, applied}));
}

std::vector<GuardedTestPoint> elimination_set(const std::string& var, const QFFormula& psi) {
    // Atoms containing var, left to right, deduplicated.
    std::vector<Atom> atoms;
    {
        std::set<Atom> seen;
        std::function<void(const QFFormula&)> collect = [&](const QFFormula& f) {
            switch (f.kind()) {
                case QFFormula::Kind::Atomic:
                    if (f.atom_ref().lhs.contains(var) && seen.insert(f.atom_ref()).second)
                        atoms.push_back(f.atom_ref());
                    break;
                case QFFormula::Kind::And:
                case QFFormula::Kind::Or:
                    for (const auto& c : f.children()) collect(c);
                    break;
                default: break;
            }
        };
        collect(psi);
    }
    std::vector<GuardedTestPoint> set;
    auto push_unique = [&](QFFormula guard, RootExpression e, bool strict) {
        if (guard.is_false()) return;
        TestPoint tp = strict ? TestPoint::root_minus_eps(e.normalized())
                              : TestPoint::make_root(e.normalized());
        for (const auto& existing : set)
            if (existing.point == tp && existing.guard == guard) return;
        set.push_back(GuardedTestPoint{std::move(guard), std::move(tp)});
    };
    const MultiPoly one = MultiPoly::constant(1);
    const MultiPoly two = MultiPoly::constant(2);
    for (const auto& atom : atoms) {
        auto [f2, f1, f0] = quad_view(atom.lhs, var);
        const bool strict = atom.rel == Rel::Lt || atom.rel == Rel::Gt || atom.rel == Rel::Ne;
        if (!f2.is_zero()) {
            MultiPoly delta = discriminant(f2, f1, f0);
            QFFormula base_guard = simplify(QFFormula::atom(f2, Rel::Ne));
            if (delta.is_zero()) {
                push_unique(base_guard, RootExpression{-f1, MultiPoly(), MultiPoly(), two * f2},
                            strict);
            } else if (auto s = delta.sqrt_exact()) {
                // Perfect-square discriminant: two polynomial roots, no radical.
                push_unique(base_guard,
                            RootExpression{-f1 + *s, MultiPoly(), MultiPoly(), two * f2}, strict);
                push_unique(base_guard,
                            RootExpression{-f1 - *s, MultiPoly(), MultiPoly(), two * f2}, strict);
            } else {
                QFFormula guard = simplify(
                    QFFormula::conj({QFFormula::atom(f2, Rel::Ne), QFFormula::atom(delta, Rel::Ge)}));
                push_unique(guard, RootExpression{-f1, one, delta, two * f2}, strict);
                push_unique(guard, RootExpression{-f1, -one, delta, two * f2}, strict);
            }
        }
        if (!f1.is_zero()) {
            QFFormula guard = simplify(
                QFFormula::conj({QFFormula::atom(f2, Rel::Eq), QFFormula::atom(f1, Rel::Ne)}));
            push_unique(std::move(guard), RootExpression{-f0, MultiPoly(), MultiPoly(), f1},
                        strict);
        }
    }
    set.push_back(GuardedTestPoint{QFFormula::truth(true), TestPoint::plus_infinity()});
    return set;
}

std::optional<DegreeShift> degree_shift(const std::string& var, const QFFormula& psi,
                                        const std::string& shadow_name) {
    if (!psi.contains(var)) return std::nullopt;
    std::vector<Atom> atoms;
    {
        std::set<Atom> seen;
        std::function<void(const QFFormula&)> collect = [&](const QFFormula& f) {
            if (f.kind() == QFFormula::Kind::Atomic) {
                if (f.atom_ref().lhs.contains(var) && seen.insert(f.atom_ref()).second)
                    atoms.push_back(f.atom_ref());
            } else {
                for (const auto& c : f.children()) collect(c);
            }
        };
        collect(psi);
    }
    unsigned rigid_gcd = 0;
    unsigned order_flex_gcd = 0;
    bool any_order_flex_odd = false;
    unsigned eq_flex_gcd = 0;
    for (const auto& atom : atoms) {
        auto pure = pure_power(atom.lhs, var);
        if (pure && (atom.rel == Rel::Eq || atom.rel == Rel::Ne)) {
            eq_flex_gcd = std::gcd(eq_flex_gcd, *pure);
        } else if (pure) {
            order_flex_gcd = std::gcd(order_flex_gcd, *pure);
            if (*pure % 2 == 1) any_order_flex_odd = true;
        } else {
            rigid_gcd = std::gcd(rigid_gcd, atom.lhs.exponent_gcd(var));
        }
    }
    unsigned g;
    if (rigid_gcd > 0) {
        g = rigid_gcd;
        // Odd pure-power order atoms need an odd g (their adjusted exponent
        // must stay odd, so g cannot be even).
        if (any_order_flex_odd)
            while (g % 2 == 0) g /= 2;
    } else if (order_flex_gcd > 0) {
        g = order_flex_gcd;
    } else {
        g = eq_flex_gcd;
    }
    if (g <= 1) return std::nullopt;
    QFFormula shifted =
        psi.map_atoms([&](const Atom& a) { return vs_shift(a, var, g, shadow_name); });
    QFFormula guard = g % 2 == 0
                          ? QFFormula::atom(MultiPoly::variable(shadow_name), Rel::Ge)
                          : QFFormula::truth(true);
    return DegreeShift{g, shadow_name, std::move(shifted), std::move(guard)};
}

}  // namespace realqe
