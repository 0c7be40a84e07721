#include "realqe/answers.hpp"

#include <algorithm>

#include "realqe/oracle.hpp"

namespace realqe {

namespace {

constexpr int kIntegerScanCap = 64;
constexpr int kRefineCap = 10000;

RealAlgebraicNumber eval_root_expression(const RootExpression& e,
                                         const std::map<std::string, RealAlgebraicNumber>& env) {
    RealAlgebraicNumber num = eval_poly_at_rans(e.a, env);
    if (!e.b.is_zero()) {
        RealAlgebraicNumber rad = eval_poly_at_rans(e.c, env);
        if (rad.sign() < 0)
            throw InvariantViolationError("negative radicand under a checked guard");
        num = ran_add(num, ran_mul(eval_poly_at_rans(e.b, env), ran_sqrt(rad)));
    }
    return ran_div(num, eval_poly_at_rans(e.d, env));
}

// Greatest integer strictly below (or least strictly above) a real algebraic
// reference value.
Int adjacent_integer(const RealAlgebraicNumber& x, bool below) {
    if (auto q = rational_recognition(x)) {
        if (is_integer(*q)) return below ? Int(q->get_num() - 1) : Int(q->get_num() + 1);
        return below ? floor_int(*q) : ceil_int(*q);
    }
    RealAlgebraicNumber cur = x;
    while (floor_int(cur.lo()) != floor_int(cur.hi())) cur = cur.refined();
    Int f = floor_int(cur.lo());
    return below ? f : f + 1;
}

struct RowProcessor {
    const PreEQR& pre;
    PreEQRRow row;  // local copy; nudging may rewrite entries
    const StandardAnswerOptions& opts;

    size_t n = 0;
    std::map<std::string, RealAlgebraicNumber> alphas;
    std::vector<QFFormula> gamma_tilde;          // corrected guards, 0-based
    std::vector<TestPoint> corrected;            // corrected elimination terms
    std::vector<std::optional<RootExpression>> corrected_root;  // null for NthRoot

    explicit RowProcessor(const PreEQR& p, PreEQRRow r, const StandardAnswerOptions& o)
        : pre(p), row(std::move(r)), opts(o) {
        n = row.entries.size();
        gamma_tilde.assign(n, QFFormula::truth(true));
        corrected.assign(n, TestPoint::plus_infinity());
        corrected_root.assign(n, std::nullopt);
    }

    // xi for stage k (1-based): corrected outer guards /\ phi_k.
    QFFormula xi(size_t k) const {
        std::vector<QFFormula> conj;
        for (size_t j = k; j < n; ++j) conj.push_back(gamma_tilde[j]);
        conj.push_back(row.trace[k - 1]);
        return QFFormula::conj(std::move(conj));
    }

    bool xi_satisfied(size_t k, const Rational& r) const {
        auto env = alphas;
        env.emplace(row.entries[k - 1].var, RealAlgebraicNumber::from_rational(r));
        return check_satisfaction(xi(k), env);
    }

    // xi with all outer variables virtually substituted by their corrected
    // root expressions; nothing when a degree-shift entry intervenes.
    std::optional<QFFormula> xi_prime(size_t k) const {
        QFFormula chi = xi(k);
        for (size_t j = k; j < n; ++j) {
            if (!corrected_root[j]) return std::nullopt;
            const std::string& var = row.entries[j].var;
            const RootExpression& e = *corrected_root[j];
            chi = chi.map_atoms([&](const Atom& a) { return vs_root(a, var, e); });
        }
        return simplify(chi);
    }

    void check_guard(size_t k) const {
        const QFFormula& guard = row.entries[k - 1].guard;
        if (!check_satisfaction(guard, alphas))
            throw InvariantViolationError("guard of entry " + row.entries[k - 1].var +
                                          " does not hold at the outer values");
    }

    // Case (b): integer beyond the root bound of xi'.
    Rational infinity_case(size_t k, bool plus) const {
        auto sym = xi_prime(k);
        if (sym) {
            const std::string& var = row.entries[k - 1].var;
            Rational bound = 0;
            sym->map_atoms([&](const Atom& a) {
                if (!a.lhs.is_constant()) {
                    UniPoly p = UniPoly::from_multi(a.lhs, var);
                    if (p.degree() >= 1) bound = std::max(bound, cauchy_root_bound(p));
                }
                return QFFormula::atom(a);
            });
            Int start = plus ? std::max(ceil_int(bound), Int(1))
                             : std::min(Int(-ceil_int(bound)), Int(-1));
            for (int i = 0; i <= kIntegerScanCap; ++i) {
                Rational candidate(plus ? Int(start + i) : Int(start - i));
                if (xi_satisfied(k, candidate)) return candidate;
            }
            throw InvariantViolationError("no integer beyond the root bound satisfies xi'");
        }
        // Degree-shift entries block the symbolic bound; scan by doubling.
        Int c = 1;
        for (int i = 0; i < 62; ++i, c *= 2) {
            Rational candidate(plus ? c : -c);
            if (xi_satisfied(k, candidate)) return candidate;
        }
        throw InvariantViolationError("no doubling candidate satisfies xi'");
    }

    // Case (c): rational strictly below (above) the reference value.
    Rational eps_case(size_t k, const RealAlgebraicNumber& reference, bool below) const {
        Rational z(adjacent_integer(reference, below));
        if (xi_satisfied(k, z)) return z;
        RealAlgebraicNumber cur = reference;
        for (int i = 0; i < kRefineCap; ++i) {
            Rational candidate = below ? cur.lo() : cur.hi();
            if (xi_satisfied(k, candidate)) return candidate;
            cur = cur.refined();
        }
        throw InvariantViolationError("endpoint refinement did not reach a satisfying value");
    }

    // Nudge test: does replacing the stage-k root expression by root -+ eps
    // keep the scheme valid?
    std::optional<TestPoint> try_nudge(size_t k) const {
        for (size_t j = k; j < n; ++j)
            if (!corrected_root[j]) return std::nullopt;
        const PreEQREntry& entry = row.entries[k - 1];
        for (EpsDirection dir : {EpsDirection::Minus, EpsDirection::Plus}) {
            std::vector<QFFormula> conj;
            for (size_t j = k; j < n; ++j) conj.push_back(gamma_tilde[j]);
            conj.push_back(entry.guard);
            conj.push_back(row.trace[k - 1]);
            QFFormula chi = QFFormula::conj(std::move(conj));
            TestPoint tp = dir == EpsDirection::Minus
                               ? TestPoint::root_minus_eps(entry.point.root)
                               : TestPoint::root_plus_eps(entry.point.root);
            chi = vs_formula(chi, entry.var, GuardedTestPoint{QFFormula::truth(true), tp});
            for (size_t j = k; j < n; ++j) {
                const std::string& var = row.entries[j].var;
                const RootExpression& e = *corrected_root[j];
                chi = chi.map_atoms([&](const Atom& a) { return vs_root(a, var, e); });
            }
            chi = simplify(chi);
            if (chi.is_true()) return tp;
        }
        return std::nullopt;
    }

    void process_stage(size_t k) {
        PreEQREntry& entry = row.entries[k - 1];
        TestPoint point = entry.point;
        if (opts.nudge && point.kind == TestPoint::Kind::Root) {
            if (auto nudged = try_nudge(k)) point = *nudged;
        }
        switch (point.kind) {
            case TestPoint::Kind::Root: {
                check_guard(k);
                RealAlgebraicNumber value = eval_root_expression(point.root, alphas);
                alphas.emplace(entry.var, value);
                gamma_tilde[k - 1] = entry.guard;
                corrected[k - 1] = point;
                corrected_root[k - 1] = point.root;
                return;
            }
            case TestPoint::Kind::PlusInfinity:
            case TestPoint::Kind::MinusInfinity: {
                Rational c = infinity_case(k, point.kind == TestPoint::Kind::PlusInfinity);
                alphas.emplace(entry.var, RealAlgebraicNumber::from_rational(c));
                gamma_tilde[k - 1] = QFFormula::truth(true);
                corrected[k - 1] = TestPoint::make_root(RootExpression::from_rational(c));
                corrected_root[k - 1] = RootExpression::from_rational(c);
                return;
            }
            case TestPoint::Kind::VarMinusEps:
            case TestPoint::Kind::RootMinusEps:
            case TestPoint::Kind::RootPlusEps: {
                RealAlgebraicNumber reference = [&] {
                    if (point.kind == TestPoint::Kind::VarMinusEps) {
                        auto it = alphas.find(point.var);
                        if (it == alphas.end())
                            throw MalformedPointError("eps entry references unknown variable " +
                                                      point.var);
                        return it->second;
                    }
                    check_guard(k);
                    return eval_root_expression(point.root, alphas);
                }();
                bool below = point.kind != TestPoint::Kind::RootPlusEps;
                Rational c = eps_case(k, reference, below);
                alphas.emplace(entry.var, RealAlgebraicNumber::from_rational(c));
                gamma_tilde[k - 1] = QFFormula::truth(true);
                corrected[k - 1] = TestPoint::make_root(RootExpression::from_rational(c));
                corrected_root[k - 1] = RootExpression::from_rational(c);
                return;
            }
            case TestPoint::Kind::NthRoot: {
                auto it = alphas.find(point.var);
                if (it == alphas.end())
                    throw MalformedPointError("degree-shift entry references unknown variable " +
                                              point.var);
                check_guard(k);
                alphas.emplace(entry.var, ran_nth_root(it->second, point.g));
                gamma_tilde[k - 1] = entry.guard;
                corrected[k - 1] = point;
                corrected_root[k - 1] = std::nullopt;
                return;
            }
        }
        throw MalformedPointError("entry does not match any supported test-point form");
    }

    StandardRow finish() const {
        // Back-substitute the corrected answer expressions.
        std::map<std::string, AnswerExpression> resolved;
        for (size_t k = n; k-- > 0;) {
            PreEQREntry corrected_entry{row.entries[k].var, gamma_tilde[k], corrected[k]};
            AnswerExpression e = entry_expression(corrected_entry, 0, 0);
            for (size_t j = k + 1; j < n; ++j)
                e = e.substitute(row.entries[j].var, resolved.at(row.entries[j].var));
            resolved.emplace(row.entries[k].var, std::move(e));
        }
        StandardRow out;
        std::set<std::string> original(pre.quantified.begin(), pre.quantified.end());
        std::map<std::string, RealAlgebraicNumber> assignment;
        for (const auto& entry : row.entries) {
            if (!original.count(entry.var)) continue;
            const RealAlgebraicNumber& value = alphas.at(entry.var);
            StandardAnswer ans{resolved.at(entry.var), value, rational_recognition(value)};
            if (!ans.expr.standard())
                throw InvariantViolationError("nonstandard symbol left in a standard answer");
            assignment.emplace(entry.var, value);
            out.answers.emplace_back(entry.var, std::move(ans));
        }
        if (!check_satisfaction(pre.matrix, assignment))
            throw InvariantViolationError("assembled standard answers do not satisfy the matrix");
        return out;
    }
};

}  // namespace

size_t pick_row(const PreEQR& p) {
    for (size_t i = 0; i < p.rows.size(); ++i)
        if (p.rows[i].condition.is_true()) return i;
    throw AllRowsFalseError();
}

StandardRow standard_answers(const PreEQR& p, size_t row_index,
                             const StandardAnswerOptions& opts) {
    std::set<std::string> quantified(p.quantified.begin(), p.quantified.end());
    std::vector<std::string> params;
    for (const auto& v : p.matrix.variables())
        if (!quantified.count(v)) params.push_back(v);
    if (!params.empty()) throw PreconditionParametricError(std::move(params));
    if (row_index >= p.rows.size()) throw std::out_of_range("standard_answers: bad row index");
    if (!p.rows[row_index].condition.is_true())
        throw InvariantViolationError("standard answers of a row whose condition is not true");
    RowProcessor proc(p, p.rows[row_index], opts);
    for (size_t k = proc.n; k >= 1; --k) proc.process_stage(k);
    return proc.finish();
}

std::optional<PreEQRRow> eps_nudge(const PreEQR& p, size_t row_index, size_t k) {
    if (row_index >= p.rows.size() || k < 1 || k > p.rows[row_index].entries.size())
        return std::nullopt;
    const PreEQRRow& row = p.rows[row_index];
    if (row.entries[k - 1].point.kind != TestPoint::Kind::Root) return std::nullopt;
    // Outer entries must already be plain root expressions (case a), so their
    // corrected terms and guards coincide with the originals.
    RowProcessor proc(p, row, StandardAnswerOptions{});
    for (size_t j = k + 1; j <= proc.n; ++j) {
        if (row.entries[j - 1].point.kind != TestPoint::Kind::Root) return std::nullopt;
        proc.gamma_tilde[j - 1] = row.entries[j - 1].guard;
        proc.corrected[j - 1] = row.entries[j - 1].point;
        proc.corrected_root[j - 1] = row.entries[j - 1].point.root;
    }
    auto nudged = proc.try_nudge(k);
    if (!nudged) return std::nullopt;
    PreEQRRow out = row;
    out.entries[k - 1].point = *nudged;
    // Recompute the trace from the modified entry outward.
    out.trace.resize(k);
    for (size_t j = k; j <= out.entries.size(); ++j) {
        const PreEQREntry& e = out.entries[j - 1];
        out.trace.push_back(vs_formula(out.trace.back(), e.var, GuardedTestPoint{e.guard, e.point}));
    }
    out.condition = out.trace.back();
    return out;
}

}  // namespace realqe
