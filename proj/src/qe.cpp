#include "realqe/qe.hpp"

#include <algorithm>
#include <deque>

#include "realqe/oracle.hpp"

namespace realqe {

namespace {

unsigned max_degree(const QFFormula& f, const std::string& var) {
    unsigned d = 0;
    f.map_atoms([&](const Atom& a) {
        d = std::max(d, a.lhs.degree(var));
        return QFFormula::atom(a);
    });
    return d;
}

// A condition is kept unless it is provably unsatisfiable. Ground conditions
// were already folded by the simplifier; parametric conditions in a single
// parameter are decided exactly by root sampling.
bool condition_refutable(const QFFormula& cond) {
    if (cond.is_false()) return true;
    if (cond.is_true()) return false;
    auto vars = cond.variables();
    if (vars.size() != 1) return false;
    ExistsBlock probe{{*vars.begin()}, cond};
    return !univariate_sample_decide(probe);
}

struct Eliminator {
    std::vector<PreEQRRow> rows;

    struct State {
        QFFormula phi;
        std::deque<std::string> pending;
        std::vector<PreEQREntry> entries;
        std::vector<QFFormula> trace;
        unsigned artificial = 0;
        unsigned shadow = 0;
    };

    void run(State state) {
        if (state.pending.empty()) {
            QFFormula condition = state.phi;
            if (condition_refutable(condition)) return;
            rows.push_back(
                PreEQRRow{std::move(condition), std::move(state.entries), std::move(state.trace)});
            return;
        }
        std::string var = state.pending.front();
        state.pending.pop_front();

        unsigned deg = max_degree(state.phi, var);
        if (deg > 2) {
            std::string shadow = "$s" + std::to_string(++state.shadow);
            auto shift = degree_shift(var, state.phi, shadow);
            if (!shift) throw DegreeTooHighError(var, deg);
            GuardedTestPoint gtp{shift->guard, TestPoint::nth_root(shift->g, shadow)};
            QFFormula next = vs_formula(state.phi, var, gtp);
            if (next.is_false()) return;
            State branch = state;
            branch.phi = next;
            branch.pending.push_front(shadow);
            branch.entries.push_back(PreEQREntry{var, gtp.guard, gtp.point});
            branch.trace.push_back(next);
            run(std::move(branch));
            return;
        }

        for (const auto& gtp : elimination_set(var, state.phi)) {
            if (gtp.point.kind == TestPoint::Kind::RootMinusEps) {
                auto plain = gtp.point.root.as_plain_variable();
                if (plain && std::find(state.pending.begin(), state.pending.end(), *plain) !=
                                 state.pending.end()) {
                    // The root is an outer quantified variable: var - eps directly.
                    GuardedTestPoint direct{gtp.guard, TestPoint::var_minus_eps(*plain)};
                    QFFormula next = vs_formula(state.phi, var, direct);
                    if (next.is_false()) continue;
                    State branch = state;
                    branch.phi = next;
                    branch.entries.push_back(PreEQREntry{var, direct.guard, direct.point});
                    branch.trace.push_back(next);
                    run(std::move(branch));
                    continue;
                }
                // General root: introduce an artificial variable h with
                // var = h - eps followed by h = root.
                State branch = state;
                std::string h = "$h" + std::to_string(++branch.artificial);
                GuardedTestPoint eps_point{QFFormula::truth(true), TestPoint::var_minus_eps(h)};
                QFFormula mid = vs_formula(branch.phi, var, eps_point);
                if (mid.is_false()) continue;
                GuardedTestPoint root_point{gtp.guard, TestPoint::make_root(gtp.point.root)};
                QFFormula next = vs_formula(mid, h, root_point);
                if (next.is_false()) continue;
                branch.phi = next;
                branch.entries.push_back(PreEQREntry{var, eps_point.guard, eps_point.point});
                branch.entries.push_back(PreEQREntry{h, root_point.guard, root_point.point});
                branch.trace.push_back(mid);
                branch.trace.push_back(next);
                run(std::move(branch));
                continue;
            }
            QFFormula next = vs_formula(state.phi, var, gtp);
            if (next.is_false()) continue;
            State branch = state;
            branch.phi = next;
            branch.entries.push_back(PreEQREntry{var, gtp.guard, gtp.point});
            branch.trace.push_back(next);
            run(std::move(branch));
        }
    }
};

}  // namespace

PreEQR eliminate(const ExistsBlock& f) {
    QFFormula matrix = simplify(f.matrix);
    Eliminator elim;
    Eliminator::State initial;
    initial.phi = matrix;
    initial.pending.assign(f.quantified.begin(), f.quantified.end());
    initial.trace.push_back(matrix);
    elim.run(std::move(initial));
    return PreEQR{std::move(elim.rows), f.quantified, matrix};
}

bool decide(const ExistsBlock& f) {
    auto params = f.parameters();
    if (!params.empty())
        throw std::runtime_error("decide: formula has free parameters");
    PreEQR p = eliminate(f);
    for (const auto& row : p.rows)
        if (row.condition.is_true()) return true;
    return false;
}

AnswerExpression entry_expression(const PreEQREntry& entry, unsigned eps_index,
                                  unsigned inf_index) {
    auto root_expr = [](const RootExpression& e) {
        AnswerExpression num = AnswerExpression::from_poly(e.a);
        if (!e.b.is_zero())
            num = AnswerExpression::add(
                num, AnswerExpression::mul(AnswerExpression::from_poly(e.b),
                                           AnswerExpression::sqrt(AnswerExpression::from_poly(e.c))));
        return AnswerExpression::div(num, AnswerExpression::from_poly(e.d));
    };
    switch (entry.point.kind) {
        case TestPoint::Kind::Root: return root_expr(entry.point.root);
        case TestPoint::Kind::RootMinusEps:
            return AnswerExpression::sub(root_expr(entry.point.root),
                                         AnswerExpression::epsilon(eps_index));
        case TestPoint::Kind::RootPlusEps:
            return AnswerExpression::add(root_expr(entry.point.root),
                                         AnswerExpression::epsilon(eps_index));
        case TestPoint::Kind::VarMinusEps:
            return AnswerExpression::sub(AnswerExpression::variable(entry.point.var),
                                         AnswerExpression::epsilon(eps_index));
        case TestPoint::Kind::PlusInfinity: return AnswerExpression::infinity(inf_index);
        case TestPoint::Kind::MinusInfinity:
            return AnswerExpression::sub(AnswerExpression::constant(Rational(0)),
                                         AnswerExpression::infinity(inf_index));
        case TestPoint::Kind::NthRoot:
            return AnswerExpression::nth_root(AnswerExpression::variable(entry.point.var),
                                              entry.point.g);
    }
    return AnswerExpression::constant(Rational(0));
}

EQR back_substitute(const PreEQR& p) {
    EQR out;
    std::set<std::string> original(p.quantified.begin(), p.quantified.end());
    for (const auto& row : p.rows) {
        const size_t n = row.entries.size();
        // Nonstandard indices: outermost introduction gets index 1.
        std::vector<unsigned> eps_idx(n, 0), inf_idx(n, 0);
        unsigned eps_count = 0, inf_count = 0;
        for (size_t k = n; k-- > 0;) {
            auto kind = row.entries[k].point.kind;
            if (kind == TestPoint::Kind::RootMinusEps || kind == TestPoint::Kind::RootPlusEps ||
                kind == TestPoint::Kind::VarMinusEps)
                eps_idx[k] = ++eps_count;
            if (kind == TestPoint::Kind::PlusInfinity || kind == TestPoint::Kind::MinusInfinity)
                inf_idx[k] = ++inf_count;
        }
        // Back-substitute outermost-first.
        std::map<std::string, AnswerExpression> resolved;
        std::vector<std::pair<std::string, AnswerExpression>> answers(n);
        for (size_t k = n; k-- > 0;) {
            AnswerExpression e = entry_expression(row.entries[k], eps_idx[k], inf_idx[k]);
            for (size_t j = k + 1; j < n; ++j)
                e = e.substitute(row.entries[j].var, resolved.at(row.entries[j].var));
            resolved.emplace(row.entries[k].var, e);
            answers[k] = {row.entries[k].var, std::move(e)};
        }
        EQRRow out_row;
        out_row.condition = row.condition;
        for (auto& [var, expr] : answers)
            if (original.count(var)) out_row.answers.emplace_back(var, std::move(expr));
        out.rows.push_back(std::move(out_row));
    }
    return out;
}

}  // namespace realqe
