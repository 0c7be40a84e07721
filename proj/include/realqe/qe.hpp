#pragma once

#include <string>
#include <vector>

#include "realqe/answer.hpp"
#include "realqe/formula.hpp"
#include "realqe/vs.hpp"

namespace realqe {

struct PreEQREntry {
    std::string var;
    QFFormula guard;
    TestPoint point;
};

// One surviving choice through the Cartesian product of elimination sets.
// entries are ordered innermost-first; trace[0] is the matrix and
// trace[k] = (guard_k /\ trace[k-1])[var_k // point_k], so the final trace
// element is the row condition.
struct PreEQRRow {
    QFFormula condition;
    std::vector<PreEQREntry> entries;
    std::vector<QFFormula> trace;
};

struct PreEQR {
    std::vector<PreEQRRow> rows;
    std::vector<std::string> quantified;  // original block, innermost-first
    QFFormula matrix;
};

// Extended quantifier elimination: eliminates the block innermost-first,
// recording every surviving Cartesian-product choice. Rows with refutable
// conditions (ground-false, or unsatisfiable univariate parametric
// conditions) are dropped. Strict-relation root candidates are routed
// through artificial variables so that infinitesimals only occur as
// var - eps entries; degree shifts append shadow variables.
PreEQR eliminate(const ExistsBlock& f);

// true iff some row condition is provably true; requires a closed formula.
bool decide(const ExistsBlock& f);

struct EQRRow {
    QFFormula condition;
    // Original quantified variables, innermost-first; answers are fully
    // back-substituted and may contain eps_i / inf_i leaves.
    std::vector<std::pair<std::string, AnswerExpression>> answers;
};

struct EQR {
    std::vector<EQRRow> rows;
};

// Regular back-substitution of elimination terms (Eq-3-style); nonstandard
// symbols are indexed per row, outermost stage first.
EQR back_substitute(const PreEQR& p);

// Answer expression of one entry before back-substitution; exposed for
// back_substitute and the standard-answer pipeline.
AnswerExpression entry_expression(const PreEQREntry& entry, unsigned eps_index,
                                  unsigned inf_index);

}  // namespace realqe
