#pragma once

#include <optional>
#include <vector>

#include "realqe/qe.hpp"
#include "realqe/realalg.hpp"

namespace realqe {

struct AllRowsFalseError : std::runtime_error {
    AllRowsFalseError() : std::runtime_error("no row with a true condition (formula is false)") {}
};

struct PreconditionParametricError : std::runtime_error {
    std::vector<std::string> parameters;
    explicit PreconditionParametricError(std::vector<std::string> params)
        : std::runtime_error("standard answers need all parameters fixed"),
          parameters(std::move(params)) {}
};

struct MalformedPointError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvariantViolationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StandardAnswer {
    AnswerExpression expr;  // standard: no eps/inf leaves
    RealAlgebraicNumber value;
    std::optional<Rational> rational;
};

struct StandardRow {
    // Original quantified variables, innermost-first.
    std::vector<std::pair<std::string, StandardAnswer>> answers;
};

struct StandardAnswerOptions {
    // Try replacing root-expression entries by root -+ eps first (turning
    // algebraic answers into rational ones) when the substitution test allows.
    bool nudge = false;
};

// Index of the first row whose condition is true.
size_t pick_row(const PreEQR& p);

// Theorem-4/Corollary-1 processing of one row of a closed pre-EQR into
// standard answers. The assembled assignment is verified against the matrix
// by exact arithmetic before returning.
StandardRow standard_answers(const PreEQR& p, size_t row_index,
                             const StandardAnswerOptions& opts = {});

// Standalone nudge test for entry k (1-based, innermost-first) of a row whose
// outer entries are all plain root expressions; returns the row with the
// entry replaced by root -+ eps and the trace suffix recomputed.
std::optional<PreEQRRow> eps_nudge(const PreEQR& p, size_t row_index, size_t k);

}  // namespace realqe
