#pragma once

#include <map>
#include <string>

#include "realqe/formula.hpp"
#include "realqe/realalg.hpp"

namespace realqe {

struct NonlinearAtomError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exact decision of a closed existential formula with linear atoms by
// Fourier-Motzkin elimination over the rationals. The matrix is expanded to
// DNF first; `max_dnf` caps the expansion (0 reads REALQE_MAX_DNF or 4096).
bool fourier_motzkin_decide(const ExistsBlock& f, size_t max_dnf = 0);

// Exact decision of a closed existential formula with a single quantified
// variable of arbitrary degree: sample at every root of every atom
// polynomial, between consecutive roots, and beyond the extremes.
bool univariate_sample_decide(const ExistsBlock& f);

// Exact truth of a quantifier-free formula under a real algebraic assignment.
bool check_satisfaction(const QFFormula& psi,
                        const std::map<std::string, RealAlgebraicNumber>& assignment);

}  // namespace realqe
