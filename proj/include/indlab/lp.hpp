#pragma once
// Exact-rational linear feasibility via phase-1 simplex (Bland's rule, so
// termination is guaranteed). Solves: find x >= 0 with A x = b. On
// infeasibility returns a Farkas certificate y with y^T A <= 0
// (componentwise over columns) and y^T b > 0, re-checkable by substitution.

#include <vector>

#include "indlab/numeric.hpp"

namespace indlab {

struct LPResult {
    bool feasible = false;
    std::vector<Rat> x;       // on success: a feasible point
    std::vector<Rat> farkas;  // on failure: certificate y
};

LPResult solve_feasibility(std::vector<std::vector<Rat>> A, std::vector<Rat> b);

// exact LP optimum of min c^T x s.t. A x = b, x >= 0 (assumes feasible &
// bounded; used for set-cover LP relaxation bounds). Returns the optimum.
Rat solve_min(const std::vector<std::vector<Rat>>& A, const std::vector<Rat>& b,
              const std::vector<Rat>& c, std::vector<Rat>* argmin = nullptr);

// verify a Farkas certificate exactly
bool farkas_valid(const std::vector<std::vector<Rat>>& A, const std::vector<Rat>& b,
                  const std::vector<Rat>& y);

}  // namespace indlab
