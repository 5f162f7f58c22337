#pragma once

#include <vector>

#include "l1idx/linalg.hpp"
#include "l1idx/rational.hpp"

namespace l1idx {

// Exact-rational linear programming in the form
//
//   maximize c^T x   subject to   A x <= b,  x >= 0.
//
// Two-phase dictionary simplex with Bland's rule, so every pivot is exact
// and termination is guaranteed.  `dual` holds the optimal multipliers of
// the rows (y >= 0, A^T y >= c, b^T y = value) when the status is Optimal.
struct LpResult {
    enum class Status { Optimal, Infeasible, Unbounded } status;
    Rat value;
    std::vector<Rat> x;
    std::vector<Rat> dual;
};

LpResult solve_lp_max(const Matrix& a, const std::vector<Rat>& b, const std::vector<Rat>& c);

}  // namespace l1idx
