#pragma once

#include <vector>

#include "l1idx/rational.hpp"

namespace l1idx {

using Matrix = std::vector<std::vector<Rat>>;

// Rank of A, computed by fraction-free (Bareiss) elimination on the
// denominator-cleared integer matrix with the leftmost-pivot rule.
int matrix_rank(const Matrix& a);

// Basis of {x : Ax = 0}, one vector per free column, in increasing order
// of the free column index.  Deterministic under the leftmost-pivot rule.
std::vector<std::vector<Rat>> nullspace(const Matrix& a);

}  // namespace l1idx
