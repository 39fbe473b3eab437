#pragma once

#include "nilflat/rational.hpp"

#include <cstddef>
#include <vector>

namespace nilflat {

/// Dense rows over Q. Exact Gaussian elimination only; sizes are desk scale.
using MatQ = std::vector<VecQ>;

/// Reduced row echelon form in place; pivots are sought in the first `ncols`
/// columns, row operations act on whole rows (so augmented columns follow).
/// Rows left without a pivot are dropped. Returns pivot columns.
std::vector<std::size_t> rref(MatQ& rows, std::size_t ncols);

std::size_t rank(MatQ rows, std::size_t ncols);

/// Basis (RREF rows, zero rows removed) of the row space.
MatQ row_space(MatQ rows, std::size_t ncols);

/// Basis of {x : M x = 0}, one vector per free column, free entry set to 1.
MatQ null_space(MatQ rows, std::size_t ncols);

/// True iff v lies in the row space spanned by `basis` (any spanning set).
bool in_span(const MatQ& basis, const VecQ& v);

/// Unique solution of M x = b for square invertible M; throws otherwise.
VecQ solve_square(MatQ m, VecQ b);

}  // namespace nilflat
