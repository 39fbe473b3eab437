#pragma once

#include "nilflat/qlinalg.hpp"
#include "nilflat/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace nilflat {

/// Dense integer matrix as rows.
using MatZ = std::vector<VecZ>;

struct ExtGcd {
    Integer g;  // nonnegative
    Integer x;  // a*x + b*y == g
    Integer y;
};

ExtGcd ext_gcd(const Integer& a, const Integer& b);

Integer content(const VecZ& v);

/// Primitive integer vector on the ray of a nonzero rational vector.
VecZ primitive_multiple(const VecQ& v);

MatZ identity_z(std::size_t n);
MatZ multiply(const MatZ& a, const MatZ& b);
VecZ multiply_row(const VecZ& row, const MatZ& m);

/// Row Hermite normal form of the lattice spanned by the rows: echelon,
/// positive pivots, entries above each pivot reduced into [0, pivot).
/// Zero rows are dropped.
MatZ hermite_normal_form(MatZ rows, std::size_t ncols);

/// Z-basis of {x in Z^n : M x = 0}.
MatZ integer_kernel(const MatZ& m, std::size_t ncols);

/// Z-basis of span_Q(rows) ∩ Z^n, Hermite-reduced.
MatZ saturate(const MatQ& rows, std::size_t ncols);

/// Inverse of a unimodular matrix (throws if |det| != 1).
MatZ unimodular_inverse(const MatZ& u);

/// U * A * V = D with U, V unimodular and D diagonal with d_1 | d_2 | ...
struct SmithForm {
    MatZ u;
    MatZ v;
    std::vector<Integer> diagonal;  // length min(rows, cols); zeros trail
};

SmithForm smith_normal_form(const MatZ& a, std::size_t ncols);

/// Integer solution of A x = b, or the index of the first obstructed Smith row.
struct IntegerSolve {
    std::optional<VecZ> solution;
    std::size_t obstruction_row = 0;
    Integer obstruction_divisor;
    Rational obstruction_value;
};

IntegerSolve solve_integer(const MatZ& a, std::size_t ncols, const VecQ& b);

}  // namespace nilflat
