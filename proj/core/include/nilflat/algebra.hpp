#pragma once

#include "nilflat/qlinalg.hpp"
#include "nilflat/rational.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace nilflat {

/// One stored structure constant: [e_i, e_j] has coefficient `value` on e_k.
/// Indices are 0-based and i < j.
struct BracketTerm {
    std::size_t i;
    std::size_t j;
    std::size_t k;
    Rational value;
};

/// Rational Lie algebra given by structure constants on a fixed basis.
///
/// Only pairs i < j are stored; [e_j, e_i] = -[e_i, e_j] is implied. The type
/// itself accepts any table so that invalid inputs can be reported on; use
/// `validate_algebra` (or the NilLattice constructor) for the full checks:
/// Jacobi, nilpotency of the declared class, and a Mal'cev-adapted basis
/// (span(e_k, ..., e_n) an ideal for every k).
class NilAlgebra {
public:
    NilAlgebra() = default;
    NilAlgebra(std::size_t dim, int declared_class, const std::vector<BracketTerm>& terms);

    std::size_t dim() const noexcept { return dim_; }
    int declared_class() const noexcept { return declared_class_; }

    /// [e_i, e_j] for any ordered pair.
    VecQ basis_bracket(std::size_t i, std::size_t j) const;
    const Rational& constant(std::size_t i, std::size_t j, std::size_t k) const;

    /// Nonzero constants with i < j, sorted by (i, j, k).
    const std::vector<BracketTerm>& terms() const noexcept { return terms_; }

    bool is_abelian() const noexcept { return terms_.empty(); }
    bool has_integer_constants() const;

    friend bool operator==(const NilAlgebra& a, const NilAlgebra& b);

private:
    std::size_t dim_ = 0;
    int declared_class_ = 0;
    std::vector<Rational> table_;  // dim^3, antisymmetric in the first two slots
    std::vector<BracketTerm> terms_;
};

VecQ bracket(const NilAlgebra& a, const VecQ& x, const VecQ& y);

/// ok, or the first failure with a human-readable witness.
struct ValidationReport {
    bool ok = true;
    std::string message;
    std::vector<std::size_t> witness;  // 0-based basis indices
    VecQ defect;

    static ValidationReport pass() { return {}; }
};

/// Jacobi sum [x,[y,z]] + [y,[z,x]] + [z,[x,y]] on basis triples i < j < k.
ValidationReport check_jacobi(const NilAlgebra& a);

struct CentralSeries {
    std::vector<MatQ> terms;  // g, [g,g], [g,[g,g]], ..., {0}
    int nilpotency_class = 0;
};

/// Throws Error(NotNilpotent) if the chain stabilizes above zero.
CentralSeries lower_central_series(const NilAlgebra& a);

MatQ algebra_center(const NilAlgebra& a);

/// [e_i, e_j] ∈ span(e_{j+1}, ..., e_n) for all i < j.
ValidationReport check_adapted(const NilAlgebra& a);

/// Jacobi, lower central series vs declared class, adapted basis.
ValidationReport validate_algebra(const NilAlgebra& a);

/// Lie algebra with basis rows of `basis` (rows are new basis vectors written
/// in the old basis). `basis` must be invertible over Q.
NilAlgebra change_basis(const NilAlgebra& a, const MatQ& basis);

/// Direct sum; the basis of `a` comes first.
NilAlgebra direct_sum(const NilAlgebra& a, const NilAlgebra& b);

namespace algebras {

NilAlgebra abelian(std::size_t n);
/// [e1,e2] = e3.
NilAlgebra heisenberg3();
/// [e_i, e_{m+i}] = e_{2m+1}, i = 1..m.
NilAlgebra heisenberg(std::size_t m);
/// [e1, e_j] = e_{j+1}, j = 2..n-1. n4 is filiform(4), class n-1.
NilAlgebra filiform(std::size_t n);

}  // namespace algebras

}  // namespace nilflat
