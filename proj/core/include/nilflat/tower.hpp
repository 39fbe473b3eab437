#pragma once

#include "nilflat/algebra.hpp"
#include "nilflat/zlinalg.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace nilflat {

/// A nilpotent algebra with an integral Mal'cev basis. The lattice Γ is the
/// group generated by exp(e_1), ..., exp(e_n); the nilmanifold is N/Γ.
class NilLattice {
public:
    /// Validates the algebra (Jacobi, nilpotency, adapted basis) and requires
    /// integer structure constants; throws Error otherwise.
    explicit NilLattice(NilAlgebra algebra);

    static NilLattice point() { return NilLattice(NilAlgebra(0, 0, {})); }

    const NilAlgebra& algebra() const noexcept { return algebra_; }
    std::size_t dim() const noexcept { return algebra_.dim(); }

    friend bool operator==(const NilLattice& a, const NilLattice& b) {
        return a.algebra_ == b.algebra_;
    }

private:
    NilAlgebra algebra_;
};

/// Skew form ω on the base basis; the extension bracket is [x,y] + ω(x,y) z.
class CentralCocycle {
public:
    CentralCocycle() = default;
    explicit CentralCocycle(std::size_t dim);
    explicit CentralCocycle(MatQ omega);

    struct Entry {
        std::size_t i;  // 0-based, i < j
        std::size_t j;
        Rational value;
    };
    /// Builds the skew matrix; throws NotSkew on conflicting or diagonal entries.
    static CentralCocycle from_entries(std::size_t dim, const std::vector<Entry>& entries);

    std::size_t dim() const noexcept { return omega_.size(); }
    const Rational& operator()(std::size_t i, std::size_t j) const { return omega_[i][j]; }
    Rational evaluate(const VecQ& x, const VecQ& y) const;

    /// Nonzero entries with i < j.
    std::vector<Entry> entries() const;
    const MatQ& matrix() const noexcept { return omega_; }

    bool is_skew() const;
    bool is_integral() const;
    bool is_zero() const;

    CentralCocycle operator+(const CentralCocycle& o) const;
    CentralCocycle operator-(const CentralCocycle& o) const;
    CentralCocycle operator-() const;

    /// ω'(f_a, f_b) = ω(f_a, f_b) with f given as rows in the old basis.
    CentralCocycle rebased(const MatZ& basis) const;

    friend bool operator==(const CentralCocycle&, const CentralCocycle&) = default;

private:
    MatQ omega_;
};

/// Chevalley–Eilenberg closedness ω([x,y],z) + ω([y,z],x) + ω([z,x],y) = 0.
/// The witness is the first i<j<k triple, with the last two indices swapped
/// when that makes the reported defect positive.
ValidationReport check_cocycle_closed(const NilAlgebra& base, const CentralCocycle& w);

struct PeelChoice {
    VecZ z;  // primitive, central, in the coordinates of the lattice basis
};

struct TowerStep {
    NilLattice total;           // canonical basis: rows of `basis_change`, z last
    NilLattice base;            // dim - 1
    PeelChoice choice;          // in the caller's basis
    CentralCocycle cocycle;     // on the base basis
    MatZ basis_change;          // canonical basis rows in the caller's basis
};

/// Top-down list of steps; steps[0].total is the top, the last base is the point.
struct BundleTower {
    std::vector<TowerStep> steps;
    /// Top canonical basis written in the input lattice's basis.
    MatZ top_basis;

    std::size_t length() const noexcept { return steps.size(); }
};

/// Z-basis (Hermite-reduced rows) of center ∩ Z^n.
MatZ group_center(const NilLattice& l);

/// Last Hermite row of the center lattice, sign-normalized.
PeelChoice pick_primitive_central(const NilLattice& l);

TowerStep peel_step(const NilLattice& l);

/// Peels down to the point. Each step's base equals the next step's total
/// on the nose; cocycles are re-expressed when a lower peel changes basis.
BundleTower peel_tower(const NilLattice& l);

/// Central extension by ω with new basis vector z appended last.
/// Throws NotSkew, NotClosed (with witness), NotIntegral, DimensionMismatch.
NilLattice extend_by_cocycle(const NilLattice& base, const CentralCocycle& w);

/// Rebuilds the top lattice bottom-up from the tower's cocycles.
NilLattice rebuild_from_tower(const std::vector<CentralCocycle>& cocycles_top_down);

struct CohomologyVerdict {
    bool cohomologous = false;
    bool used_sign_flip = false;  // matched w1 + w2 rather than w1 - w2
    std::optional<VecZ> lambda;   // integral 1-cochain with δλ = w1 ∓ w2
    std::string certificate;      // obstruction description when not cohomologous
};

/// Integral 1-cochain λ with δλ = w1 - w2, where δλ(x,y) = -λ([x,y]).
CohomologyVerdict cocycles_cohomologous(const NilLattice& base, const CentralCocycle& w1,
                                        const CentralCocycle& w2, bool up_to_sign);

/// Group-level extension cocycle of a step: the z-exponent of
/// s(a) s(b) s(ab)^{-1}, where s lifts second-kind words with z-exponent 0.
Rational section_defect(const TowerStep& step, const VecQ& a, const VecQ& b);

}  // namespace nilflat
