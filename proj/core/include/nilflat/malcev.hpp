#pragma once

#include "nilflat/algebra.hpp"

#include <cstddef>

namespace nilflat {

/// Second-kind coordinates: exp(a_1 e_1) exp(a_2 e_2) ... exp(a_n e_n).
struct MalcevWord {
    VecQ exponents;

    bool is_lattice() const { return is_integral(exponents); }
    friend bool operator==(const MalcevWord&, const MalcevWord&) = default;
};

/// First-kind (exponential) coordinates to second-kind, by peeling one factor
/// at a time down the adapted ideal chain. Throws BasisNotAdapted.
MalcevWord to_second_kind(const NilAlgebra& a, const VecQ& v);

VecQ to_first_kind(const NilAlgebra& a, const MalcevWord& w);

/// Group law in second-kind coordinates.
MalcevWord multiply(const NilAlgebra& a, const MalcevWord& x, const MalcevWord& y);
MalcevWord inverse(const NilAlgebra& a, const MalcevWord& x);

/// Integral second-kind coordinates for generator inverses, every ordered
/// product g_i^{±1} g_j^{±1}, and the inverses of those products.
ValidationReport lattice_closed(const NilAlgebra& a);

}  // namespace nilflat
