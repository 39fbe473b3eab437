#pragma once

#include "nilflat/algebra.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace nilflat {

/// Dynkin expansion of log(exp x exp y), degrees 2..class_bound.
///
/// A word of degree d is stored as a bit pattern (bit d-1-p set when letter p
/// is y) and stands for the right-nested bracket
/// [w_0, [w_1, ..., [w_{d-2}, w_{d-1}]]]. Words whose last two letters agree
/// bracket to zero and are dropped.
class BchTable {
public:
    struct Term {
        std::uint32_t word;
        Rational coefficient;
    };

    explicit BchTable(int class_bound);

    int class_bound() const noexcept { return class_bound_; }

    /// Terms of homogeneous degree d (2 <= d <= class_bound).
    const std::vector<Term>& degree(int d) const;

    /// Cached shared table for the given bound.
    static std::shared_ptr<const BchTable> get(int class_bound);

    /// x∘y truncated after `max_degree`.
    VecQ evaluate(const NilAlgebra& a, const VecQ& x, const VecQ& y, int max_degree) const;

private:
    int class_bound_;
    std::vector<std::vector<Term>> by_degree_;
};

inline constexpr int kDefaultBchClassBound = 6;

/// exp(z) = exp(x) exp(y), exact. Throws ClassExceeded when the algebra's
/// declared class is above `class_bound`.
VecQ bch_product(const NilAlgebra& a, const VecQ& x, const VecQ& y,
                 int class_bound = kDefaultBchClassBound);

inline VecQ group_inverse(const VecQ& x) { return neg(x); }

}  // namespace nilflat
