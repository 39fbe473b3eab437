#pragma once

#include "nilflat/metric.hpp"

#include <cstddef>
#include <vector>

namespace nilflat {

/// Vertical line span(z) and its G-orthogonal horizontal complement.
struct SubmersionSplit {
    Vec z;              // as given (algebra coordinates)
    Vec vertical_unit;  // z / |z|_G
    /// G-orthonormal columns h_1..h_{n-1}, vertical_unit (in that order).
    Mat frame;

    std::size_t dim() const noexcept { return static_cast<std::size_t>(frame.rows()); }
    Mat horizontal_frame() const { return frame.leftCols(frame.cols() - 1); }
};

SubmersionSplit make_split(const LeftInvariantMetric& g, const Vec& z);

class Projections {
public:
    Projections(const LeftInvariantMetric& g, const SubmersionSplit& split);
    Vec vertical(const Vec& x) const { return pv_ * x; }
    Vec horizontal(const Vec& x) const { return x - pv_ * x; }

private:
    Mat pv_;
};

/// g^t: the vertical line scaled by t, the horizontal space left alone.
struct CanonicalVariation {
    LeftInvariantMetric base_metric;
    SubmersionSplit split;
    double t;
    LeftInvariantMetric metric;  // G^t
};

/// Throws InvalidArgument for t <= 0 or z = 0.
CanonicalVariation canonical_variation(const LeftInvariantMetric& g, const Vec& z, double t);

/// O'Neill A and T tensors of the submersion at the identity, plus the
/// Levi-Civita derivative D A. Trilinear tables are stored on the algebra
/// basis and contracted on demand.
class OneillTensors {
public:
    OneillTensors(const RealAlgebra& a, const LeftInvariantMetric& g, const SubmersionSplit& split);

    /// A_E F = H∇_{HE}(VF) + V∇_{HE}(HF)
    Vec A(const Vec& e, const Vec& f) const;
    /// T_E F = H∇_{VE}(VF) + V∇_{VE}(HF)
    Vec T(const Vec& e, const Vec& f) const;
    /// (D_E A)_F H = ∇_E(A_F H) - A_{∇_E F} H - A_F(∇_E H)
    Vec DA(const Vec& e, const Vec& f, const Vec& h) const;

    /// max |entry| of the T table.
    double max_abs_T() const;

    const ConnectionTable& connection() const noexcept { return nabla_; }
    const Projections& projections() const noexcept { return proj_; }

private:
    std::size_t n_;
    ConnectionTable nabla_;
    Projections proj_;
    std::vector<Vec> a_;  // A_{e_i} e_j at index i*n+j
    std::vector<Vec> t_;
};

inline OneillTensors oneill_tensors(const RealAlgebra& a, const LeftInvariantMetric& g,
                                    const SubmersionSplit& split) {
    return OneillTensors(a, g, split);
}

/// A g^t-orthonormal pair spanning a plane, with X horizontal and C = U + Y.
struct PlaneSample {
    Vec x;
    Vec c;
    Vec u;  // vertical part of c
    Vec y;  // horizontal part of c
};

/// Builds the sample from X and a raw second vector (orthogonalized here).
/// Throws DegeneratePlane.
PlaneSample make_plane_sample(const LeftInvariantMetric& gt, const Projections& proj, const Vec& x,
                              const Vec& c_raw);

/// Quotient algebra and metric on the horizontal frame (ǧ = identity there).
struct BaseGeometry {
    RealAlgebra algebra;
    LeftInvariantMetric metric;
    Mat to_base;  // (n-1) x n: horizontal frame coordinates of a horizontal vector
};

BaseGeometry base_geometry(const RealAlgebra& a, const LeftInvariantMetric& g, const SubmersionSplit& split);

/// Both sides of each curvature identity used by the fiber-rescaling bound.
struct DecompositionTerms {
    double lhs_horizontal, rhs_horizontal;  // ǧ(Ř(Y,X)Y,X) - <R^t(Y,X)Y,X>^t  vs  3t g(A_Y X, A_Y X)
    double lhs_mixed, rhs_mixed;            // <R^t(Y,X)U,X>^t  vs  -t g((D_X A)_Y X, U)
    double lhs_vertical, rhs_vertical;      // <R^t(U,X)U,X>^t  vs  t^2 g(A_X U, A_X U)
    double k_direct, k_assembled;           // K^t_σ two ways
    double max_defect() const;
};

/// Reusable evaluator for a fixed (algebra, G, split, t).
class DecompositionChecker {
public:
    DecompositionChecker(const RealAlgebra& a, const LeftInvariantMetric& g, const SubmersionSplit& split,
                         double t);

    DecompositionTerms terms(const PlaneSample& s) const;
    double check(const PlaneSample& s) const { return terms(s).max_defect(); }

    const CanonicalVariation& variation() const noexcept { return variation_; }
    const Projections& projections() const noexcept { return proj_; }
    const OneillTensors& oneill() const noexcept { return oneill_; }

private:
    double t_;
    LeftInvariantMetric g_;
    CanonicalVariation variation_;
    Projections proj_;
    OneillTensors oneill_;
    CurvatureTensor rt_;
    BaseGeometry base_;
    CurvatureTensor base_r_;
};

double decomposition_check(const RealAlgebra& a, const LeftInvariantMetric& g, const SubmersionSplit& split,
                           double t, const PlaneSample& sample);

}  // namespace nilflat
