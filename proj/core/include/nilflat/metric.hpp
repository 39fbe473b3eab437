#pragma once

#include "nilflat/algebra.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace nilflat {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Structure constants in double precision, possibly in a non-integral frame.
class RealAlgebra {
public:
    RealAlgebra() = default;
    explicit RealAlgebra(std::size_t dim);
    explicit RealAlgebra(const NilAlgebra& a);

    std::size_t dim() const noexcept { return dim_; }
    double& constant(std::size_t i, std::size_t j, std::size_t k) { return c_[(i * dim_ + j) * dim_ + k]; }
    double constant(std::size_t i, std::size_t j, std::size_t k) const {
        return c_[(i * dim_ + j) * dim_ + k];
    }

    Vec bracket(const Vec& x, const Vec& y) const;
    bool is_abelian(double tol = 0.0) const;

    /// Same algebra in the frame whose columns are the new basis vectors.
    RealAlgebra rebased(const Mat& frame) const;

    /// Quotient by span of the trailing frame vectors: keeps the first k
    /// coordinates. Valid when the trailing span is an ideal.
    RealAlgebra truncated(std::size_t k) const;

private:
    std::size_t dim_ = 0;
    std::vector<double> c_;
};

/// Symmetric positive-definite Gram matrix on the algebra basis.
class LeftInvariantMetric {
public:
    /// Throws NotPositiveDefinite (also for asymmetric input, tolerance 1e-12).
    explicit LeftInvariantMetric(Mat gram);
    static LeftInvariantMetric identity(std::size_t n) { return LeftInvariantMetric(Mat::Identity(n, n)); }

    std::size_t dim() const noexcept { return static_cast<std::size_t>(gram_.rows()); }
    const Mat& gram() const noexcept { return gram_; }
    double inner(const Vec& x, const Vec& y) const { return x.dot(gram_ * y); }
    double norm2(const Vec& x) const { return inner(x, x); }

private:
    Mat gram_;
};

/// Levi-Civita connection of left-invariant fields: column j of `nabla(i)`
/// is ∇_{e_i} e_j. Built from the Koszul formula
/// 2<∇_X Y, Z> = <[X,Y],Z> - <[Y,Z],X> + <[Z,X],Y>.
class ConnectionTable {
public:
    ConnectionTable(const RealAlgebra& a, const LeftInvariantMetric& g);

    std::size_t dim() const noexcept { return nabla_.size(); }
    const Mat& nabla(std::size_t i) const { return nabla_[i]; }
    /// ∇_X Y for left-invariant X, Y.
    Vec apply(const Vec& x, const Vec& y) const;
    /// Matrix of ∇_X.
    Mat operator_of(const Vec& x) const;

private:
    std::vector<Mat> nabla_;
};

inline ConnectionTable connection_coeffs(const RealAlgebra& a, const LeftInvariantMetric& g) {
    return ConnectionTable(a, g);
}

/// <R(e_i,e_j)e_k, e_l> with R(X,Y) = ∇_{[X,Y]} - [∇_X, ∇_Y], so that
/// <R(X,Y)X,Y> is the sectional curvature of an orthonormal pair.
class CurvatureTensor {
public:
    CurvatureTensor(const RealAlgebra& a, const LeftInvariantMetric& g);

    std::size_t dim() const noexcept { return n_; }
    double operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
        return r_[((i * n_ + j) * n_ + k) * n_ + l];
    }
    /// <R(a,b)c,d>
    double evaluate(const Vec& a, const Vec& b, const Vec& c, const Vec& d) const;
    const LeftInvariantMetric& metric() const noexcept { return metric_; }

private:
    std::size_t n_;
    std::vector<double> r_;
    LeftInvariantMetric metric_;
};

inline CurvatureTensor curvature_tensor(const RealAlgebra& a, const LeftInvariantMetric& g) {
    return CurvatureTensor(a, g);
}

inline constexpr double kDegeneratePlaneTolerance = 1e-14;

/// K(span(v, w)); throws DegeneratePlane when the Gram determinant is tiny.
double sectional_curvature(const CurvatureTensor& r, const Vec& v, const Vec& w);
double sectional_curvature(const RealAlgebra& a, const LeftInvariantMetric& g, const Vec& v,
                           const Vec& w);

}  // namespace nilflat
