#include "nilflat/metric.hpp"

#include "nilflat/error.hpp"

#include <cmath>

namespace nilflat {

RealAlgebra::RealAlgebra(std::size_t dim) : dim_(dim), c_(dim * dim * dim, 0.0) {}

RealAlgebra::RealAlgebra(const NilAlgebra& a) : RealAlgebra(a.dim()) {
    for (const auto& t : a.terms()) {
        const double v = t.value.get_d();
        constant(t.i, t.j, t.k) = v;
        constant(t.j, t.i, t.k) = -v;
    }
}

Vec RealAlgebra::bracket(const Vec& x, const Vec& y) const {
    Vec out = Vec::Zero(static_cast<Eigen::Index>(dim_));
    for (std::size_t i = 0; i < dim_; ++i) {
        if (x[i] == 0.0) continue;
        for (std::size_t j = 0; j < dim_; ++j) {
            const double w = x[i] * y[j];
            if (w == 0.0) continue;
            for (std::size_t k = 0; k < dim_; ++k) out[k] += w * constant(i, j, k);
        }
    }
    return out;
}

bool RealAlgebra::is_abelian(double tol) const {
    for (double v : c_) {
        if (std::abs(v) > tol) return false;
    }
    return true;
}

RealAlgebra RealAlgebra::rebased(const Mat& frame) const {
    const auto n = static_cast<Eigen::Index>(dim_);
    if (frame.rows() != n || frame.cols() != n) throw Error(ErrorKind::DimensionMismatch, "rebased: frame shape");
    const Eigen::PartialPivLU<Mat> lu(frame);
    RealAlgebra out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = i + 1; j < dim_; ++j) {
            const Vec b = bracket(frame.col(static_cast<Eigen::Index>(i)), frame.col(static_cast<Eigen::Index>(j)));
            const Vec c = lu.solve(b);
            for (std::size_t k = 0; k < dim_; ++k) {
                out.constant(i, j, k) = c[k];
                out.constant(j, i, k) = -c[k];
            }
        }
    }
    return out;
}

RealAlgebra RealAlgebra::truncated(std::size_t k) const {
    RealAlgebra out(k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            for (std::size_t m = 0; m < k; ++m) out.constant(i, j, m) = constant(i, j, m);
        }
    }
    return out;
}

LeftInvariantMetric::LeftInvariantMetric(Mat gram) : gram_(std::move(gram)) {
    if (gram_.rows() != gram_.cols()) throw Error(ErrorKind::NotPositiveDefinite, "metric must be square");
    const double scale = std::max(1.0, gram_.cwiseAbs().maxCoeff());
    if ((gram_ - gram_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw Error(ErrorKind::NotPositiveDefinite, "metric must be symmetric");
    }
    gram_ = 0.5 * (gram_ + gram_.transpose());
    if (gram_.rows() > 0) {
        const Eigen::LLT<Mat> llt(gram_);
        if (llt.info() != Eigen::Success) {
            throw Error(ErrorKind::NotPositiveDefinite, "metric is not positive definite");
        }
    }
}

ConnectionTable::ConnectionTable(const RealAlgebra& a, const LeftInvariantMetric& g) {
    const std::size_t n = a.dim();
    if (g.dim() != n) throw Error(ErrorKind::DimensionMismatch, "metric and algebra dims differ");
    const Mat& G = g.gram();
    // lowered[i*n+j][l] = <[e_i,e_j], e_l>
    std::vector<Vec> lowered(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Vec b(static_cast<Eigen::Index>(n));
            for (std::size_t k = 0; k < n; ++k) b[k] = a.constant(i, j, k);
            lowered[i * n + j] = G * b;
        }
    }
    const Eigen::LLT<Mat> llt(G);
    nabla_.assign(n, Mat::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Vec low(static_cast<Eigen::Index>(n));
            for (std::size_t l = 0; l < n; ++l) {
                low[l] = 0.5 * (lowered[i * n + j][l] - lowered[j * n + l][i] + lowered[l * n + i][j]);
            }
            nabla_[i].col(static_cast<Eigen::Index>(j)) = llt.solve(low);
        }
    }
}

Vec ConnectionTable::apply(const Vec& x, const Vec& y) const { return operator_of(x) * y; }

Mat ConnectionTable::operator_of(const Vec& x) const {
    const auto n = static_cast<Eigen::Index>(nabla_.size());
    Mat m = Mat::Zero(n, n);
    for (std::size_t i = 0; i < nabla_.size(); ++i) {
        if (x[i] != 0.0) m += x[i] * nabla_[i];
    }
    return m;
}

CurvatureTensor::CurvatureTensor(const RealAlgebra& a, const LeftInvariantMetric& g)
    : n_(a.dim()), r_(n_ * n_ * n_ * n_, 0.0), metric_(g) {
    const ConnectionTable nabla(a, g);
    const Mat& G = g.gram();
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
            Mat op = nabla.nabla(j) * nabla.nabla(i) - nabla.nabla(i) * nabla.nabla(j);
            for (std::size_t m = 0; m < n_; ++m) {
                const double c = a.constant(i, j, m);
                if (c != 0.0) op += c * nabla.nabla(m);
            }
            const Mat lowered = G * op;  // (l, k) = <R(e_i,e_j) e_k, e_l>
            for (std::size_t k = 0; k < n_; ++k) {
                for (std::size_t l = 0; l < n_; ++l) {
                    r_[((i * n_ + j) * n_ + k) * n_ + l] =
                        lowered(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(k));
                }
            }
        }
    }
}

double CurvatureTensor::evaluate(const Vec& a, const Vec& b, const Vec& c, const Vec& d) const {
    double s = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
        if (a[i] == 0.0) continue;
        for (std::size_t j = 0; j < n_; ++j) {
            const double ab = a[i] * b[j];
            if (ab == 0.0) continue;
            const double* block = &r_[(i * n_ + j) * n_ * n_];
            for (std::size_t k = 0; k < n_; ++k) {
                if (c[k] == 0.0) continue;
                double inner = 0.0;
                for (std::size_t l = 0; l < n_; ++l) inner += block[k * n_ + l] * d[l];
                s += ab * c[k] * inner;
            }
        }
    }
    return s;
}

double sectional_curvature(const CurvatureTensor& r, const Vec& v, const Vec& w) {
    const auto& g = r.metric();
    const double vv = g.norm2(v), ww = g.norm2(w), vw = g.inner(v, w);
    const double gram = vv * ww - vw * vw;
    if (!(gram > kDegeneratePlaneTolerance * std::max(1.0, vv * ww))) {
        throw Error(ErrorKind::DegeneratePlane, "plane vectors are (nearly) dependent");
    }
    return r.evaluate(v, w, v, w) / gram;
}

double sectional_curvature(const RealAlgebra& a, const LeftInvariantMetric& g, const Vec& v, const Vec& w) {
    return sectional_curvature(CurvatureTensor(a, g), v, w);
}

}  // namespace nilflat
