#include "nilflat/submersion.hpp"

#include "nilflat/error.hpp"

#include <algorithm>
#include <cmath>

namespace nilflat {

SubmersionSplit make_split(const LeftInvariantMetric& g, const Vec& z) {
    const auto n = static_cast<Eigen::Index>(g.dim());
    if (z.size() != n) throw Error(ErrorKind::DimensionMismatch, "split direction has wrong length");
    const double zz = g.norm2(z);
    if (!(zz > 0.0)) throw Error(ErrorKind::InvalidArgument, "vertical direction must be nonzero");
    SubmersionSplit s;
    s.z = z;
    s.vertical_unit = z / std::sqrt(zz);
    s.frame = Mat::Zero(n, n);
    s.frame.col(n - 1) = s.vertical_unit;
    // Gram-Schmidt the standard basis against everything kept so far.
    Eigen::Index kept = 0;
    for (Eigen::Index i = 0; i < n && kept < n - 1; ++i) {
        Vec v = Vec::Unit(n, i);
        for (int pass = 0; pass < 2; ++pass) {
            v -= g.inner(v, s.vertical_unit) * s.vertical_unit;
            for (Eigen::Index k = 0; k < kept; ++k) v -= g.inner(v, s.frame.col(k)) * s.frame.col(k);
        }
        const double vv = g.norm2(v);
        if (vv < 1e-20) continue;
        s.frame.col(kept++) = v / std::sqrt(vv);
    }
    return s;
}

Projections::Projections(const LeftInvariantMetric& g, const SubmersionSplit& split)
    : pv_(split.vertical_unit * (g.gram() * split.vertical_unit).transpose()) {}

CanonicalVariation canonical_variation(const LeftInvariantMetric& g, const Vec& z, double t) {
    if (!(t > 0.0)) throw Error(ErrorKind::InvalidArgument, "canonical variation needs t > 0");
    SubmersionSplit split = make_split(g, z);
    const Vec gz = g.gram() * split.vertical_unit;
    Mat gt = g.gram() - (1.0 - t) * gz * gz.transpose();
    return CanonicalVariation{g, std::move(split), t, LeftInvariantMetric(std::move(gt))};
}

OneillTensors::OneillTensors(const RealAlgebra& a, const LeftInvariantMetric& g, const SubmersionSplit& split)
    : n_(a.dim()), nabla_(a, g), proj_(g, split), a_(n_ * n_), t_(n_ * n_) {
    const auto n = static_cast<Eigen::Index>(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        const Vec e = Vec::Unit(n, static_cast<Eigen::Index>(i));
        const Vec he = proj_.horizontal(e), ve = proj_.vertical(e);
        for (std::size_t j = 0; j < n_; ++j) {
            const Vec f = Vec::Unit(n, static_cast<Eigen::Index>(j));
            const Vec hf = proj_.horizontal(f), vf = proj_.vertical(f);
            a_[i * n_ + j] = proj_.horizontal(nabla_.apply(he, vf)) + proj_.vertical(nabla_.apply(he, hf));
            t_[i * n_ + j] = proj_.horizontal(nabla_.apply(ve, vf)) + proj_.vertical(nabla_.apply(ve, hf));
        }
    }
}

namespace {

Vec contract(const std::vector<Vec>& table, std::size_t n, const Vec& e, const Vec& f) {
    Vec out = Vec::Zero(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        if (e[i] == 0.0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            const double w = e[i] * f[j];
            if (w != 0.0) out += w * table[i * n + j];
        }
    }
    return out;
}

}  // namespace

Vec OneillTensors::A(const Vec& e, const Vec& f) const { return contract(a_, n_, e, f); }

Vec OneillTensors::T(const Vec& e, const Vec& f) const { return contract(t_, n_, e, f); }

Vec OneillTensors::DA(const Vec& e, const Vec& f, const Vec& h) const {
    return nabla_.apply(e, A(f, h)) - A(nabla_.apply(e, f), h) - A(f, nabla_.apply(e, h));
}

double OneillTensors::max_abs_T() const {
    double m = 0.0;
    for (const auto& v : t_) m = std::max(m, v.cwiseAbs().maxCoeff());
    return m;
}

PlaneSample make_plane_sample(const LeftInvariantMetric& gt, const Projections& proj, const Vec& x_raw,
                              const Vec& c_raw) {
    const double xx = gt.norm2(x_raw);
    if (!(xx > 0.0)) throw Error(ErrorKind::DegeneratePlane, "X must be nonzero");
    PlaneSample s;
    s.x = x_raw / std::sqrt(xx);
    Vec c = c_raw - gt.inner(c_raw, s.x) * s.x;
    c -= gt.inner(c, s.x) * s.x;
    const double cc = gt.norm2(c);
    if (!(cc > kDegeneratePlaneTolerance * std::max(1.0, gt.norm2(c_raw)))) {
        throw Error(ErrorKind::DegeneratePlane, "sampled plane is degenerate");
    }
    s.c = c / std::sqrt(cc);
    s.u = proj.vertical(s.c);
    s.y = s.c - s.u;
    return s;
}

BaseGeometry base_geometry(const RealAlgebra& a, const LeftInvariantMetric& g, const SubmersionSplit& split) {
    const auto n = static_cast<Eigen::Index>(a.dim());
    const RealAlgebra in_frame = a.rebased(split.frame);
    const Mat coords = split.frame.transpose() * g.gram();
    return BaseGeometry{in_frame.truncated(a.dim() - 1), LeftInvariantMetric::identity(a.dim() - 1),
                        coords.topRows(n - 1)};
}

double DecompositionTerms::max_defect() const {
    return std::max({std::abs(lhs_horizontal - rhs_horizontal), std::abs(lhs_mixed - rhs_mixed),
                     std::abs(lhs_vertical - rhs_vertical), std::abs(k_direct - k_assembled)});
}

DecompositionChecker::DecompositionChecker(const RealAlgebra& a, const LeftInvariantMetric& g,
                                           const SubmersionSplit& split, double t)
    : t_(t),
      g_(g),
      variation_(canonical_variation(g, split.z, t)),
      proj_(g, split),
      oneill_(a, g, split),
      rt_(a, variation_.metric),
      base_(base_geometry(a, g, split)),
      base_r_(base_.algebra, base_.metric) {}

DecompositionTerms DecompositionChecker::terms(const PlaneSample& s) const {
    const Vec& x = s.x;
    const Vec& y = s.y;
    const Vec& u = s.u;
    const Vec xb = base_.to_base * x;
    const Vec yb = base_.to_base * y;

    DecompositionTerms d{};
    const Vec ayx = oneill_.A(y, x);
    const Vec axu = oneill_.A(x, u);
    const double base_term = base_r_.evaluate(yb, xb, yb, xb);
    d.lhs_horizontal = base_term - rt_.evaluate(y, x, y, x);
    d.rhs_horizontal = 3.0 * t_ * g_.norm2(ayx);
    d.lhs_mixed = rt_.evaluate(y, x, u, x);
    d.rhs_mixed = -t_ * g_.inner(oneill_.DA(x, y, x), u);
    d.lhs_vertical = rt_.evaluate(u, x, u, x);
    d.rhs_vertical = t_ * t_ * g_.norm2(axu);
    d.k_direct = rt_.evaluate(s.c, x, s.c, x);
    d.k_assembled = (base_term - d.rhs_horizontal) + 2.0 * d.rhs_mixed + d.rhs_vertical;
    return d;
}

double decomposition_check(const RealAlgebra& a, const LeftInvariantMetric& g, const SubmersionSplit& split,
                           double t, const PlaneSample& sample) {
    return DecompositionChecker(a, g, split, t).check(sample);
}

}  // namespace nilflat
