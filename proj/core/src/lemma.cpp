#include "nilflat/lemma.hpp"

#include "nilflat/error.hpp"
#include "nilflat/parallel.hpp"
#include "nilflat/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nilflat {

namespace {

struct PlaneStats {
    double sup_abs_k = -1.0;
    std::size_t argmax = std::numeric_limits<std::size_t>::max();
    double sup_abs_base = 0.0;
    double sup_defect = 0.0;
    std::size_t sample_violations = 0;
    PlaneSample witness;

    void merge(const PlaneStats& o) {
        if (o.sup_abs_k > sup_abs_k || (o.sup_abs_k == sup_abs_k && o.argmax < argmax)) {
            sup_abs_k = o.sup_abs_k;
            argmax = o.argmax;
            witness = o.witness;
        }
        sup_abs_base = std::max(sup_abs_base, o.sup_abs_base);
        sup_defect = std::max(sup_defect, o.sup_defect);
        sample_violations += o.sample_violations;
    }
};

Vec gaussian(CounterRng& rng, Eigen::Index n) {
    Vec v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = rng.normal();
    return v;
}

// Sampled sups of |A| and of the D A pairing over g-unit arguments.
std::pair<double, double> sample_tensor_norms(const OneillTensors& on, const LeftInvariantMetric& g,
                                              const SubmersionSplit& split, std::size_t samples,
                                              std::uint64_t seed) {
    const auto n = static_cast<Eigen::Index>(split.dim());
    const Mat h = split.horizontal_frame();
    const Vec& u = split.vertical_unit;
    double sup_a = 0.0, sup_da = 0.0;
    auto visit = [&](const Vec& x, const Vec& y) {
        sup_a = std::max({sup_a, std::sqrt(g.norm2(on.A(y, x))), std::sqrt(g.norm2(on.A(x, u)))});
        sup_da = std::max(sup_da, std::abs(g.inner(on.DA(x, y, x), u)));
    };
    for (Eigen::Index a = 0; a < n - 1; ++a) {
        for (Eigen::Index b = 0; b < n - 1; ++b) visit(h.col(a), h.col(b));
    }
    for (std::size_t s = 0; s < samples; ++s) {
        CounterRng rng(seed, 0xc0ffee, s);
        Vec xa = gaussian(rng, n - 1), ya = gaussian(rng, n - 1);
        if (xa.norm() == 0.0 || ya.norm() == 0.0) continue;
        visit(h * xa.normalized(), h * ya.normalized());
    }
    return {sup_a, sup_da};
}

}  // namespace

std::vector<double> geometric_grid(double t_max, double t_min, std::size_t points) {
    if (!(t_min > 0.0) || !(t_max >= t_min) || points == 0) {
        throw Error(ErrorKind::InvalidArgument, "geometric grid needs t_max >= t_min > 0 and points >= 1");
    }
    if (points == 1) return {t_max};
    std::vector<double> grid(points);
    const double lmax = std::log10(t_max), lmin = std::log10(t_min);
    for (std::size_t i = 0; i < points; ++i) {
        const double f = static_cast<double>(i) / static_cast<double>(points - 1);
        grid[i] = std::pow(10.0, lmax + f * (lmin - lmax));
    }
    grid.front() = t_max;
    grid.back() = t_min;
    return grid;
}

std::optional<double> loglog_slope(std::span<const double> x, std::span<const double> y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t m = 0;
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
        if (!(y[i] > 0.0) || !(x[i] > 0.0)) continue;
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++m;
    }
    if (m < 2) return std::nullopt;
    const double denom = static_cast<double>(m) * sxx - sx * sx;
    if (denom == 0.0) return std::nullopt;
    return (static_cast<double>(m) * sxy - sx * sy) / denom;
}

double diameter_bound(std::span<const double> fiber_lengths, std::span<const double> ts) {
    if (fiber_lengths.size() != ts.size()) {
        throw Error(ErrorKind::DimensionMismatch, "diameter_bound: one t per tower level");
    }
    double d = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) d += 0.5 * fiber_lengths[i] * std::sqrt(ts[i]);
    return d;
}

DecayReport lemma_scan_unchecked(const RealAlgebra& a, const LeftInvariantMetric& g, const SubmersionSplit& split,
                                 const LemmaScanConfig& config) {
    const std::size_t n = a.dim();
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "lemma_scan needs dim >= 1");
    if (config.t_grid.empty()) throw Error(ErrorKind::InvalidArgument, "t grid is empty");
    for (std::size_t i = 0; i < config.t_grid.size(); ++i) {
        const double t = config.t_grid[i];
        if (!(t > 0.0) || t > 1.0) throw Error(ErrorKind::InvalidArgument, "t must lie in (0, 1]");
        if (i > 0 && !(t < config.t_grid[i - 1])) {
            throw Error(ErrorKind::InvalidArgument, "t grid must be strictly descending");
        }
    }
    if (config.samples < 1) throw Error(ErrorKind::InvalidArgument, "need at least one sample");

    DecayReport report;
    report.t_grid = config.t_grid;
    report.seed = config.seed;

    const auto ni = static_cast<Eigen::Index>(n);
    const OneillTensors oneill(a, g, split);
    const Projections proj(g, split);
    const auto [sup_a, sup_da] = sample_tensor_norms(oneill, g, split, config.constant_samples, config.seed);
    report.sup_A = sup_a;
    report.sup_DA = sup_da;
    report.C = 2.0 * (3.0 * sup_a * sup_a + 2.0 * sup_da + sup_a * sup_a);

    const bool has_base = n >= 2;
    BaseGeometry base = has_base ? base_geometry(a, g, split)
                                 : BaseGeometry{RealAlgebra(0), LeftInvariantMetric(Mat(0, 0)), Mat(0, 1)};
    const CurvatureTensor base_r(base.algebra, base.metric);
    const Mat h = split.horizontal_frame();
    const double fiber = config.fiber_length.value_or(std::sqrt(g.norm2(split.z)));

    const std::size_t frame_planes = (n - 1) * (n - 1 + 1) / 2;  // (h_a, h_b) a<b plus (h_a, vertical)
    const std::size_t total = frame_planes + config.samples;
    report.sample_count = total;

    std::vector<PlaneStats> per_t(config.t_grid.size());
    for (std::size_t ti = 0; ti < config.t_grid.size(); ++ti) {
        const double t = config.t_grid[ti];
        const CanonicalVariation var = canonical_variation(g, split.z, t);
        const CurvatureTensor rt(a, var.metric);
        const double slack = report.C * std::sqrt(t);
        // g^t-orthonormal frame: horizontal columns unchanged, vertical / sqrt(t).
        Mat ft = split.frame;
        ft.col(ni - 1) /= std::sqrt(t);

        auto plane = [&](std::size_t idx) -> PlaneSample {
            if (idx < frame_planes) {
                std::size_t k = idx;
                for (Eigen::Index p = 0; p < ni - 1; ++p) {
                    for (Eigen::Index q = p + 1; q < ni; ++q) {
                        if (k-- == 0) return make_plane_sample(var.metric, proj, ft.col(p), ft.col(q));
                    }
                }
            }
            CounterRng rng(config.seed, 1 + ti, idx);
            while (true) {
                const Vec xa = gaussian(rng, ni - 1);
                const Vec ca = gaussian(rng, ni);
                if (xa.norm() == 0.0) continue;
                try {
                    return make_plane_sample(var.metric, proj, h * xa, ft * ca);
                } catch (const Error&) {
                    // degenerate draw, resample
                }
            }
        };

        const unsigned threads = std::max(1u, config.threads);
        std::vector<PlaneStats> partial(threads);
        parallel_chunks(total, threads, [&](std::size_t begin, std::size_t end, std::size_t w) {
            PlaneStats local;
            for (std::size_t idx = begin; idx < end; ++idx) {
                if (n < 2) break;
                PlaneSample s = plane(idx);
                const double k = rt.evaluate(s.c, s.x, s.c, s.x);
                double base_k = 0.0;
                double yy = 0.0;
                if (has_base) {
                    const Vec xb = base.to_base * s.x;
                    const Vec yb = base.to_base * s.y;
                    yy = yb.squaredNorm();
                    if (yy > 1e-12) base_k = base_r.evaluate(yb, xb, yb, xb) / yy;
                }
                local.sup_abs_base = std::max(local.sup_abs_base, std::abs(base_k));
                local.sup_defect = std::max(local.sup_defect, std::abs(k - yy * base_k));
                if (std::abs(k) > yy * std::abs(base_k) + slack + 1e-12) ++local.sample_violations;
                const double ak = std::abs(k);
                if (ak > local.sup_abs_k || (ak == local.sup_abs_k && idx < local.argmax)) {
                    local.sup_abs_k = ak;
                    local.argmax = idx;
                    local.witness = std::move(s);
                }
            }
            partial[w] = std::move(local);
        });
        PlaneStats merged;
        for (const auto& p : partial) merged.merge(p);
        merged.sup_abs_k = std::max(merged.sup_abs_k, 0.0);
        per_t[ti] = std::move(merged);
    }

    for (const auto& p : per_t) report.base_sup_K = std::max(report.base_sup_K, p.sup_abs_base);
    for (std::size_t ti = 0; ti < per_t.size(); ++ti) {
        const double t = config.t_grid[ti];
        const auto& p = per_t[ti];
        report.sup_abs_K.push_back(p.sup_abs_k);
        report.sup_defect.push_back(p.sup_defect);
        report.bound.push_back(report.base_sup_K + report.C * std::sqrt(t));
        report.diam_bound.push_back(config.base_diameter + 0.5 * fiber * std::sqrt(t));
        if (p.sup_abs_k > report.bound.back() + 1e-12 || p.sample_violations > 0) ++report.violations;
        PlaneWitness w;
        if (p.witness.x.size() > 0) {
            w.x = p.witness.x;
            w.c = p.witness.c;
        }
        w.curvature = p.sup_abs_k;
        report.witnesses.push_back(std::move(w));
    }
    report.exponent_fit = loglog_slope(report.t_grid, report.sup_abs_K);
    report.defect_exponent_fit = loglog_slope(report.t_grid, report.sup_defect);
    return report;
}

DecayReport lemma_scan(const RealAlgebra& a, const LeftInvariantMetric& g, const SubmersionSplit& split,
                       const LemmaScanConfig& config) {
    DecayReport r = lemma_scan_unchecked(a, g, split, config);
    for (std::size_t i = 0; i < r.t_grid.size(); ++i) {
        if (r.sup_abs_K[i] > r.bound[i] + 1e-12) {
            throw Error(ErrorKind::BoundViolated,
                        "sup|K^t| = " + std::to_string(r.sup_abs_K[i]) + " exceeds bound " +
                            std::to_string(r.bound[i]) + " at t = " + std::to_string(r.t_grid[i]));
        }
    }
    if (r.violations > 0) {
        throw Error(ErrorKind::BoundViolated, "a sampled plane exceeded |Y|^2 |K_base| + C sqrt(t)");
    }
    return r;
}

}  // namespace nilflat
