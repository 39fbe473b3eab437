#include "nilflat/certify.hpp"

#include "nilflat/error.hpp"
#include "nilflat/lemma.hpp"
#include "nilflat/parallel.hpp"
#include "nilflat/rng.hpp"

#include <algorithm>
#include <cmath>

namespace nilflat {

TowerFrame tower_frame(const LeftInvariantMetric& g) {
    const auto n = static_cast<Eigen::Index>(g.dim());
    TowerFrame tf;
    tf.frame = Mat::Zero(n, n);
    tf.fiber_lengths.assign(static_cast<std::size_t>(n), 0.0);
    for (Eigen::Index k = n; k-- > 0;) {
        Vec v = Vec::Unit(n, k);
        for (int pass = 0; pass < 2; ++pass) {
            for (Eigen::Index m = k + 1; m < n; ++m) v -= g.inner(v, tf.frame.col(m)) * tf.frame.col(m);
        }
        const double len = std::sqrt(g.norm2(v));
        tf.frame.col(k) = v / len;
        tf.fiber_lengths[static_cast<std::size_t>(k)] = len;
    }
    return tf;
}

double sampled_sup_curvature(const RealAlgebra& frame_algebra, const std::vector<double>& ts, std::size_t samples,
                             std::uint64_t seed, std::uint64_t stream, unsigned threads) {
    const std::size_t n = frame_algebra.dim();
    if (ts.size() != n) throw Error(ErrorKind::DimensionMismatch, "one t per frame direction");
    if (n < 2 || frame_algebra.is_abelian()) return 0.0;
    const auto ni = static_cast<Eigen::Index>(n);
    Vec diag(ni), inv_sqrt(ni);
    for (Eigen::Index i = 0; i < ni; ++i) {
        diag[i] = ts[static_cast<std::size_t>(i)];
        inv_sqrt[i] = 1.0 / std::sqrt(diag[i]);
    }
    const LeftInvariantMetric g(diag.asDiagonal().toDenseMatrix());
    const CurvatureTensor r(frame_algebra, g);

    double sup = 0.0;
    for (Eigen::Index i = 0; i < ni; ++i) {
        for (Eigen::Index j = i + 1; j < ni; ++j) {
            sup = std::max(sup, std::abs(sectional_curvature(r, Vec::Unit(ni, i) * inv_sqrt[i],
                                                             Vec::Unit(ni, j) * inv_sqrt[j])));
        }
    }
    const unsigned workers = std::max(1u, threads);
    std::vector<double> partial(workers, 0.0);
    parallel_chunks(samples, workers, [&](std::size_t begin, std::size_t end, std::size_t w) {
        double local = 0.0;
        for (std::size_t s = begin; s < end; ++s) {
            CounterRng rng(seed, stream, s);
            Vec a(ni), b(ni);
            for (Eigen::Index i = 0; i < ni; ++i) a[i] = rng.normal() * inv_sqrt[i];
            for (Eigen::Index i = 0; i < ni; ++i) b[i] = rng.normal() * inv_sqrt[i];
            try {
                local = std::max(local, std::abs(sectional_curvature(r, a, b)));
            } catch (const Error&) {
                // degenerate draw
            }
        }
        partial[w] = local;
    });
    for (double p : partial) sup = std::max(sup, p);
    return sup;
}

CertifyResult certify_almost_flat(const BundleTower& tower, const LeftInvariantMetric& g_seed,
                                  const CertifyConfig& config) {
    if (!(config.eps > 0.0)) throw Error(ErrorKind::InvalidArgument, "eps must be positive");
    CertifyResult out;
    const std::size_t n = tower.length();
    if (n == 0) return out;
    const NilAlgebra& top = tower.steps.front().total.algebra();
    if (g_seed.dim() != n) throw Error(ErrorKind::DimensionMismatch, "seed metric dim differs from tower dim");

    const TowerFrame tf = tower_frame(g_seed);
    const RealAlgebra frame_algebra = RealAlgebra(top).rebased(tf.frame);
    out.fiber_lengths = tf.fiber_lengths;

    // Level k (1-based, bottom-up) is the total space of steps[n - k].
    std::vector<bool> flat(n);
    std::size_t nonflat = 0;
    for (std::size_t k = 1; k <= n; ++k) {
        flat[k - 1] = tower.steps[n - k].total.algebra().is_abelian();
        if (!flat[k - 1]) ++nonflat;
    }

    double shrink = 1.0;
    for (int round = 0; round < config.max_rounds; ++round) {
        std::vector<double> ts(n, 1.0);
        std::vector<double> level_sup(n, 0.0);
        std::size_t seen = 0;
        for (std::size_t k = 1; k <= n; ++k) {
            if (flat[k - 1]) continue;
            ++seen;
            const double budget = config.eps * static_cast<double>(seen) / static_cast<double>(nonflat) *
                                  (1.0 - config.margin) * shrink;
            const RealAlgebra level = frame_algebra.truncated(k);
            auto sup_at = [&](double t) {
                std::vector<double> lts(ts.begin(), ts.begin() + static_cast<std::ptrdiff_t>(k));
                lts[k - 1] = t;
                return sampled_sup_curvature(level, lts, config.search_samples, config.seed, k, config.threads);
            };
            double lo = 1.0, hi = 1.0;
            double sup_lo = sup_at(1.0);
            if (sup_lo > budget) {
                lo = 0.5;
                while ((sup_lo = sup_at(lo)) > budget) {
                    hi = lo;
                    lo *= 0.25;
                    if (lo < 1e-300) {
                        throw Error(ErrorKind::BudgetNotMet, "no fiber scale meets the level budget at level " +
                                                                 std::to_string(k));
                    }
                }
                for (int it = 0; it < 48; ++it) {
                    const double mid = std::sqrt(lo * hi);
                    const double s = sup_at(mid);
                    if (s <= budget) {
                        lo = mid;
                        sup_lo = s;
                    } else {
                        hi = mid;
                    }
                }
            }
            ts[k - 1] = lo;
            level_sup[k - 1] = sup_lo;
        }
        const double achieved = sampled_sup_curvature(frame_algebra, ts, config.verify_samples, config.seed,
                                                      0x5eed0000ULL + static_cast<std::uint64_t>(round),
                                                      config.threads);
        out.rounds = round + 1;
        if (achieved <= config.eps) {
            out.schedule = ts;
            out.level_sup_K = level_sup;
            out.achieved_sup_K = achieved;
            out.diam_bound = diameter_bound(tf.fiber_lengths, ts);
            return out;
        }
        shrink *= 0.9;
    }
    throw Error(ErrorKind::BudgetNotMet, "sampled curvature stayed above eps after " +
                                             std::to_string(config.max_rounds) + " refinement rounds");
}

}  // namespace nilflat
