#pragma once

#include "nilflat/metric.hpp"
#include "nilflat/tower.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace nilflat {

/// G-orthonormal frame adapted to a tower: column k spans the level-(k+1)
/// fiber modulo the higher fibers (Gram-Schmidt from the top basis vector
/// down). Fiber lengths are the G-lengths of the lattice generators along
/// each column.
struct TowerFrame {
    Mat frame;
    std::vector<double> fiber_lengths;  // bottom-up, level 1 first
};

/// `g` is given on the tower's top canonical basis.
TowerFrame tower_frame(const LeftInvariantMetric& g);

/// Sampled sup |K| of the metric diag(ts) on `frame_algebra` (an algebra
/// already written in a tower frame), using all frame planes plus `samples`
/// random planes.
double sampled_sup_curvature(const RealAlgebra& frame_algebra, const std::vector<double>& ts,
                             std::size_t samples, std::uint64_t seed, std::uint64_t stream,
                             unsigned threads);

struct CertifyConfig {
    double eps = 1e-2;
    std::uint64_t seed = 0;
    std::size_t search_samples = 2000;
    std::size_t verify_samples = 20000;
    int max_rounds = 20;
    unsigned threads = 1;
    double margin = 0.02;  // fraction of each level budget left unused
};

struct CertifyResult {
    std::vector<double> schedule;      // bottom-up: t for level 1 (circle) .. level n
    std::vector<double> level_sup_K;   // sampled sup |K| of each level's total space
    std::vector<double> fiber_lengths; // bottom-up
    double achieved_sup_K = 0.0;
    double diam_bound = 0.0;
    int rounds = 0;
};

/// Bottom-up schedule: each non-flat level takes the largest t whose sampled
/// sup |K| stays within its budget (budgets rise linearly to eps), then the
/// assembled metric is verified with fresh samples. On failure every budget
/// shrinks by 10% and the search repeats, up to max_rounds, then BudgetNotMet.
/// `g_seed` is given on the tower's top canonical basis.
CertifyResult certify_almost_flat(const BundleTower& tower, const LeftInvariantMetric& g_seed,
                                  const CertifyConfig& config);

}  // namespace nilflat
