#pragma once

#include "nilflat/submersion.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace nilflat {

struct LemmaScanConfig {
    std::vector<double> t_grid;  // positive, descending
    std::size_t samples = 10000;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    /// Samples used for the sup of |A| and |DA| over g-unit frames.
    std::size_t constant_samples = 4096;
    /// Diameter bound of the base and g-length of one fiber circle.
    double base_diameter = 0.0;
    std::optional<double> fiber_length;  // default sqrt(G(z, z))
};

struct PlaneWitness {
    Vec x;
    Vec c;
    double curvature = 0.0;
};

struct DecayReport {
    std::vector<double> t_grid;
    std::vector<double> sup_abs_K;
    /// sup over sampled planes of |K^t_σ - ǧ(Ř(Y,X)Y,X)|: the part of the
    /// curvature the fiber rescaling controls.
    std::vector<double> sup_defect;
    std::vector<double> bound;  // base_sup_K + C sqrt(t)
    std::vector<double> diam_bound;
    double base_sup_K = 0.0;
    double C = 0.0;
    double sup_A = 0.0;   // sampled sup |A| over g-unit arguments (before safety factor)
    double sup_DA = 0.0;  // sampled sup |g((D_X A)_Y X, U)|
    /// Slope of log sup|K^t| against log t; empty when fewer than two
    /// positive values exist (a flat total space).
    std::optional<double> exponent_fit;
    std::optional<double> defect_exponent_fit;
    std::size_t sample_count = 0;
    std::uint64_t seed = 0;
    std::size_t violations = 0;
    std::vector<PlaneWitness> witnesses;  // sup-achieving plane per t
};

/// Planes scanned per t: every frame pair of the g^t
/// orthonormal adapted frame, then `samples` seeded random planes with X
/// uniform on the horizontal unit sphere and C uniform on the g^t-unit sphere
/// orthogonal to X. Throws BoundViolated if any t breaks
/// sup|K^t| <= sup|Ǩ| + C sqrt(t).
DecayReport lemma_scan(const RealAlgebra& a, const LeftInvariantMetric& g, const SubmersionSplit& split,
                       const LemmaScanConfig& config);

/// Same, returning the report even when the bound fails (violations > 0).
DecayReport lemma_scan_unchecked(const RealAlgebra& a, const LeftInvariantMetric& g,
                                 const SubmersionSplit& split, const LemmaScanConfig& config);

/// Geometric grid t_max, ..., t_min with `points` log-spaced values.
std::vector<double> geometric_grid(double t_max, double t_min, std::size_t points);

/// Least-squares slope of log y against log x over entries with y > 0.
std::optional<double> loglog_slope(std::span<const double> x, std::span<const double> y);

/// Σ ½ ℓ_i sqrt(t_i): each level adds half its rescaled fiber circle.
double diameter_bound(std::span<const double> fiber_lengths, std::span<const double> ts);

}  // namespace nilflat
