#pragma once

#include "nilflat/algebra.hpp"
#include "nilflat/lemma.hpp"
#include "nilflat/metric.hpp"
#include "nilflat/tower.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace nilflat::io {

// Text formats (JSON). Indices in files are 1-based; num/den are integers or
// decimal digit strings so that big constants survive. Writers emit a single
// canonical form, so parse followed by format reproduces a formatted file
// byte for byte.
//
//   algebra:  {"dim": 3, "class": 2,
//              "brackets": [{"i": 1, "j": 2, "terms": [{"k": 3, "num": 1, "den": 1}]}]}
//   cocycle:  {"base_dim": 2, "cocycle": [{"i": 1, "j": 2, "num": 1, "den": 1}]}
//   tower:    [cocycle, cocycle, ...]  (top-down)
//   metric:   [[1, 0], [0, 1]]        (row-major, symmetric)
//
// Malformed text throws Error(Parse) with line and column; well-formed text
// with out-of-range indices or contradictory entries throws InvalidArgument.

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view text);

NilAlgebra parse_algebra(std::string_view text);
std::string format_algebra(const NilAlgebra& a);

struct CocycleRecord {
    std::size_t base_dim = 0;
    CentralCocycle cocycle;
};

CocycleRecord parse_cocycle(std::string_view text);
std::string format_cocycle(const CocycleRecord& record);

std::vector<CocycleRecord> parse_tower(std::string_view text);
std::string format_tower(const std::vector<CocycleRecord>& steps);
std::vector<CocycleRecord> tower_records(const BundleTower& tower);

Mat parse_metric(std::string_view text);
std::string format_metric(const Mat& g);

/// Columns t,sup_abs_K,base_sup_K,bound,diam_bound; values printed with %.17g.
std::string format_decay_csv(const DecayReport& report);

/// %.17g, the form used in every numeric report.
std::string format_double(double x);

}  // namespace nilflat::io
