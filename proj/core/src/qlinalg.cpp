#include "nilflat/qlinalg.hpp"

#include "nilflat/error.hpp"

#include <utility>

namespace nilflat {

std::vector<std::size_t> rref(MatQ& rows, std::size_t ncols) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && rows[p][c] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[r], rows[p]);
        const Rational inv = 1 / rows[r][c];
        for (auto& x : rows[r]) x *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            const Rational f = rows[i][c];
            for (std::size_t k = c; k < rows[i].size(); ++k) rows[i][k] -= f * rows[r][k];
        }
        pivots.push_back(c);
        ++r;
    }
    rows.resize(r);
    return pivots;
}

std::size_t rank(MatQ rows, std::size_t ncols) { return rref(rows, ncols).size(); }

MatQ row_space(MatQ rows, std::size_t ncols) {
    rref(rows, ncols);
    return rows;
}

MatQ null_space(MatQ rows, std::size_t ncols) {
    const auto pivots = rref(rows, ncols);
    std::vector<bool> is_pivot(ncols, false);
    for (auto p : pivots) is_pivot[p] = true;
    MatQ basis;
    for (std::size_t f = 0; f < ncols; ++f) {
        if (is_pivot[f]) continue;
        VecQ v = zero_vec(ncols);
        v[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -rows[r][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

bool in_span(const MatQ& basis, const VecQ& v) {
    const std::size_t n = v.size();
    MatQ m = basis;
    const std::size_t before = rank(m, n);
    m.push_back(v);
    return rank(std::move(m), n) == before;
}

VecQ solve_square(MatQ m, VecQ b) {
    const std::size_t n = b.size();
    if (m.size() != n) throw Error(ErrorKind::DimensionMismatch, "solve_square: shape");
    for (std::size_t i = 0; i < n; ++i) m[i].push_back(b[i]);
    const auto pivots = rref(m, n);
    if (pivots.size() != n) throw Error(ErrorKind::InvalidArgument, "solve_square: singular matrix");
    VecQ x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n];
    return x;
}

}  // namespace nilflat
