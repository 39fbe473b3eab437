#include "nilflat/zlinalg.hpp"

#include "nilflat/error.hpp"
#include "nilflat/qlinalg.hpp"

#include <algorithm>
#include <utility>

namespace nilflat {

namespace {

// r_a <- r_a - q * r_b
void row_sub(VecZ& a, const VecZ& b, const Integer& q) {
    if (q == 0) return;
    for (std::size_t k = 0; k < a.size(); ++k) a[k] -= q * b[k];
}

Integer floor_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

// Unimodular row reduction of `rows` (with `shadow` rows following along)
// into echelon form restricted to the first `ncols` columns.
void echelon(MatZ& rows, MatZ* shadow, std::size_t ncols) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
        while (true) {
            std::size_t best = rows.size();
            for (std::size_t i = r; i < rows.size(); ++i) {
                if (rows[i][c] == 0) continue;
                if (best == rows.size() || abs(rows[i][c]) < abs(rows[best][c])) best = i;
            }
            if (best == rows.size()) break;
            std::swap(rows[r], rows[best]);
            if (shadow) std::swap((*shadow)[r], (*shadow)[best]);
            bool done = true;
            for (std::size_t i = r + 1; i < rows.size(); ++i) {
                if (rows[i][c] == 0) continue;
                const Integer q = floor_div(rows[i][c], rows[r][c]);
                row_sub(rows[i], rows[r], q);
                if (shadow) row_sub((*shadow)[i], (*shadow)[r], q);
                if (rows[i][c] != 0) done = false;
            }
            if (done) {
                ++r;
                break;
            }
        }
    }
}

}  // namespace

ExtGcd ext_gcd(const Integer& a, const Integer& b) {
    ExtGcd out;
    mpz_gcdext(out.g.get_mpz_t(), out.x.get_mpz_t(), out.y.get_mpz_t(), a.get_mpz_t(),
               b.get_mpz_t());
    return out;
}

Integer content(const VecZ& v) {
    Integer g = 0;
    for (const auto& x : v) g = gcd(g, x);
    return g;
}

VecZ primitive_multiple(const VecQ& v) {
    Integer l = 1;
    for (const auto& q : v) l = lcm(l, q.get_den());
    VecZ out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        Rational s = v[i] * l;
        out[i] = s.get_num();
    }
    const Integer g = content(out);
    if (g == 0) throw Error(ErrorKind::InvalidArgument, "primitive_multiple of zero vector");
    for (auto& x : out) x /= g;
    return out;
}

MatZ identity_z(std::size_t n) {
    MatZ m(n, VecZ(n, Integer(0)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

MatZ multiply(const MatZ& a, const MatZ& b) {
    MatZ out;
    out.reserve(a.size());
    for (const auto& row : a) out.push_back(multiply_row(row, b));
    return out;
}

VecZ multiply_row(const VecZ& row, const MatZ& m) {
    const std::size_t cols = m.empty() ? 0 : m[0].size();
    VecZ out(cols, Integer(0));
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (row[i] == 0) continue;
        for (std::size_t k = 0; k < cols; ++k) out[k] += row[i] * m[i][k];
    }
    return out;
}

MatZ hermite_normal_form(MatZ rows, std::size_t ncols) {
    echelon(rows, nullptr, ncols);
    // Drop zero rows, fix signs, reduce above pivots.
    MatZ out;
    for (auto& r : rows) {
        if (content(r) != 0) out.push_back(std::move(r));
    }
    std::vector<std::size_t> pivot(out.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        std::size_t c = 0;
        while (out[i][c] == 0) ++c;
        pivot[i] = c;
        if (out[i][c] < 0) {
            for (auto& x : out[i]) x = -x;
        }
        for (std::size_t h = 0; h < i; ++h) {
            const Integer q = floor_div(out[h][c], out[i][c]);
            row_sub(out[h], out[i], q);
        }
    }
    return out;
}

MatZ integer_kernel(const MatZ& m, std::size_t ncols) {
    // Rows of [M^T | I]; echelon on the M^T part, zero rows give the kernel.
    const std::size_t mrows = m.size();
    MatZ t(ncols, VecZ(mrows, Integer(0)));
    for (std::size_t i = 0; i < mrows; ++i) {
        for (std::size_t j = 0; j < ncols; ++j) t[j][i] = m[i][j];
    }
    MatZ shadow = identity_z(ncols);
    echelon(t, &shadow, mrows);
    MatZ kernel;
    for (std::size_t i = 0; i < ncols; ++i) {
        if (content(t[i]) == 0) kernel.push_back(shadow[i]);
    }
    return hermite_normal_form(std::move(kernel), ncols);
}

MatZ saturate(const MatQ& rows, std::size_t ncols) {
    const MatQ perp = null_space(rows, ncols);
    if (perp.empty()) return identity_z(ncols);
    MatZ m;
    for (const auto& v : perp) m.push_back(primitive_multiple(v));
    return integer_kernel(m, ncols);
}

MatZ unimodular_inverse(const MatZ& u) {
    const std::size_t n = u.size();
    MatQ aug(n, VecQ(2 * n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i][j] = u[i][j];
        aug[i][n + i] = 1;
    }
    const auto pivots = rref(aug, n);
    if (pivots.size() != n) throw Error(ErrorKind::InvalidArgument, "matrix is singular");
    MatZ inv(n, VecZ(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const Rational& q = aug[i][n + j];
            if (!is_integral(q)) throw Error(ErrorKind::InvalidArgument, "matrix is not unimodular");
            inv[i][j] = q.get_num();
        }
    }
    return inv;
}

SmithForm smith_normal_form(const MatZ& a_in, std::size_t ncols) {
    const std::size_t m = a_in.size();
    const std::size_t n = ncols;
    MatZ a = a_in;
    MatZ u = identity_z(m);
    MatZ v = identity_z(n);

    auto swap_cols = [&](std::size_t c1, std::size_t c2) {
        for (auto& row : a) std::swap(row[c1], row[c2]);
        for (auto& row : v) std::swap(row[c1], row[c2]);
    };
    // col c1 -= q * col c2
    auto col_sub = [&](std::size_t c1, std::size_t c2, const Integer& q) {
        for (auto& row : a) row[c1] -= q * row[c2];
        for (auto& row : v) row[c1] -= q * row[c2];
    };

    const std::size_t steps = std::min(m, n);
    for (std::size_t t = 0; t < steps; ++t) {
        while (true) {
            // Smallest nonzero entry of the trailing block goes to (t, t).
            std::size_t bi = m, bj = n;
            for (std::size_t i = t; i < m; ++i) {
                for (std::size_t j = t; j < n; ++j) {
                    if (a[i][j] == 0) continue;
                    if (bi == m || abs(a[i][j]) < abs(a[bi][bj])) {
                        bi = i;
                        bj = j;
                    }
                }
            }
            if (bi == m) break;
            std::swap(a[t], a[bi]);
            std::swap(u[t], u[bi]);
            swap_cols(t, bj);

            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (a[i][t] == 0) continue;
                const Integer q = floor_div(a[i][t], a[t][t]);
                row_sub(a[i], a[t], q);
                row_sub(u[i], u[t], q);
                if (a[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (a[t][j] == 0) continue;
                const Integer q = floor_div(a[t][j], a[t][t]);
                col_sub(j, t, q);
                if (a[t][j] != 0) clean = false;
            }
            if (!clean) continue;

            // Divisibility of the rest of the block by the pivot.
            bool divides = true;
            for (std::size_t i = t + 1; i < m && divides; ++i) {
                for (std::size_t j = t + 1; j < n; ++j) {
                    if (a[i][j] % a[t][t] != 0) {
                        // row t += row i, then re-run the reduction.
                        for (std::size_t k = 0; k < n; ++k) a[t][k] += a[i][k];
                        for (std::size_t k = 0; k < m; ++k) u[t][k] += u[i][k];
                        divides = false;
                        break;
                    }
                }
            }
            if (divides) break;
        }
        if (t < m && a[t][t] < 0) {
            for (auto& x : a[t]) x = -x;
            for (auto& x : u[t]) x = -x;
        }
    }

    SmithForm out;
    out.u = std::move(u);
    out.v = std::move(v);
    out.diagonal.resize(steps);
    for (std::size_t t = 0; t < steps; ++t) out.diagonal[t] = a[t][t];
    return out;
}

IntegerSolve solve_integer(const MatZ& a, std::size_t ncols, const VecQ& b) {
    IntegerSolve out;
    const std::size_t m = a.size();
    if (b.size() != m) throw Error(ErrorKind::DimensionMismatch, "solve_integer: rhs length");
    const SmithForm s = smith_normal_form(a, ncols);
    // c = U b
    VecQ c(m, Rational(0));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t k = 0; k < m; ++k) c[i] += Rational(s.u[i][k]) * b[k];
    }
    VecZ y(ncols, Integer(0));
    for (std::size_t i = 0; i < m; ++i) {
        const Integer d = i < s.diagonal.size() ? s.diagonal[i] : Integer(0);
        bool ok;
        if (d == 0) {
            ok = c[i] == 0;
        } else {
            const Rational q = c[i] / d;
            ok = is_integral(q);
            if (ok) y[i] = q.get_num();
        }
        if (!ok) {
            out.obstruction_row = i;
            out.obstruction_divisor = d;
            out.obstruction_value = c[i];
            return out;
        }
    }
    VecZ x(ncols, Integer(0));
    for (std::size_t i = 0; i < ncols; ++i) {
        for (std::size_t k = 0; k < ncols; ++k) x[i] += s.v[i][k] * y[k];
    }
    out.solution = std::move(x);
    return out;
}

}  // namespace nilflat
