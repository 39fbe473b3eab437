#include "nilflat/algebra.hpp"

#include "nilflat/error.hpp"

#include <algorithm>
#include <tuple>

namespace nilflat {

NilAlgebra::NilAlgebra(std::size_t dim, int declared_class, const std::vector<BracketTerm>& terms)
    : dim_(dim), declared_class_(declared_class), table_(dim * dim * dim, Rational(0)) {
    for (const auto& t : terms) {
        if (t.i >= dim || t.j >= dim || t.k >= dim) {
            throw Error(ErrorKind::DimensionMismatch, "bracket index out of range");
        }
        if (t.i == t.j) {
            if (t.value != 0) throw Error(ErrorKind::InvalidArgument, "[e_i, e_i] must vanish");
            continue;
        }
        const auto [lo, hi, sign] =
            t.i < t.j ? std::tuple{t.i, t.j, 1} : std::tuple{t.j, t.i, -1};
        table_[(lo * dim + hi) * dim + t.k] += sign * t.value;
    }
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = i + 1; j < dim; ++j) {
            for (std::size_t k = 0; k < dim; ++k) {
                const Rational& c = table_[(i * dim + j) * dim + k];
                table_[(j * dim + i) * dim + k] = -c;
                if (c != 0) terms_.push_back({i, j, k, c});
            }
        }
    }
}

const Rational& NilAlgebra::constant(std::size_t i, std::size_t j, std::size_t k) const {
    return table_[(i * dim_ + j) * dim_ + k];
}

VecQ NilAlgebra::basis_bracket(std::size_t i, std::size_t j) const {
    VecQ out(dim_);
    for (std::size_t k = 0; k < dim_; ++k) out[k] = constant(i, j, k);
    return out;
}

bool NilAlgebra::has_integer_constants() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const BracketTerm& t) { return is_integral(t.value); });
}

bool operator==(const NilAlgebra& a, const NilAlgebra& b) {
    return a.dim_ == b.dim_ && a.table_ == b.table_;
}

VecQ bracket(const NilAlgebra& a, const VecQ& x, const VecQ& y) {
    if (x.size() != a.dim() || y.size() != a.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "bracket: vector length does not match algebra dim");
    }
    VecQ out = zero_vec(a.dim());
    Rational coeff;
    for (const auto& t : a.terms()) {
        if ((x[t.i] == 0 || y[t.j] == 0) && (x[t.j] == 0 || y[t.i] == 0)) continue;
        coeff = x[t.i] * y[t.j] - x[t.j] * y[t.i];
        if (coeff != 0) out[t.k] += coeff * t.value;
    }
    return out;
}

ValidationReport check_jacobi(const NilAlgebra& a) {
    const std::size_t n = a.dim();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (std::size_t k = j + 1; k < n; ++k) {
                const VecQ ei = unit_vec(n, i), ej = unit_vec(n, j), ek = unit_vec(n, k);
                VecQ sum = bracket(a, ei, a.basis_bracket(j, k));
                sum = add(sum, bracket(a, ej, a.basis_bracket(k, i)));
                sum = add(sum, bracket(a, ek, a.basis_bracket(i, j)));
                if (!is_zero(sum)) {
                    ValidationReport r;
                    r.ok = false;
                    r.witness = {i, j, k};
                    r.defect = sum;
                    r.message = "Jacobi identity fails at (e" + std::to_string(i + 1) + ",e" +
                                std::to_string(j + 1) + ",e" + std::to_string(k + 1) +
                                "), defect " + to_string(sum);
                    return r;
                }
            }
        }
    }
    return ValidationReport::pass();
}

CentralSeries lower_central_series(const NilAlgebra& a) {
    const std::size_t n = a.dim();
    CentralSeries out;
    MatQ current;
    for (std::size_t i = 0; i < n; ++i) current.push_back(unit_vec(n, i));
    out.terms.push_back(current);
    while (!current.empty()) {
        MatQ next;
        for (std::size_t i = 0; i < n; ++i) {
            for (const auto& v : current) {
                VecQ b = bracket(a, unit_vec(n, i), v);
                if (!is_zero(b)) next.push_back(std::move(b));
            }
        }
        next = row_space(std::move(next), n);
        if (next.size() == current.size()) {
            throw Error(ErrorKind::NotNilpotent,
                        "lower central series stabilizes at dimension " +
                            std::to_string(next.size()));
        }
        current = std::move(next);
        out.terms.push_back(current);
    }
    out.nilpotency_class = static_cast<int>(out.terms.size()) - 1;
    // The abelian zero algebra has class 0; a nonzero abelian algebra has class 1.
    return out;
}

MatQ algebra_center(const NilAlgebra& a) {
    const std::size_t n = a.dim();
    // [x, e_i] = sum_j x_j [e_j, e_i] = 0 for every i and every output k.
    MatQ system;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            VecQ row(n);
            bool nonzero = false;
            for (std::size_t j = 0; j < n; ++j) {
                row[j] = a.constant(j, i, k);
                if (row[j] != 0) nonzero = true;
            }
            if (nonzero) system.push_back(std::move(row));
        }
    }
    return null_space(std::move(system), n);
}

ValidationReport check_adapted(const NilAlgebra& a) {
    for (const auto& t : a.terms()) {
        if (t.k <= t.j) {
            ValidationReport r;
            r.ok = false;
            r.witness = {t.i, t.j, t.k};
            r.message = "basis not Mal'cev-adapted: [e" + std::to_string(t.i + 1) + ",e" +
                        std::to_string(t.j + 1) + "] has a component on e" +
                        std::to_string(t.k + 1);
            return r;
        }
    }
    return ValidationReport::pass();
}

ValidationReport validate_algebra(const NilAlgebra& a) {
    if (auto r = check_jacobi(a); !r.ok) return r;
    int cls = 0;
    try {
        cls = lower_central_series(a).nilpotency_class;
    } catch (const Error& e) {
        ValidationReport r;
        r.ok = false;
        r.message = std::string("NotNilpotent: ") + e.what();
        return r;
    }
    if (cls != a.declared_class()) {
        ValidationReport r;
        r.ok = false;
        r.message = "declared class " + std::to_string(a.declared_class()) +
                    " but lower central series has length " + std::to_string(cls);
        return r;
    }
    return check_adapted(a);
}

NilAlgebra change_basis(const NilAlgebra& a, const MatQ& basis) {
    const std::size_t n = a.dim();
    if (basis.size() != n) throw Error(ErrorKind::DimensionMismatch, "change_basis: shape");
    // Column-solve: coordinates c of v in the new basis satisfy sum_r c_r basis[r] = v.
    MatQ transposed(n, VecQ(n));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) transposed[c][r] = basis[r][c];
    }
    std::vector<BracketTerm> terms;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const VecQ b = bracket(a, basis[i], basis[j]);
            if (is_zero(b)) continue;
            const VecQ c = solve_square(transposed, b);
            for (std::size_t k = 0; k < n; ++k) {
                if (c[k] != 0) terms.push_back({i, j, k, c[k]});
            }
        }
    }
    NilAlgebra out(n, a.declared_class(), terms);
    return out;
}

NilAlgebra direct_sum(const NilAlgebra& a, const NilAlgebra& b) {
    std::vector<BracketTerm> terms = a.terms();
    const std::size_t off = a.dim();
    for (const auto& t : b.terms()) terms.push_back({t.i + off, t.j + off, t.k + off, t.value});
    return NilAlgebra(a.dim() + b.dim(), std::max(a.declared_class(), b.declared_class()), terms);
}

namespace algebras {

NilAlgebra abelian(std::size_t n) { return NilAlgebra(n, n == 0 ? 0 : 1, {}); }

NilAlgebra heisenberg3() { return heisenberg(1); }

NilAlgebra heisenberg(std::size_t m) {
    std::vector<BracketTerm> terms;
    for (std::size_t i = 0; i < m; ++i) terms.push_back({i, m + i, 2 * m, Rational(1)});
    return NilAlgebra(2 * m + 1, 2, terms);
}

NilAlgebra filiform(std::size_t n) {
    std::vector<BracketTerm> terms;
    for (std::size_t j = 1; j + 1 < n; ++j) terms.push_back({0, j, j + 1, Rational(1)});
    return NilAlgebra(n, static_cast<int>(n) - 1, terms);
}

}  // namespace algebras

}  // namespace nilflat
