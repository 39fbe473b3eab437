#include "nilflat/tower.hpp"

#include "nilflat/bch.hpp"
#include "nilflat/error.hpp"
#include "nilflat/malcev.hpp"

#include <algorithm>
#include <utility>

namespace nilflat {

namespace {

std::string triple_name(std::size_t i, std::size_t j, std::size_t k) {
    return "(e" + std::to_string(i + 1) + ",e" + std::to_string(j + 1) + ",e" +
           std::to_string(k + 1) + ")";
}

MatQ to_rational(const MatZ& m) {
    MatQ out;
    out.reserve(m.size());
    for (const auto& row : m) out.push_back(nilflat::to_rational(row));
    return out;
}

int computed_class(const NilAlgebra& a) { return lower_central_series(a).nilpotency_class; }

// Splits an algebra whose last basis vector is central into (base, ω).
std::pair<NilAlgebra, CentralCocycle> split_last_central(const NilAlgebra& a) {
    const std::size_t n = a.dim();
    const std::size_t m = n - 1;
    std::vector<BracketTerm> terms;
    MatQ omega(m, zero_vec(m));
    for (const auto& t : a.terms()) {
        if (t.i == m || t.j == m) {
            throw Error(ErrorKind::InvalidArgument, "last basis vector is not central");
        }
        if (t.k == m) {
            omega[t.i][t.j] = t.value;
            omega[t.j][t.i] = -t.value;
        } else {
            terms.push_back(t);
        }
    }
    NilAlgebra probe(m, 0, terms);
    NilAlgebra base(m, computed_class(probe), terms);
    return {std::move(base), CentralCocycle(std::move(omega))};
}

// Unimodular basis, Mal'cev-adapted for the algebra, with the primitive central
// z as its last row. See the flag L_k = Z^n ∩ (span(e_k, ..., e_n) + Q z).
MatZ canonical_basis(const VecZ& z) {
    const std::size_t n = z.size();
    std::size_t p = 0;
    while (p < n && z[p] == 0) ++p;
    if (p == n) throw Error(ErrorKind::InvalidArgument, "peel direction is zero");

    MatZ rows;
    for (std::size_t i = 0; i < p; ++i) {
        VecZ e(n, Integer(0));
        e[i] = 1;
        rows.push_back(std::move(e));
    }
    // h_k: primitive vector on z restricted to [p, k); g_k its content.
    auto restricted = [&](std::size_t k) {
        VecZ h(n, Integer(0));
        for (std::size_t i = p; i < k; ++i) h[i] = z[i];
        return h;
    };
    for (std::size_t k = p + 1; k < n; ++k) {
        const VecZ hk_raw = restricted(k);
        const Integer gk = content(hk_raw);
        const VecZ hk1_raw = restricted(k + 1);
        const Integer gk1 = content(hk1_raw);
        const Integer a = gk / gk1;
        const Integer b = z[k] / gk1;
        const ExtGcd eg = ext_gcd(a, b);  // a x + b y = 1
        VecZ c(n, Integer(0));
        for (std::size_t i = p; i < k; ++i) c[i] = -eg.y * (hk_raw[i] / gk);
        c[k] = eg.x;
        rows.push_back(std::move(c));
    }
    rows.push_back(z);
    return rows;
}

}  // namespace

NilLattice::NilLattice(NilAlgebra algebra) : algebra_(std::move(algebra)) {
    if (auto r = check_jacobi(algebra_); !r.ok) throw Error(ErrorKind::JacobiViolated, r.message);
    const int cls = lower_central_series(algebra_).nilpotency_class;
    if (cls != algebra_.declared_class()) {
        throw Error(ErrorKind::InvalidArgument,
                    "declared class " + std::to_string(algebra_.declared_class()) +
                        " but computed class is " + std::to_string(cls));
    }
    if (auto r = check_adapted(algebra_); !r.ok) throw Error(ErrorKind::BasisNotAdapted, r.message);
    if (!algebra_.has_integer_constants()) {
        throw Error(ErrorKind::NotIntegral, "lattice basis needs integer structure constants");
    }
}

// ---------------------------------------------------------------- cocycles

CentralCocycle::CentralCocycle(std::size_t dim) : omega_(dim, zero_vec(dim)) {}

CentralCocycle::CentralCocycle(MatQ omega) : omega_(std::move(omega)) {
    for (const auto& row : omega_) {
        if (row.size() != omega_.size()) throw Error(ErrorKind::DimensionMismatch, "cocycle must be square");
    }
}

CentralCocycle CentralCocycle::from_entries(std::size_t dim, const std::vector<Entry>& entries) {
    CentralCocycle w(dim);
    std::vector<std::vector<bool>> seen(dim, std::vector<bool>(dim, false));
    for (const auto& e : entries) {
        if (e.i >= dim || e.j >= dim) throw Error(ErrorKind::DimensionMismatch, "cocycle index out of range");
        if (e.i == e.j) {
            if (e.value != 0) throw Error(ErrorKind::NotSkew, "diagonal cocycle entry must vanish");
            continue;
        }
        if (seen[e.i][e.j] && w.omega_[e.i][e.j] != e.value) {
            throw Error(ErrorKind::NotSkew, "conflicting cocycle entries for (e" + std::to_string(e.i + 1) +
                                                ",e" + std::to_string(e.j + 1) + ")");
        }
        w.omega_[e.i][e.j] = e.value;
        w.omega_[e.j][e.i] = -e.value;
        seen[e.i][e.j] = seen[e.j][e.i] = true;
    }
    return w;
}

Rational CentralCocycle::evaluate(const VecQ& x, const VecQ& y) const {
    Rational s = 0;
    for (std::size_t i = 0; i < dim(); ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < dim(); ++j) {
            if (y[j] != 0 && omega_[i][j] != 0) s += x[i] * omega_[i][j] * y[j];
        }
    }
    return s;
}

std::vector<CentralCocycle::Entry> CentralCocycle::entries() const {
    std::vector<Entry> out;
    for (std::size_t i = 0; i < dim(); ++i) {
        for (std::size_t j = i + 1; j < dim(); ++j) {
            if (omega_[i][j] != 0) out.push_back({i, j, omega_[i][j]});
        }
    }
    return out;
}

bool CentralCocycle::is_skew() const {
    for (std::size_t i = 0; i < dim(); ++i) {
        if (omega_[i][i] != 0) return false;
        for (std::size_t j = i + 1; j < dim(); ++j) {
            if (omega_[i][j] != -omega_[j][i]) return false;
        }
    }
    return true;
}

bool CentralCocycle::is_integral() const {
    return std::all_of(omega_.begin(), omega_.end(), [](const VecQ& r) { return nilflat::is_integral(r); });
}

bool CentralCocycle::is_zero() const {
    return std::all_of(omega_.begin(), omega_.end(), [](const VecQ& r) { return nilflat::is_zero(r); });
}

CentralCocycle CentralCocycle::operator+(const CentralCocycle& o) const {
    if (o.dim() != dim()) throw Error(ErrorKind::DimensionMismatch, "cocycle dims differ");
    MatQ m = omega_;
    for (std::size_t i = 0; i < dim(); ++i) m[i] = add(m[i], o.omega_[i]);
    return CentralCocycle(std::move(m));
}

CentralCocycle CentralCocycle::operator-(const CentralCocycle& o) const { return *this + (-o); }

CentralCocycle CentralCocycle::operator-() const {
    MatQ m = omega_;
    for (auto& row : m) row = neg(row);
    return CentralCocycle(std::move(m));
}

CentralCocycle CentralCocycle::rebased(const MatZ& basis) const {
    const std::size_t n = dim();
    MatQ m(n, zero_vec(n));
    const MatQ b = to_rational(basis);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t c = a + 1; c < n; ++c) {
            m[a][c] = evaluate(b[a], b[c]);
            m[c][a] = -m[a][c];
        }
    }
    return CentralCocycle(std::move(m));
}

ValidationReport check_cocycle_closed(const NilAlgebra& base, const CentralCocycle& w) {
    const std::size_t n = base.dim();
    if (w.dim() != n) throw Error(ErrorKind::DimensionMismatch, "cocycle dim does not match base");
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (std::size_t k = j + 1; k < n; ++k) {
                const VecQ ei = unit_vec(n, i), ej = unit_vec(n, j), ek = unit_vec(n, k);
                const Rational s = w.evaluate(base.basis_bracket(i, j), ek) +
                                   w.evaluate(base.basis_bracket(j, k), ei) +
                                   w.evaluate(base.basis_bracket(k, i), ej);
                if (s == 0) continue;
                ValidationReport r;
                r.ok = false;
                r.witness = s > 0 ? std::vector<std::size_t>{i, j, k} : std::vector<std::size_t>{i, k, j};
                r.defect = {s > 0 ? s : Rational(-s)};
                r.message = "cocycle is not closed at " +
                            triple_name(r.witness[0], r.witness[1], r.witness[2]) + ", defect " +
                            to_string(r.defect[0]);
                return r;
            }
        }
    }
    return ValidationReport::pass();
}

// ----------------------------------------------------------------- peeling

MatZ group_center(const NilLattice& l) {
    const std::size_t n = l.dim();
    if (n == 0) return {};
    return saturate(algebra_center(l.algebra()), n);
}

PeelChoice pick_primitive_central(const NilLattice& l) {
    if (l.dim() == 0) throw Error(ErrorKind::InvalidArgument, "cannot peel the point");
    MatZ center = group_center(l);
    VecZ z = center.back();
    auto first = std::find_if(z.begin(), z.end(), [](const Integer& x) { return x != 0; });
    if (first != z.end() && *first < 0) {
        for (auto& x : z) x = -x;
    }
    return PeelChoice{std::move(z)};
}

TowerStep peel_step(const NilLattice& l) {
    PeelChoice choice = pick_primitive_central(l);
    MatZ basis = canonical_basis(choice.z);
    NilAlgebra rebased = change_basis(l.algebra(), to_rational(basis));
    auto [base_algebra, omega] = split_last_central(rebased);
    return TowerStep{NilLattice(std::move(rebased)), NilLattice(std::move(base_algebra)),
                     std::move(choice), std::move(omega), std::move(basis)};
}

BundleTower peel_tower(const NilLattice& l) {
    BundleTower tower;
    if (l.dim() == 0) {
        tower.top_basis = {};
        return tower;
    }
    TowerStep step = peel_step(l);
    BundleTower sub = peel_tower(step.base);
    const std::size_t m = step.base.dim();
    if (m > 0 && sub.top_basis != identity_z(m)) {
        const MatZ& v = sub.top_basis;
        CentralCocycle w = step.cocycle.rebased(v);
        MatZ lifted;
        for (std::size_t b = 0; b < m; ++b) {
            VecZ row(l.dim(), Integer(0));
            for (std::size_t a = 0; a < m; ++a) {
                if (v[b][a] == 0) continue;
                for (std::size_t c = 0; c < l.dim(); ++c) row[c] += v[b][a] * step.basis_change[a][c];
            }
            lifted.push_back(std::move(row));
        }
        lifted.push_back(step.basis_change.back());
        step.base = sub.steps.front().total;
        step.total = extend_by_cocycle(step.base, w);
        step.cocycle = std::move(w);
        step.basis_change = std::move(lifted);
    }
    tower.top_basis = step.basis_change;
    tower.steps.push_back(std::move(step));
    for (auto& s : sub.steps) tower.steps.push_back(std::move(s));
    return tower;
}

NilLattice extend_by_cocycle(const NilLattice& base, const CentralCocycle& w) {
    const std::size_t m = base.dim();
    if (w.dim() != m) {
        throw Error(ErrorKind::DimensionMismatch, "cocycle dim " + std::to_string(w.dim()) +
                                                      " does not match base dim " + std::to_string(m));
    }
    if (!w.is_skew()) throw Error(ErrorKind::NotSkew, "cocycle is not skew-symmetric");
    if (auto r = check_cocycle_closed(base.algebra(), w); !r.ok) throw Error(ErrorKind::NotClosed, r.message);
    if (!w.is_integral()) {
        for (const auto& e : w.entries()) {
            if (!is_integral(e.value)) {
                throw Error(ErrorKind::NotIntegral, "cocycle value " + to_string(e.value) + " on (e" +
                                                        std::to_string(e.i + 1) + ",e" +
                                                        std::to_string(e.j + 1) + ") is not an integer");
            }
        }
    }
    std::vector<BracketTerm> terms = base.algebra().terms();
    for (const auto& e : w.entries()) terms.push_back({e.i, e.j, m, e.value});
    NilAlgebra probe(m + 1, 0, terms);
    return NilLattice(NilAlgebra(m + 1, computed_class(probe), terms));
}

NilLattice rebuild_from_tower(const std::vector<CentralCocycle>& cocycles_top_down) {
    NilLattice current = NilLattice::point();
    for (auto it = cocycles_top_down.rbegin(); it != cocycles_top_down.rend(); ++it) {
        current = extend_by_cocycle(current, *it);
    }
    return current;
}

// --------------------------------------------------------------- cohomology

CohomologyVerdict cocycles_cohomologous(const NilLattice& base, const CentralCocycle& w1,
                                        const CentralCocycle& w2, bool up_to_sign) {
    const std::size_t n = base.dim();
    if (w1.dim() != n || w2.dim() != n) throw Error(ErrorKind::DimensionMismatch, "cocycle dims differ from base");
    // One row per pair i<j: δλ(e_i,e_j) = -Σ_k c_ij^k λ_k.
    MatZ a;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            VecZ row(n, Integer(0));
            for (std::size_t k = 0; k < n; ++k) row[k] = -base.algebra().constant(i, j, k).get_num();
            a.push_back(std::move(row));
            pairs.emplace_back(i, j);
        }
    }
    auto attempt = [&](const CentralCocycle& diff) {
        VecQ b;
        for (auto [i, j] : pairs) b.push_back(diff(i, j));
        return solve_integer(a, n, b);
    };

    CohomologyVerdict out;
    IntegerSolve direct = attempt(w1 - w2);
    if (direct.solution) {
        out.cohomologous = true;
        out.lambda = std::move(direct.solution);
        return out;
    }
    out.certificate = "w1 - w2: Smith row " + std::to_string(direct.obstruction_row) + " needs " +
                      direct.obstruction_divisor.get_str() + " | " + direct.obstruction_value.get_str();
    if (up_to_sign) {
        IntegerSolve flipped = attempt(w1 + w2);
        if (flipped.solution) {
            out.cohomologous = true;
            out.used_sign_flip = true;
            out.lambda = std::move(flipped.solution);
            out.certificate.clear();
            return out;
        }
        out.certificate += "; w1 + w2: Smith row " + std::to_string(flipped.obstruction_row) + " needs " +
                           flipped.obstruction_divisor.get_str() + " | " +
                           flipped.obstruction_value.get_str();
    }
    return out;
}

Rational section_defect(const TowerStep& step, const VecQ& a, const VecQ& b) {
    const NilAlgebra& total = step.total.algebra();
    const NilAlgebra& base = step.base.algebra();
    const std::size_t m = base.dim();
    if (a.size() != m || b.size() != m) throw Error(ErrorKind::DimensionMismatch, "section_defect: length");
    auto lift = [&](const VecQ& w) {
        VecQ e = w;
        e.push_back(0);
        return to_first_kind(total, MalcevWord{e});
    };
    const MalcevWord ab = multiply(base, MalcevWord{a}, MalcevWord{b});
    const VecQ d = bch_product(total, bch_product(total, lift(a), lift(b)), neg(lift(ab.exponents)));
    return d[m];
}

}  // namespace nilflat
