#include "support.hpp"

#include "nilflat/error.hpp"
#include "nilflat/malcev.hpp"
#include "nilflat/tower.hpp"

using namespace testing;

namespace {

NilLattice lat(const NilAlgebra& a) { return NilLattice(a); }

std::vector<NilAlgebra> corpus() {
    return {algebras::abelian(3), algebras::heisenberg3(), algebras::filiform(4),
            direct_sum(algebras::heisenberg3(), algebras::abelian(1)), algebras::heisenberg(2),
            algebras::filiform(5), algebras::abelian(1)};
}

CentralCocycle omega(std::size_t dim, std::vector<CentralCocycle::Entry> entries) {
    return CentralCocycle::from_entries(dim, entries);
}

ErrorKind kind_of(const auto& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::Io;
}

// δλ(e_i, e_j) = -λ([e_i, e_j]) compared entrywise with w.
bool is_coboundary_of(const NilAlgebra& base, const VecZ& lambda, const CentralCocycle& w) {
    for (std::size_t i = 0; i < base.dim(); ++i) {
        for (std::size_t j = i + 1; j < base.dim(); ++j) {
            Rational d = 0;
            const VecQ br = base.basis_bracket(i, j);
            for (std::size_t k = 0; k < base.dim(); ++k) d -= Rational(lambda[k]) * br[k];
            if (d != w(i, j)) return false;
        }
    }
    return true;
}

// Exhaustive search over λ with entries in [-r, r].
bool brute_force_cohomologous(const NilAlgebra& base, const CentralCocycle& diff, int r) {
    const std::size_t n = base.dim();
    VecZ lambda(n, Integer(-r));
    while (true) {
        if (is_coboundary_of(base, lambda, diff)) return true;
        std::size_t p = 0;
        while (p < n && lambda[p] == r) lambda[p++] = -r;
        if (p == n) return false;
        lambda[p] += 1;
    }
}

}  // namespace

TEST_CASE("lattice construction checks") {
    CHECK(NilLattice::point().dim() == 0);
    CHECK(kind_of([] { lat(NilAlgebra(3, 2, {{0, 1, 2, q(1, 2)}})); }) == ErrorKind::NotIntegral);
    CHECK(kind_of([] { lat(NilAlgebra(3, 2, {{1, 2, 0, q(1)}})); }) == ErrorKind::BasisNotAdapted);
    CHECK(kind_of([] { lat(NilAlgebra(3, 2, {{0, 1, 2, q(1)}, {0, 2, 0, q(1)}})); }) == ErrorKind::JacobiViolated);
}

TEST_CASE("group center") {
    CHECK(group_center(lat(algebras::heisenberg3())) == MatZ{{0, 0, 1}});
    CHECK(group_center(lat(algebras::abelian(2))) == MatZ{{1, 0}, {0, 1}});
    CHECK(group_center(lat(algebras::filiform(4))) == MatZ{{0, 0, 0, 1}});
}

TEST_CASE("primitive central choice") {
    CHECK(pick_primitive_central(lat(algebras::heisenberg3())).z == VecZ{0, 0, 1});
    CHECK(pick_primitive_central(lat(algebras::abelian(2))).z == VecZ{0, 1});
    CHECK(pick_primitive_central(lat(algebras::filiform(4))).z == VecZ{0, 0, 0, 1});
}

TEST_CASE("center of a non-diagonal lattice is saturated") {
    // [e1,e2] = 2 e3: the center is still spanned by the primitive e3.
    const NilLattice l = lat(NilAlgebra(3, 2, {{0, 1, 2, q(2)}}));
    CHECK(group_center(l) == MatZ{{0, 0, 1}});
    const TowerStep s = peel_step(l);
    CHECK(s.cocycle(0, 1) == 2);
}

TEST_CASE("peel step examples") {
    const TowerStep h = peel_step(lat(algebras::heisenberg3()));
    CHECK(h.base.algebra() == algebras::abelian(2));
    CHECK(h.cocycle(0, 1) == 1);
    CHECK(h.cocycle.entries().size() == 1);

    const TowerStep z = peel_step(lat(algebras::abelian(3)));
    CHECK(z.base.dim() == 2);
    CHECK(z.cocycle.is_zero());

    const TowerStep n = peel_step(lat(algebras::filiform(4)));
    CHECK(n.base.algebra() == algebras::heisenberg3());
    CHECK(n.cocycle(0, 2) == 1);
    CHECK(n.cocycle.entries().size() == 1);

    const TowerStep one = peel_step(lat(algebras::abelian(1)));
    CHECK(one.base.dim() == 0);
    CHECK(one.cocycle.entries().empty());
}

TEST_CASE("peel tower examples") {
    const BundleTower z = peel_tower(lat(algebras::abelian(4)));
    CHECK(z.length() == 4);
    for (const auto& s : z.steps) CHECK(s.cocycle.is_zero());

    const BundleTower h = peel_tower(lat(algebras::heisenberg3()));
    REQUIRE(h.length() == 3);
    CHECK(h.steps[0].cocycle(0, 1) == 1);
    CHECK(h.steps[1].cocycle.is_zero());
    CHECK(h.steps[2].base.dim() == 0);

    const BundleTower n = peel_tower(lat(algebras::filiform(4)));
    REQUIRE(n.length() == 4);
    CHECK(n.steps[0].cocycle(0, 2) == 1);
    CHECK(n.steps[1].cocycle(0, 1) == 1);
}

TEST_CASE("tower shape and emitted cocycles") {
    for (const auto& a : corpus()) {
        const BundleTower t = peel_tower(lat(a));
        REQUIRE(t.length() == a.dim());
        for (std::size_t s = 0; s < t.length(); ++s) {
            CHECK(t.steps[s].base.dim() + 1 == t.steps[s].total.dim());
            if (s + 1 < t.length()) CHECK(t.steps[s].base == t.steps[s + 1].total);
            CHECK(t.steps[s].cocycle.is_skew());
            CHECK(t.steps[s].cocycle.is_integral());
            CHECK(check_cocycle_closed(t.steps[s].base.algebra(), t.steps[s].cocycle).ok);
        }
        CHECK(t.steps.back().base.dim() == 0);
    }
}

TEST_CASE("extend then peel is the identity") {
    for (const auto& a : corpus()) {
        const TowerStep s = peel_step(lat(a));
        const NilLattice rebuilt = extend_by_cocycle(s.base, s.cocycle);
        CHECK(rebuilt == s.total);
        CHECK(s.total.algebra() == a);  // corpus bases are already canonical
        std::vector<CentralCocycle> cocycles;
        const BundleTower t = peel_tower(lat(a));
        for (const auto& st : t.steps) cocycles.push_back(st.cocycle);
        CHECK(rebuild_from_tower(cocycles).algebra() == a);
    }
}

TEST_CASE("extend examples") {
    const NilLattice z2 = lat(algebras::abelian(2));
    CHECK(extend_by_cocycle(z2, omega(2, {{0, 1, q(1)}})).algebra() == algebras::heisenberg3());
    CHECK(extend_by_cocycle(z2, CentralCocycle(2)).algebra() == algebras::abelian(3));
    CHECK(extend_by_cocycle(lat(algebras::heisenberg3()), omega(3, {{0, 2, q(1)}})).algebra() ==
          algebras::filiform(4));
}

TEST_CASE("extend rejects bad cocycles") {
    const NilLattice n4 = lat(algebras::filiform(4));
    const CentralCocycle bad = omega(4, {{1, 3, q(-1)}});  // ω(e4, e2) = 1
    const ValidationReport r = check_cocycle_closed(n4.algebra(), bad);
    CHECK_FALSE(r.ok);
    CHECK(r.witness == std::vector<std::size_t>{0, 2, 1});
    CHECK(r.defect == vq({q(1)}));
    CHECK(kind_of([&] { extend_by_cocycle(n4, bad); }) == ErrorKind::NotClosed);

    const NilLattice z2 = lat(algebras::abelian(2));
    CHECK(kind_of([&] { extend_by_cocycle(z2, omega(2, {{0, 1, q(1, 2)}})); }) == ErrorKind::NotIntegral);
    CHECK(kind_of([&] { extend_by_cocycle(z2, CentralCocycle(3)); }) == ErrorKind::DimensionMismatch);
    MatQ asym = {vq({q(0), q(1)}), vq({q(1), q(0)})};
    CHECK(kind_of([&] { extend_by_cocycle(z2, CentralCocycle(asym)); }) == ErrorKind::NotSkew);
    CHECK(kind_of([] { omega(2, {{0, 0, q(1)}}); }) == ErrorKind::NotSkew);
}

TEST_CASE("extension output is a Lie algebra with a closed class-2 lattice") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        const VecZ v = random_int_vec(rng, 6, -2, 2);
        const CentralCocycle w = omega(4, {{0, 1, q(v[0].get_si())}, {0, 2, q(v[1].get_si())},
                                           {0, 3, q(v[2].get_si())}, {1, 2, q(v[3].get_si())},
                                           {1, 3, q(v[4].get_si())}, {2, 3, q(v[5].get_si())}});
        const NilLattice e = extend_by_cocycle(lat(algebras::abelian(4)), w);
        CHECK(check_jacobi(e.algebra()).ok);
        CHECK(lattice_closed(e.algebra()).ok);
    }
}

TEST_CASE("cohomology examples") {
    const NilLattice z2 = lat(algebras::abelian(2));
    const CentralCocycle one = omega(2, {{0, 1, q(1)}});
    const CentralCocycle two = omega(2, {{0, 1, q(2)}});
    const CohomologyVerdict same = cocycles_cohomologous(z2, one, one, false);
    CHECK(same.cohomologous);
    CHECK(same.lambda == VecZ{0, 0});
    const CohomologyVerdict diff = cocycles_cohomologous(z2, one, two, false);
    CHECK_FALSE(diff.cohomologous);
    CHECK_FALSE(diff.certificate.empty());

    const NilLattice h3 = lat(algebras::heisenberg3());
    const CohomologyVerdict v = cocycles_cohomologous(h3, omega(3, {{0, 1, q(1)}}), CentralCocycle(3), false);
    CHECK(v.cohomologous);
    REQUIRE(v.lambda.has_value());
    CHECK((*v.lambda)[2] == -1);
    CHECK(is_coboundary_of(h3.algebra(), *v.lambda, omega(3, {{0, 1, q(1)}})));
}

TEST_CASE("sign flip branch") {
    std::mt19937_64 rng(4);
    for (const auto& a : corpus()) {
        const NilLattice l = lat(a);
        if (l.dim() < 2) continue;
        std::vector<CentralCocycle::Entry> e;
        for (std::size_t i = 0; i < l.dim(); ++i)
            for (std::size_t j = i + 1; j < l.dim(); ++j) e.push_back({i, j, q(random_int_vec(rng, 1)[0].get_si())});
        CentralCocycle w = omega(l.dim(), e);
        if (w.is_zero()) w = omega(l.dim(), {{0, 1, q(1)}});
        const CohomologyVerdict v = cocycles_cohomologous(l, w, -w, true);
        CHECK(v.cohomologous);
    }
    const NilLattice z2 = lat(algebras::abelian(2));
    const CohomologyVerdict v = cocycles_cohomologous(z2, omega(2, {{0, 1, q(1)}}), omega(2, {{0, 1, q(-1)}}), true);
    CHECK(v.cohomologous);
    CHECK(v.used_sign_flip);
}

TEST_CASE("abelian base: cohomologous iff equal") {
    std::mt19937_64 rng(6);
    const NilLattice z3 = lat(algebras::abelian(3));
    for (int trial = 0; trial < 40; ++trial) {
        const VecZ a = random_int_vec(rng, 3, -1, 1), b = random_int_vec(rng, 3, -1, 1);
        const CentralCocycle w1 = omega(3, {{0, 1, q(a[0].get_si())}, {0, 2, q(a[1].get_si())}, {1, 2, q(a[2].get_si())}});
        const CentralCocycle w2 = omega(3, {{0, 1, q(b[0].get_si())}, {0, 2, q(b[1].get_si())}, {1, 2, q(b[2].get_si())}});
        CHECK(cocycles_cohomologous(z3, w1, w2, false).cohomologous == (w1 == w2));
    }
}

TEST_CASE("cohomology agrees with exhaustive search") {
    std::mt19937_64 rng(7);
    for (const auto& a : {algebras::heisenberg3(), algebras::filiform(4), algebras::heisenberg(2)}) {
        const NilLattice l = lat(a);
        for (int trial = 0; trial < 25; ++trial) {
            // Random closed difference: a random coboundary plus, half the time, a random perturbation.
            const VecZ lambda = random_int_vec(rng, a.dim(), -2, 2);
            MatQ m(a.dim(), zero_vec(a.dim()));
            for (std::size_t i = 0; i < a.dim(); ++i) {
                for (std::size_t j = 0; j < a.dim(); ++j) {
                    Rational d = 0;
                    const VecQ br = a.basis_bracket(i, j);
                    for (std::size_t k = 0; k < a.dim(); ++k) d -= Rational(lambda[k]) * br[k];
                    m[i][j] = d;
                }
            }
            if (trial % 2) {
                const VecZ p = random_int_vec(rng, 1, 1, 2);
                m[0][1] += Rational(p[0]);
                m[1][0] -= Rational(p[0]);
            }
            const CentralCocycle diff(m);
            if (!check_cocycle_closed(a, diff).ok) continue;
            const CohomologyVerdict v = cocycles_cohomologous(l, diff, CentralCocycle(a.dim()), false);
            CHECK(v.cohomologous == brute_force_cohomologous(a, diff, 4));
            if (v.cohomologous) CHECK(is_coboundary_of(a, *v.lambda, diff));
        }
    }
}

TEST_CASE("section defect antisymmetrizes to the cocycle") {
    std::mt19937_64 rng(8);
    const TowerStep s = peel_step(lat(algebras::heisenberg3()));
    for (int trial = 0; trial < 30; ++trial) {
        const VecQ a = to_rational(random_int_vec(rng, 2)), b = to_rational(random_int_vec(rng, 2));
        CHECK(section_defect(s, a, b) - section_defect(s, b, a) == s.cocycle.evaluate(a, b));
        CHECK(section_defect(s, a, b) == -a[1] * b[0]);
    }
}

TEST_CASE("cocycle rebasing") {
    const CentralCocycle w = omega(2, {{0, 1, q(1)}});
    const CentralCocycle r = w.rebased({{0, 1}, {1, 0}});
    CHECK(r(0, 1) == -1);
    CHECK((w + w)(0, 1) == 2);
    CHECK((w - w).is_zero());
}

TEST_CASE("peeling a lattice given in a skewed basis") {
    std::mt19937_64 rng(10);
    std::uniform_int_distribution<long> d(-2, 2);
    for (const auto& a : {algebras::heisenberg3(), algebras::filiform(4), algebras::heisenberg(2),
                          direct_sum(algebras::heisenberg3(), algebras::abelian(1))}) {
        const std::size_t n = a.dim();
        for (int trial = 0; trial < 5; ++trial) {
            MatQ basis(n, zero_vec(n));
            for (std::size_t i = 0; i < n; ++i) {
                basis[i][i] = 1;
                for (std::size_t j = i + 1; j < n; ++j) basis[i][j] = q(d(rng));
            }
            const NilLattice l(change_basis(a, basis));
            const BundleTower t = peel_tower(l);
            REQUIRE(t.length() == n);
            MatQ top;
            for (const auto& row : t.top_basis) top.push_back(to_rational(row));
            CHECK(t.steps[0].total.algebra() == change_basis(l.algebra(), top));
            CHECK(unimodular_inverse(t.top_basis).size() == n);
            std::vector<CentralCocycle> cocycles;
            for (const auto& st : t.steps) cocycles.push_back(st.cocycle);
            CHECK(rebuild_from_tower(cocycles) == t.steps[0].total);
            for (const auto& st : t.steps) {
                CHECK(st.cocycle.is_integral());
                CHECK(check_cocycle_closed(st.base.algebra(), st.cocycle).ok);
            }
        }
    }
}
