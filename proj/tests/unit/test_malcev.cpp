#include "support.hpp"

#include "nilflat/bch.hpp"
#include "nilflat/error.hpp"
#include "nilflat/malcev.hpp"

using namespace testing;

namespace {

VecQ bch_oracle(const NilAlgebra& a, const VecQ& x, const VecQ& y) {
    const VecQ xy = bracket(a, x, y);
    const VecQ xxy = bracket(a, x, xy);
    VecQ z = add(x, y);
    axpy(z, q(1, 2), xy);
    axpy(z, q(1, 12), xxy);
    axpy(z, q(-1, 12), bracket(a, y, xy));
    axpy(z, q(-1, 24), bracket(a, y, xxy));
    return z;
}

// exp(a_1 e_1) ... exp(a_n e_n), multiplied left to right with the oracle.
VecQ first_kind_oracle(const NilAlgebra& a, const VecQ& exps) {
    VecQ acc = zero_vec(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) acc = bch_oracle(a, acc, scale(exps[i], unit_vec(a.dim(), i)));
    return acc;
}

}  // namespace

TEST_CASE("h3 coordinate examples") {
    const NilAlgebra h3 = algebras::heisenberg3();
    CHECK(to_second_kind(h3, vq({q(1), q(1), q(0)})).exponents == vq({q(1), q(1), q(-1, 2)}));
    CHECK(to_first_kind(h3, MalcevWord{vq({q(1), q(1), q(1)})}) == vq({q(1), q(1), q(3, 2)}));
    CHECK(is_zero(to_second_kind(h3, zero_vec(3)).exponents));
    CHECK(is_zero(to_first_kind(h3, MalcevWord{zero_vec(3)})));
}

TEST_CASE("second kind to first kind matches the oracle") {
    std::mt19937_64 rng(1);
    for (const auto& a : {algebras::heisenberg3(), algebras::filiform(4), algebras::filiform(5)}) {
        for (int trial = 0; trial < 40; ++trial) {
            const VecQ e = random_vec(rng, a.dim());
            CHECK(to_first_kind(a, MalcevWord{e}) == first_kind_oracle(a, e));
        }
    }
}

TEST_CASE("coordinate round trips") {
    std::mt19937_64 rng(2);
    for (const auto& a : {algebras::heisenberg3(), algebras::filiform(4), algebras::filiform(5),
                          algebras::heisenberg(2)}) {
        for (int trial = 0; trial < 40; ++trial) {
            const VecQ v = random_vec(rng, a.dim());
            CHECK(to_first_kind(a, to_second_kind(a, v)) == v);
            const MalcevWord w{random_vec(rng, a.dim())};
            CHECK(to_second_kind(a, to_first_kind(a, w)) == w);
        }
    }
}

TEST_CASE("non-adapted basis is rejected") {
    const NilAlgebra reversed(3, 2, {{1, 2, 0, q(1)}});
    try {
        to_second_kind(reversed, vq({q(1), q(1), q(1)}));
        FAIL("accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BasisNotAdapted);
    }
}

TEST_CASE("group law in second-kind coordinates") {
    std::mt19937_64 rng(3);
    const NilAlgebra n4 = algebras::filiform(4);
    for (int trial = 0; trial < 30; ++trial) {
        const MalcevWord x{random_vec(rng, 4)}, y{random_vec(rng, 4)};
        const MalcevWord xy = multiply(n4, x, y);
        CHECK(to_first_kind(n4, xy) == bch_product(n4, to_first_kind(n4, x), to_first_kind(n4, y)));
        CHECK(is_zero(multiply(n4, x, inverse(n4, x)).exponents));
    }
    // h3: (a)(b) = (a1+b1, a2+b2, a3+b3 - a2 b1).
    const NilAlgebra h3 = algebras::heisenberg3();
    CHECK(multiply(h3, MalcevWord{vq({q(0), q(1), q(0)})}, MalcevWord{vq({q(1), q(0), q(0)})}).exponents ==
          vq({q(1), q(1), q(-1)}));
}

TEST_CASE("lattice closure") {
    CHECK(lattice_closed(algebras::heisenberg3()).ok);
    CHECK(lattice_closed(algebras::abelian(3)).ok);
    CHECK(lattice_closed(algebras::heisenberg(2)).ok);
    const NilAlgebra half(3, 2, {{0, 1, 2, q(1, 2)}});
    const ValidationReport r = lattice_closed(half);
    CHECK_FALSE(r.ok);
    CHECK_FALSE(r.message.empty());
}

TEST_CASE("integer words stay integral on class-2 lattices") {
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<std::size_t> len(1, 6);
    for (const auto& a : {algebras::heisenberg3(), algebras::heisenberg(2),
                          direct_sum(algebras::heisenberg3(), algebras::abelian(1))}) {
        for (int trial = 0; trial < 60; ++trial) {
            MalcevWord acc{zero_vec(a.dim())};
            const std::size_t n = len(rng);
            for (std::size_t k = 0; k < n; ++k) {
                MalcevWord g{to_rational(random_int_vec(rng, a.dim(), -2, 2))};
                if (k % 2) g = inverse(a, g);
                acc = multiply(a, acc, g);
            }
            CHECK(acc.is_lattice());
        }
    }
}
