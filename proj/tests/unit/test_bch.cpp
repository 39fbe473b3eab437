#include "support.hpp"

#include "nilflat/bch.hpp"
#include "nilflat/error.hpp"

using namespace testing;

namespace {

// Closed form through degree 4, written out by hand:
// x + y + [x,y]/2 + ([x,[x,y]] - [y,[x,y]])/12 - [y,[x,[x,y]]]/24.
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

std::vector<NilAlgebra> test_algebras() {
    return {algebras::heisenberg3(), algebras::filiform(4), algebras::filiform(5)};
}

}  // namespace

TEST_CASE("Dynkin table low degrees") {
    const BchTable t(4);
    // Degree 2 must evaluate to [x,y]/2 on any algebra.
    const NilAlgebra h3 = algebras::heisenberg3();
    CHECK(t.evaluate(h3, unit_vec(3, 0), unit_vec(3, 1), 2) == vq({q(1), q(1), q(1, 2)}));
    for (const auto& term : t.degree(3)) CHECK(term.coefficient != 0);
    CHECK_THROWS_AS(BchTable::get(1)->degree(5), Error);
}

TEST_CASE("h3 product closed form") {
    const NilAlgebra h3 = algebras::heisenberg3();
    CHECK(bch_product(h3, unit_vec(3, 0), unit_vec(3, 1)) == vq({q(1), q(1), q(1, 2)}));
}

TEST_CASE("n4 degree-3 term") {
    const NilAlgebra n4 = algebras::filiform(4);
    CHECK(bch_product(n4, unit_vec(4, 0), unit_vec(4, 1)) == vq({q(1), q(1), q(1, 2), q(1, 12)}));
}

TEST_CASE("identity and inverse") {
    std::mt19937_64 rng(2);
    for (const auto& a : test_algebras()) {
        for (int trial = 0; trial < 30; ++trial) {
            const VecQ x = random_vec(rng, a.dim());
            CHECK(bch_product(a, x, zero_vec(a.dim())) == x);
            CHECK(bch_product(a, zero_vec(a.dim()), x) == x);
            CHECK(is_zero(bch_product(a, x, group_inverse(x))));
        }
    }
}

TEST_CASE("product matches the hand-written closed form up to class 4") {
    std::mt19937_64 rng(3);
    for (const auto& a : test_algebras()) {
        for (int trial = 0; trial < 50; ++trial) {
            const VecQ x = random_vec(rng, a.dim()), y = random_vec(rng, a.dim());
            CHECK(bch_product(a, x, y) == bch_oracle(a, x, y));
        }
    }
}

TEST_CASE("class-2 algebras use x + y + [x,y]/2") {
    std::mt19937_64 rng(4);
    for (const auto& a : {algebras::heisenberg3(), algebras::heisenberg(2),
                          direct_sum(algebras::heisenberg3(), algebras::abelian(1))}) {
        for (int trial = 0; trial < 50; ++trial) {
            const VecQ x = random_vec(rng, a.dim()), y = random_vec(rng, a.dim());
            VecQ expect = add(x, y);
            axpy(expect, q(1, 2), bracket(a, x, y));
            CHECK(bch_product(a, x, y) == expect);
        }
    }
}

TEST_CASE("associativity on random rational triples") {
    std::mt19937_64 rng(5);
    for (const auto& a : test_algebras()) {
        for (int trial = 0; trial < 100; ++trial) {
            const VecQ x = random_vec(rng, a.dim()), y = random_vec(rng, a.dim()), z = random_vec(rng, a.dim());
            CHECK(bch_product(a, bch_product(a, x, y), z) == bch_product(a, x, bch_product(a, y, z)));
        }
    }
}

TEST_CASE("one extra Dynkin degree changes nothing") {
    std::mt19937_64 rng(6);
    const auto table = BchTable::get(kDefaultBchClassBound);
    for (const auto& a : test_algebras()) {
        for (int trial = 0; trial < 30; ++trial) {
            const VecQ x = random_vec(rng, a.dim()), y = random_vec(rng, a.dim());
            CHECK(table->evaluate(a, x, y, a.declared_class()) == table->evaluate(a, x, y, a.declared_class() + 1));
        }
    }
}

TEST_CASE("class above the table bound") {
    const NilAlgebra f5 = algebras::filiform(5);
    try {
        bch_product(f5, unit_vec(5, 0), unit_vec(5, 1), 3);
        FAIL("class 4 accepted with bound 3");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ClassExceeded);
    }
}

TEST_CASE("class-6 filiform stays associative") {
    std::mt19937_64 rng(7);
    const NilAlgebra f7 = algebras::filiform(7);
    for (int trial = 0; trial < 10; ++trial) {
        const VecQ x = random_vec(rng, 7), y = random_vec(rng, 7), z = random_vec(rng, 7);
        CHECK(bch_product(f7, bch_product(f7, x, y), z) == bch_product(f7, x, bch_product(f7, y, z)));
    }
}
