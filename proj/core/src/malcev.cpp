#include "nilflat/malcev.hpp"

#include "nilflat/bch.hpp"
#include "nilflat/error.hpp"

namespace nilflat {

namespace {

void require_adapted(const NilAlgebra& a) {
    if (auto r = check_adapted(a); !r.ok) throw Error(ErrorKind::BasisNotAdapted, r.message);
}

std::string generator_name(std::size_t i, int sign) {
    return "g" + std::to_string(i + 1) + (sign < 0 ? "^-1" : "");
}

}  // namespace

MalcevWord to_second_kind(const NilAlgebra& a, const VecQ& v) {
    require_adapted(a);
    const std::size_t n = a.dim();
    if (v.size() != n) throw Error(ErrorKind::DimensionMismatch, "to_second_kind: length");
    MalcevWord w{zero_vec(n)};
    VecQ rest = v;
    // rest lies in span(e_i, ..., e_n); its e_i coordinate is the next exponent
    // because span(e_{i+1}, ...) is an ideal with one-dimensional abelian quotient.
    for (std::size_t i = 0; i < n; ++i) {
        w.exponents[i] = rest[i];
        if (rest[i] == 0) continue;
        VecQ factor = zero_vec(n);
        factor[i] = -rest[i];
        rest = bch_product(a, factor, rest);
    }
    return w;
}

VecQ to_first_kind(const NilAlgebra& a, const MalcevWord& w) {
    require_adapted(a);
    const std::size_t n = a.dim();
    if (w.exponents.size() != n) throw Error(ErrorKind::DimensionMismatch, "to_first_kind: length");
    VecQ v = zero_vec(n);
    // Fold from the right so each product is against an element of an ideal tail.
    for (std::size_t i = n; i-- > 0;) {
        if (w.exponents[i] == 0) continue;
        VecQ factor = zero_vec(n);
        factor[i] = w.exponents[i];
        v = bch_product(a, factor, v);
    }
    return v;
}

MalcevWord multiply(const NilAlgebra& a, const MalcevWord& x, const MalcevWord& y) {
    return to_second_kind(a, bch_product(a, to_first_kind(a, x), to_first_kind(a, y)));
}

MalcevWord inverse(const NilAlgebra& a, const MalcevWord& x) {
    return to_second_kind(a, neg(to_first_kind(a, x)));
}

ValidationReport lattice_closed(const NilAlgebra& a) {
    const std::size_t n = a.dim();
    if (auto r = check_adapted(a); !r.ok) return r;

    auto fail = [](std::string what, const MalcevWord& w) {
        ValidationReport r;
        r.ok = false;
        r.defect = w.exponents;
        r.message = what + " has non-integral second-kind coordinates " + to_string(w.exponents);
        return r;
    };

    for (std::size_t i = 0; i < n; ++i) {
        const MalcevWord g = to_second_kind(a, scale(-1, unit_vec(n, i)));
        if (!g.is_lattice()) return fail(generator_name(i, -1), g);
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            for (int si : {1, -1}) {
                for (int sj : {1, -1}) {
                    const VecQ p = bch_product(a, scale(si, unit_vec(n, i)), scale(sj, unit_vec(n, j)));
                    const std::string name = generator_name(i, si) + "*" + generator_name(j, sj);
                    const MalcevWord w = to_second_kind(a, p);
                    if (!w.is_lattice()) {
                        auto r = fail(name, w);
                        r.witness = {i, j};
                        return r;
                    }
                    const MalcevWord winv = to_second_kind(a, neg(p));
                    if (!winv.is_lattice()) {
                        auto r = fail("(" + name + ")^-1", winv);
                        r.witness = {i, j};
                        return r;
                    }
                }
            }
        }
    }
    return ValidationReport::pass();
}

}  // namespace nilflat
