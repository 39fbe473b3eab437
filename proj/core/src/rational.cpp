#include "nilflat/rational.hpp"

#include "nilflat/error.hpp"

namespace nilflat {

namespace {

void require_same(const VecQ& a, const VecQ& b) {
    if (a.size() != b.size()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "vector lengths differ: " + std::to_string(a.size()) + " vs " +
                        std::to_string(b.size()));
    }
}

}  // namespace

bool is_integral(const VecQ& v) {
    for (const auto& q : v) {
        if (!is_integral(q)) return false;
    }
    return true;
}

bool is_zero(const VecQ& v) {
    for (const auto& q : v) {
        if (q != 0) return false;
    }
    return true;
}

VecQ add(const VecQ& a, const VecQ& b) {
    require_same(a, b);
    VecQ r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

VecQ sub(const VecQ& a, const VecQ& b) {
    require_same(a, b);
    VecQ r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

VecQ scale(const Rational& s, const VecQ& a) {
    VecQ r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

VecQ neg(const VecQ& a) {
    VecQ r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

void axpy(VecQ& a, const Rational& s, const VecQ& b) {
    require_same(a, b);
    if (s == 0) return;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (b[i] != 0) a[i] += s * b[i];
    }
}

VecQ to_rational(const VecZ& v) {
    VecQ r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rational(v[i]);
    return r;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const VecQ& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += v[i].get_str();
    }
    return s + ")";
}

}  // namespace nilflat
