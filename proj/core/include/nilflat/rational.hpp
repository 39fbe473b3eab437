#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace nilflat {

using Integer = mpz_class;
using Rational = mpq_class;

/// Vector over Q; length is the ambient algebra dimension.
using VecQ = std::vector<Rational>;
using VecZ = std::vector<Integer>;

inline VecQ zero_vec(std::size_t n) { return VecQ(n, Rational(0)); }

inline VecQ unit_vec(std::size_t n, std::size_t i) {
    VecQ v = zero_vec(n);
    v[i] = 1;
    return v;
}

inline bool is_integral(const Rational& q) { return q.get_den() == 1; }

bool is_integral(const VecQ& v);
bool is_zero(const VecQ& v);

VecQ add(const VecQ& a, const VecQ& b);
VecQ sub(const VecQ& a, const VecQ& b);
VecQ scale(const Rational& s, const VecQ& a);
VecQ neg(const VecQ& a);
/// a += s * b
void axpy(VecQ& a, const Rational& s, const VecQ& b);

VecQ to_rational(const VecZ& v);

std::string to_string(const Rational& q);
std::string to_string(const VecQ& v);

}  // namespace nilflat
