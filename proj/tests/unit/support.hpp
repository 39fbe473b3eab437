#pragma once

#include "nilflat/algebra.hpp"
#include "nilflat/metric.hpp"
#include "nilflat/rational.hpp"

#include <doctest.h>

#include <random>
#include <string>

namespace testing {

using namespace nilflat;

inline Rational q(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline VecQ vq(std::initializer_list<Rational> xs) { return VecQ(xs); }

/// Small-height rationals: numerators in [-5, 5], denominators in [1, 4].
inline VecQ random_vec(std::mt19937_64& rng, std::size_t n) {
    std::uniform_int_distribution<long> num(-5, 5), den(1, 4);
    VecQ v(n);
    for (auto& x : v) x = q(num(rng), den(rng));
    return v;
}

inline VecZ random_int_vec(std::mt19937_64& rng, std::size_t n, long lo = -3, long hi = 3) {
    std::uniform_int_distribution<long> d(lo, hi);
    VecZ v(n);
    for (auto& x : v) x = d(rng);
    return v;
}

inline Mat random_spd(std::mt19937_64& rng, std::size_t n) {
    std::normal_distribution<double> d;
    Mat m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = d(rng);
    return m * m.transpose() + Mat::Identity(m.rows(), m.cols());
}

inline Vec random_dvec(std::mt19937_64& rng, std::size_t n) {
    std::normal_distribution<double> d;
    Vec v(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = d(rng);
    return v;
}

inline std::string data_path(const std::string& name) { return std::string(NILFLAT_TEST_DATA) + "/" + name; }

}  // namespace testing
