#include "nilflat/bch.hpp"

#include "nilflat/error.hpp"

#include <map>
#include <mutex>
#include <unordered_map>

namespace nilflat {

namespace {

Rational factorial(int k) {
    Integer f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return Rational(f);
}

// Dynkin: sum over n >= 1 and pairs (r_i, s_i) with r_i + s_i >= 1 of
// (-1)^{n-1}/n * [x^{r_1} y^{s_1} ... x^{r_n} y^{s_n}] / (d * prod r_i! s_i!).
void enumerate(int remaining, int pairs, std::uint32_t word, int length, const Rational& weight,
               int degree, std::map<std::uint32_t, Rational>& acc) {
    if (remaining == 0) {
        const Rational sign = (pairs % 2 == 1) ? Rational(1) : Rational(-1);
        acc[word] += sign * weight / (pairs * degree);
        return;
    }
    for (int r = 0; r <= remaining; ++r) {
        for (int s = 0; r + s <= remaining; ++s) {
            if (r + s == 0) continue;
            std::uint32_t w = word;
            for (int p = 0; p < r; ++p) w = w << 1;
            for (int p = 0; p < s; ++p) w = (w << 1) | 1u;
            enumerate(remaining - r - s, pairs + 1, w, length + r + s,
                      weight / (factorial(r) * factorial(s)), degree, acc);
        }
    }
}

}  // namespace

BchTable::BchTable(int class_bound) : class_bound_(class_bound) {
    if (class_bound < 1 || class_bound > 24) {
        throw Error(ErrorKind::InvalidArgument, "BCH class bound must be in [1, 24]");
    }
    by_degree_.resize(static_cast<std::size_t>(class_bound) + 1);
    for (int d = 2; d <= class_bound; ++d) {
        std::map<std::uint32_t, Rational> acc;
        enumerate(d, 0, 0u, 0, Rational(1), d, acc);
        for (auto& [word, c] : acc) {
            const bool last_two_equal = ((word >> 1) & 1u) == (word & 1u);
            if (c == 0 || last_two_equal) continue;
            by_degree_[d].push_back({word, c});
        }
    }
}

const std::vector<BchTable::Term>& BchTable::degree(int d) const {
    if (d < 2 || d > class_bound_) throw Error(ErrorKind::InvalidArgument, "BCH degree out of range");
    return by_degree_[d];
}

std::shared_ptr<const BchTable> BchTable::get(int class_bound) {
    static std::mutex mu;
    static std::map<int, std::shared_ptr<const BchTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[class_bound];
    if (!slot) slot = std::make_shared<const BchTable>(class_bound);
    return slot;
}

VecQ BchTable::evaluate(const NilAlgebra& a, const VecQ& x, const VecQ& y, int max_degree) const {
    if (x.size() != a.dim() || y.size() != a.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "bch: vector length does not match algebra dim");
    }
    if (max_degree > class_bound_) {
        throw Error(ErrorKind::ClassExceeded, "requested BCH degree above table bound");
    }
    VecQ z = add(x, y);
    if (a.is_abelian()) return z;

    // Right-nested brackets share suffixes; key = (suffix length, suffix bits).
    std::unordered_map<std::uint64_t, VecQ> memo;
    auto nested = [&](auto&& self, std::uint32_t word, int length) -> const VecQ& {
        const std::uint64_t key = (static_cast<std::uint64_t>(length) << 32) | word;
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        VecQ value;
        if (length == 1) {
            value = (word & 1u) ? y : x;
        } else {
            const bool head_is_y = (word >> (length - 1)) & 1u;
            const std::uint32_t tail = word & ((1u << (length - 1)) - 1u);
            const VecQ& inner = self(self, tail, length - 1);
            value = is_zero(inner) ? zero_vec(a.dim()) : bracket(a, head_is_y ? y : x, inner);
        }
        return memo.emplace(key, std::move(value)).first->second;
    };

    for (int d = 2; d <= max_degree; ++d) {
        for (const auto& term : by_degree_[d]) {
            const VecQ& b = nested(nested, term.word, d);
            axpy(z, term.coefficient, b);
        }
    }
    return z;
}

VecQ bch_product(const NilAlgebra& a, const VecQ& x, const VecQ& y, int class_bound) {
    if (a.declared_class() > class_bound) {
        throw Error(ErrorKind::ClassExceeded, "algebra class " + std::to_string(a.declared_class()) +
                                                  " exceeds BCH bound " + std::to_string(class_bound));
    }
    const auto table = BchTable::get(class_bound);
    return table->evaluate(a, x, y, std::max(a.declared_class(), 1));
}

}  // namespace nilflat
