#pragma once

// Reference implementations kept deliberately naive and independent of the library:
// sorted index vectors with bubble-sort signs, a literal stem table, subset enumeration.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "thomstem/exterior.hpp"
#include "thomstem/stems.hpp"

namespace oracle {

using thomstem::Integer;
using Word = std::vector<int>;
using Poly = std::map<Word, Integer>;

// Sorts a word of generators by adjacent swaps; returns 0 on a repeated generator,
// otherwise the sign of the permutation.
inline int normalize(Word& w) {
    int sign = 1;
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = 0; j + 1 < w.size() - i; ++j)
            if (w[j] > w[j + 1]) {
                std::swap(w[j], w[j + 1]);
                sign = -sign;
            }
    for (std::size_t i = 1; i < w.size(); ++i)
        if (w[i] == w[i - 1]) return 0;
    return sign;
}

inline Poly wedge(const Poly& a, const Poly& b) {
    Poly out;
    for (const auto& [wa, ca] : a)
        for (const auto& [wb, cb] : b) {
            Word w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            const int s = normalize(w);
            if (s == 0) continue;
            out[w] += s * ca * cb;
        }
    for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

inline Poly from_class(const thomstem::ext::ExteriorClass& x) {
    Poly p;
    for (const auto& [m, c] : x.terms()) p[m.generators()] = c;
    return p;
}

inline int binom_by_enumeration(int b, int k) {
    int count = 0;
    for (std::uint32_t mask = 0; mask < (1u << b); ++mask)
        if (__builtin_popcount(mask) == k) ++count;
    return count;
}

// |pi_q^s| for q = 0..7, 0 meaning infinite.
inline constexpr std::int64_t kStemOrders[] = {0, 2, 2, 24, 1, 1, 2, 240};

inline thomstem::AbelianGroup stem(int q) {
    if (q < 0) return {};
    const auto n = kStemOrders[q];
    if (n == 0) return thomstem::AbelianGroup(1, {});
    if (n == 1) return {};
    return thomstem::AbelianGroup(0, {n});
}

class Gen {
  public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool coin() { return uniform(0, 1) == 1; }

    thomstem::ext::Monomial monomial(int rank) {
        std::uint32_t bits = 0;
        for (int k = 0; k < rank; ++k)
            if (coin()) bits |= 1u << k;
        return thomstem::ext::Monomial::from_bits(bits);
    }

    thomstem::ext::Monomial monomial_of_degree(int rank, int degree) {
        std::vector<int> idx(rank);
        for (int i = 0; i < rank; ++i) idx[i] = i + 1;
        std::shuffle(idx.begin(), idx.end(), rng_);
        idx.resize(degree);
        std::sort(idx.begin(), idx.end());
        return thomstem::ext::Monomial::of(idx);
    }

    thomstem::ext::ExteriorClass element(int rank, int max_terms = 4) {
        thomstem::ext::ExteriorClass::Terms t;
        const int n = uniform(0, max_terms);
        for (int i = 0; i < n; ++i) t[monomial(rank)] += uniform(-9, 9);
        return thomstem::ext::ExteriorClass(rank, std::move(t));
    }

    thomstem::ext::ExteriorClass homogeneous(int rank, int degree, int max_terms = 3) {
        thomstem::ext::ExteriorClass::Terms t;
        const int n = uniform(1, max_terms);
        for (int i = 0; i < n; ++i) t[monomial_of_degree(rank, degree)] += uniform(-9, 9);
        return thomstem::ext::ExteriorClass(rank, std::move(t));
    }

    std::mt19937_64& engine() { return rng_; }

  private:
    std::mt19937_64 rng_;
};

}  // namespace oracle
