#pragma once

#include "essig/poly.hpp"
#include "essig/tensor.hpp"

#include <random>

namespace essig::test {

inline Rational small_rational(std::mt19937_64& rng, int span = 5, int max_den = 4) {
    std::uniform_int_distribution<int> num(-span, span);
    std::uniform_int_distribution<int> den(1, max_den);
    Rational q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

inline TruncatedTensor<Rational> random_tensor(std::mt19937_64& rng, int d, int n, bool unit_base = false) {
    TruncatedTensor<Rational> t(d, n);
    for (int k = 0; k <= n; ++k)
        for (auto& c : t.level(k)) c = small_rational(rng);
    if (unit_base) t.level(0)[0] = 1;
    return t;
}

inline TruncatedTensor<double> random_float_tensor(std::mt19937_64& rng, int d, int n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    TruncatedTensor<double> t(d, n);
    for (int k = 0; k <= n; ++k)
        for (auto& c : t.level(k)) c = u(rng);
    return t;
}

inline BivarPoly random_poly(std::mt19937_64& rng, int max_degree = 3, int terms = 4) {
    std::uniform_int_distribution<int> e(0, max_degree);
    BivarPoly p;
    for (int i = 0; i < terms; ++i) {
        const int e1 = e(rng);
        const int e2 = std::uniform_int_distribution<int>(0, max_degree - e1)(rng);
        p.add_term({e1, e2}, small_rational(rng));
    }
    return p;
}

/// All words of length k over {1..d}, in index order.
inline std::vector<Word> words_of_length(int d, int k) {
    std::vector<Word> out;
    for (std::size_t i = 0; i < level_size(d, k); ++i) out.push_back(Word::from_index(i, k, d));
    return out;
}

}  // namespace essig::test
