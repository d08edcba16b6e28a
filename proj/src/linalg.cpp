#include "essig/linalg.hpp"

#include "essig/errors.hpp"

#include <numeric>
#include <stdexcept>

namespace essig {

namespace {

std::size_t bit_size(const Rational& q) {
    return mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
}

}  // namespace

RationalLu::RationalLu(DenseMatrix<Rational> a) : lu_(std::move(a)), perm_(lu_.n) {
    const std::size_t n = lu_.n;
    std::iota(perm_.begin(), perm_.end(), std::size_t{0});
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = n;
        std::size_t best = 0;
        for (std::size_t row = col; row < n; ++row) {
            if (lu_(row, col) == 0) continue;
            const std::size_t size = bit_size(lu_(row, col));
            if (pivot == n || size < best) {
                pivot = row;
                best = size;
            }
        }
        if (pivot == n) throw std::domain_error("singular matrix in exact LU factorisation");
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu_(col, j), lu_(pivot, j));
            std::swap(perm_[col], perm_[pivot]);
        }
        const Rational inv = 1 / lu_(col, col);
        for (std::size_t row = col + 1; row < n; ++row) {
            if (lu_(row, col) == 0) continue;
            Rational factor = lu_(row, col) * inv;
            lu_(row, col) = factor;
            for (std::size_t j = col + 1; j < n; ++j)
                if (lu_(col, j) != 0) lu_(row, j) -= factor * lu_(col, j);
        }
    }
}

std::vector<Rational> RationalLu::solve(const std::vector<Rational>& b) const {
    const std::size_t n = lu_.n;
    if (b.size() != n) throw UsageError("right-hand side has wrong length");
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rational acc = b[perm_[i]];
        for (std::size_t j = 0; j < i; ++j)
            if (lu_(i, j) != 0 && x[j] != 0) acc -= lu_(i, j) * x[j];
        x[i] = acc;
    }
    for (std::size_t i = n; i-- > 0;) {
        Rational acc = x[i];
        for (std::size_t j = i + 1; j < n; ++j)
            if (lu_(i, j) != 0 && x[j] != 0) acc -= lu_(i, j) * x[j];
        x[i] = acc / lu_(i, i);
    }
    return x;
}

}  // namespace essig
