#pragma once

#include "essig/rational.hpp"

#include <cstddef>
#include <vector>

namespace essig {

/// Row-major dense square matrix.
template <Scalar T>
struct DenseMatrix {
    std::size_t n = 0;
    std::vector<T> data;

    explicit DenseMatrix(std::size_t size = 0) : n(size), data(size * size, T(0)) {}
    T& operator()(std::size_t i, std::size_t j) { return data[i * n + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data[i * n + j]; }
};

/// Exact LU factorisation P A = L U over the rationals.
///
/// Pivots are chosen among the nonzero candidates of each column by the
/// smallest combined numerator/denominator bit size, which keeps entry
/// growth down. Factor once, then solve any number of right-hand sides.
class RationalLu {
public:
    /// Throws std::domain_error if A is singular.
    explicit RationalLu(DenseMatrix<Rational> a);

    std::size_t size() const { return lu_.n; }
    std::vector<Rational> solve(const std::vector<Rational>& b) const;

private:
    DenseMatrix<Rational> lu_;
    std::vector<std::size_t> perm_;
};

inline std::vector<Rational> solve_exact(DenseMatrix<Rational> a, const std::vector<Rational>& b) {
    return RationalLu(std::move(a)).solve(b);
}

}  // namespace essig
