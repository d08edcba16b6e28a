#pragma once

#include "essig/rational.hpp"
#include "essig/word.hpp"

#include <array>
#include <span>
#include <variant>
#include <vector>

namespace essig {

/// Element of the truncated tensor algebra T^(N)(R^d).
///
/// Level k is stored densely as d^k coefficients indexed by words, first
/// letter most significant. Products silently drop everything above level N.
template <Scalar T>
class TruncatedTensor {
public:
    /// The zero tensor.
    TruncatedTensor(int dimension, int truncation);

    static TruncatedTensor zero(int dimension, int truncation) { return {dimension, truncation}; }
    static TruncatedTensor unit(int dimension, int truncation);

    int dimension() const { return dim_; }
    int truncation() const { return depth_; }

    std::span<const T> level(int k) const { return levels_.at(static_cast<std::size_t>(k)); }
    std::span<T> level(int k) { return levels_.at(static_cast<std::size_t>(k)); }

    /// Coefficient pi^I; throws UsageError when |I| > N or a letter is out of range.
    const T& operator[](const Word& w) const;
    T& operator[](const Word& w);

    TruncatedTensor& operator+=(const TruncatedTensor& other);
    TruncatedTensor& operator-=(const TruncatedTensor& other);
    TruncatedTensor& operator*=(const T& lambda);

    bool operator==(const TruncatedTensor& other) const = default;

private:
    int dim_;
    int depth_;
    std::vector<std::vector<T>> levels_;
};

template <Scalar T>
TruncatedTensor<T> operator+(TruncatedTensor<T> a, const TruncatedTensor<T>& b) {
    a += b;
    return a;
}

template <Scalar T>
TruncatedTensor<T> operator-(TruncatedTensor<T> a, const TruncatedTensor<T>& b) {
    a -= b;
    return a;
}

template <Scalar T>
TruncatedTensor<T> scale(const T& lambda, TruncatedTensor<T> a) {
    a *= lambda;
    return a;
}

/// Graded convolution c_n = sum_k a_k (x) b_{n-k}, truncated at N.
template <Scalar T>
TruncatedTensor<T> mul(const TruncatedTensor<T>& a, const TruncatedTensor<T>& b);

template <Scalar T>
TruncatedTensor<T> operator*(const TruncatedTensor<T>& a, const TruncatedTensor<T>& b) {
    return mul(a, b);
}

/// Multiplicative inverse via the finite geometric series in (1 - a/a0).
/// Throws SingularElement when a0 == 0.
template <Scalar T>
TruncatedTensor<T> inverse(const TruncatedTensor<T>& a);

/// Signature of the straight segment with increment v: level n is v^{(x)n}/n!.
template <Scalar T>
TruncatedTensor<T> exp_increment(std::span<const T> v, int truncation);

/// In-place right multiplication by exp_increment(v); one Chen step.
template <Scalar T>
void extend_by_segment(TruncatedTensor<T>& sig, std::span<const T> v);

template <Scalar T>
T project_word(const TruncatedTensor<T>& a, const Word& w) {
    return a[w];
}

template <Scalar T>
std::vector<T> project_level(const TruncatedTensor<T>& a, int n);

/// Level n scaled by eps^n. Throws UsageError for eps < 0.
template <Scalar T>
TruncatedTensor<T> dilate(const T& eps, const TruncatedTensor<T>& a);

/// Drops every level above `truncation` (no-op when it is not lower).
template <Scalar T>
TruncatedTensor<T> truncate(const TruncatedTensor<T>& a, int truncation);

template <Scalar T>
using Matrix2 = std::array<std::array<T, 2>, 2>;

Matrix2<double> rotation_matrix(double theta);

/// Theta(pi/2) with exact entries.
template <Scalar T>
Matrix2<T> quarter_turn() {
    return {{{T(0), T(-1)}, {T(1), T(0)}}};
}

/// Letter-wise action R^{(x)n} on each level; only defined for d = 2.
template <Scalar T>
TruncatedTensor<T> rotate(const Matrix2<T>& r, const TruncatedTensor<T>& a);

/// max_{i=1..N} |rho_i(a)|_2^{1/i}
template <Scalar T>
double homogeneous_norm(const TruncatedTensor<T>& a);

template <Scalar T>
TruncatedTensor<double> to_float(const TruncatedTensor<T>& a);

using AnyTensor = std::variant<TruncatedTensor<Rational>, TruncatedTensor<double>>;

extern template class TruncatedTensor<Rational>;
extern template class TruncatedTensor<double>;

}  // namespace essig
