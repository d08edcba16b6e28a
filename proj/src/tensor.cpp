#include "essig/tensor.hpp"

#include "essig/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace essig {

namespace {

template <Scalar T>
bool is_zero(const T& x) {
    return x == 0;
}

template <Scalar T>
void require_same_shape(const TruncatedTensor<T>& a, const TruncatedTensor<T>& b) {
    if (a.dimension() != b.dimension() || a.truncation() != b.truncation())
        throw UsageError("tensor shape mismatch: (d=" + std::to_string(a.dimension()) + ", N=" +
                         std::to_string(a.truncation()) + ") vs (d=" + std::to_string(b.dimension()) +
                         ", N=" + std::to_string(b.truncation()) + ")");
}

}  // namespace

template <Scalar T>
TruncatedTensor<T>::TruncatedTensor(int dimension, int truncation) : dim_(dimension), depth_(truncation) {
    if (dimension < 1) throw UsageError("tensor dimension must be positive");
    if (truncation < 0) throw UsageError("truncation must be non-negative");
    levels_.reserve(static_cast<std::size_t>(truncation) + 1);
    for (int k = 0; k <= truncation; ++k) levels_.emplace_back(level_size(dimension, k), T(0));
}

template <Scalar T>
TruncatedTensor<T> TruncatedTensor<T>::unit(int dimension, int truncation) {
    TruncatedTensor t(dimension, truncation);
    t.levels_[0][0] = T(1);
    return t;
}

template <Scalar T>
const T& TruncatedTensor<T>::operator[](const Word& w) const {
    if (static_cast<int>(w.size()) > depth_)
        throw UsageError("word '" + w.str() + "' is longer than truncation " + std::to_string(depth_));
    return levels_[w.size()][w.index(dim_)];
}

template <Scalar T>
T& TruncatedTensor<T>::operator[](const Word& w) {
    if (static_cast<int>(w.size()) > depth_)
        throw UsageError("word '" + w.str() + "' is longer than truncation " + std::to_string(depth_));
    return levels_[w.size()][w.index(dim_)];
}

template <Scalar T>
TruncatedTensor<T>& TruncatedTensor<T>::operator+=(const TruncatedTensor& other) {
    require_same_shape(*this, other);
    for (std::size_t k = 0; k < levels_.size(); ++k)
        for (std::size_t i = 0; i < levels_[k].size(); ++i) levels_[k][i] += other.levels_[k][i];
    return *this;
}

template <Scalar T>
TruncatedTensor<T>& TruncatedTensor<T>::operator-=(const TruncatedTensor& other) {
    require_same_shape(*this, other);
    for (std::size_t k = 0; k < levels_.size(); ++k)
        for (std::size_t i = 0; i < levels_[k].size(); ++i) levels_[k][i] -= other.levels_[k][i];
    return *this;
}

template <Scalar T>
TruncatedTensor<T>& TruncatedTensor<T>::operator*=(const T& lambda) {
    for (auto& lvl : levels_)
        for (auto& c : lvl) c *= lambda;
    return *this;
}

template <Scalar T>
TruncatedTensor<T> mul(const TruncatedTensor<T>& a, const TruncatedTensor<T>& b) {
    require_same_shape(a, b);
    const int d = a.dimension();
    const int depth = a.truncation();
    TruncatedTensor<T> c(d, depth);
    for (int n = 0; n <= depth; ++n) {
        auto out = c.level(n);
        for (int k = 0; k <= n; ++k) {
            auto left = a.level(k);
            auto right = b.level(n - k);
            const std::size_t stride = right.size();
            for (std::size_t iu = 0; iu < left.size(); ++iu) {
                if (is_zero(left[iu])) continue;
                const T& x = left[iu];
                for (std::size_t iv = 0; iv < stride; ++iv) {
                    if (is_zero(right[iv])) continue;
                    out[iu * stride + iv] += x * right[iv];
                }
            }
        }
    }
    return c;
}

template <Scalar T>
TruncatedTensor<T> inverse(const TruncatedTensor<T>& a) {
    const T a0 = a.level(0)[0];
    if (is_zero(a0)) throw SingularElement("tensor with zero level-0 coefficient has no inverse");
    const int d = a.dimension();
    const int depth = a.truncation();
    const T inv_a0 = T(1) / a0;

    // x = 1 - a/a0 has no level-0 part, so x^{(x)n} vanishes for n > N.
    auto one = TruncatedTensor<T>::unit(d, depth);
    auto x = one - scale(inv_a0, a);
    auto series = one;
    for (int n = 0; n < depth; ++n) series = one + mul(x, series);
    series *= inv_a0;
    return series;
}

template <Scalar T>
TruncatedTensor<T> exp_increment(std::span<const T> v, int truncation) {
    const int d = static_cast<int>(v.size());
    auto e = TruncatedTensor<T>::unit(d, truncation);
    for (int n = 1; n <= truncation; ++n) {
        auto prev = e.level(n - 1);
        auto cur = e.level(n);
        const T inv_n = T(1) / T(n);
        for (std::size_t i = 0; i < prev.size(); ++i) {
            if (is_zero(prev[i])) continue;
            T head = prev[i] * inv_n;
            for (int j = 0; j < d; ++j) cur[i * static_cast<std::size_t>(d) + static_cast<std::size_t>(j)] = head * v[static_cast<std::size_t>(j)];
        }
    }
    return e;
}

template <Scalar T>
void extend_by_segment(TruncatedTensor<T>& sig, std::span<const T> v) {
    if (static_cast<int>(v.size()) != sig.dimension()) throw UsageError("segment dimension mismatch");
    const auto seg = exp_increment(v, sig.truncation());
    // Descending n keeps levels k < n unmodified while level n is updated.
    for (int n = sig.truncation(); n >= 1; --n) {
        auto out = sig.level(n);
        for (int k = 0; k < n; ++k) {
            std::span<const T> left = sig.level(k);
            auto right = seg.level(n - k);
            const std::size_t stride = right.size();
            for (std::size_t iu = 0; iu < left.size(); ++iu) {
                if (is_zero(left[iu])) continue;
                for (std::size_t iv = 0; iv < stride; ++iv) out[iu * stride + iv] += left[iu] * right[iv];
            }
        }
    }
}

template <Scalar T>
std::vector<T> project_level(const TruncatedTensor<T>& a, int n) {
    if (n < 0 || n > a.truncation())
        throw UsageError("level " + std::to_string(n) + " outside 0.." + std::to_string(a.truncation()));
    auto lvl = a.level(n);
    return {lvl.begin(), lvl.end()};
}

template <Scalar T>
TruncatedTensor<T> dilate(const T& eps, const TruncatedTensor<T>& a) {
    if (eps < 0) throw UsageError("dilation factor must be non-negative");
    TruncatedTensor<T> out = a;
    T factor(1);
    for (int n = 1; n <= a.truncation(); ++n) {
        factor *= eps;
        for (auto& c : out.level(n)) c *= factor;
    }
    return out;
}

template <Scalar T>
TruncatedTensor<T> truncate(const TruncatedTensor<T>& a, int truncation) {
    if (truncation < 0) throw UsageError("truncation must be non-negative");
    const int depth = std::min(truncation, a.truncation());
    TruncatedTensor<T> out(a.dimension(), depth);
    for (int n = 0; n <= depth; ++n) std::ranges::copy(a.level(n), out.level(n).begin());
    return out;
}

Matrix2<double> rotation_matrix(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {{{c, -s}, {s, c}}};
}

template <Scalar T>
TruncatedTensor<T> rotate(const Matrix2<T>& r, const TruncatedTensor<T>& a) {
    if (a.dimension() != 2) throw UsageError("rotation is only defined for dimension 2");
    TruncatedTensor<T> out = a;
    for (int n = 1; n <= a.truncation(); ++n) {
        auto cur = out.level(n);
        for (int slot = 0; slot < n; ++slot) {
            const std::size_t stride = level_size(2, n - 1 - slot);
            for (std::size_t i = 0; i < cur.size(); ++i) {
                if ((i / stride) % 2 != 0) continue;
                T x0 = cur[i];
                T x1 = cur[i + stride];
                cur[i] = r[0][0] * x0 + r[0][1] * x1;
                cur[i + stride] = r[1][0] * x0 + r[1][1] * x1;
            }
        }
    }
    return out;
}

template <Scalar T>
double homogeneous_norm(const TruncatedTensor<T>& a) {
    if (a.truncation() < 1) throw UsageError("homogeneous norm needs truncation >= 1");
    double best = 0.0;
    for (int i = 1; i <= a.truncation(); ++i) {
        double sq = 0.0;
        for (const auto& c : a.level(i)) {
            double x;
            if constexpr (std::is_same_v<T, double>)
                x = c;
            else
                x = to_double(c);
            sq += x * x;
        }
        best = std::max(best, std::pow(std::sqrt(sq), 1.0 / i));
    }
    return best;
}

template <Scalar T>
TruncatedTensor<double> to_float(const TruncatedTensor<T>& a) {
    if constexpr (std::is_same_v<T, double>) {
        return a;
    } else {
        TruncatedTensor<double> out(a.dimension(), a.truncation());
        for (int n = 0; n <= a.truncation(); ++n) {
            auto src = a.level(n);
            auto dst = out.level(n);
            for (std::size_t i = 0; i < src.size(); ++i) dst[i] = to_double(src[i]);
        }
        return out;
    }
}

#define ESSIG_INSTANTIATE(T)                                                             \
    template class TruncatedTensor<T>;                                                   \
    template TruncatedTensor<T> mul(const TruncatedTensor<T>&, const TruncatedTensor<T>&); \
    template TruncatedTensor<T> inverse(const TruncatedTensor<T>&);                      \
    template TruncatedTensor<T> exp_increment(std::span<const T>, int);                  \
    template void extend_by_segment(TruncatedTensor<T>&, std::span<const T>);            \
    template std::vector<T> project_level(const TruncatedTensor<T>&, int);               \
    template TruncatedTensor<T> dilate(const T&, const TruncatedTensor<T>&);             \
    template TruncatedTensor<T> truncate(const TruncatedTensor<T>&, int);                \
    template TruncatedTensor<T> rotate(const Matrix2<T>&, const TruncatedTensor<T>&);    \
    template double homogeneous_norm(const TruncatedTensor<T>&);                         \
    template TruncatedTensor<double> to_float(const TruncatedTensor<T>&);

ESSIG_INSTANTIATE(Rational)
ESSIG_INSTANTIATE(double)

#undef ESSIG_INSTANTIATE

}  // namespace essig
