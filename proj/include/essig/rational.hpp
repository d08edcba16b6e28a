#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <type_traits>

namespace essig {

using Rational = mpq_class;

enum class ScalarKind { rational, float64 };

std::string_view to_string(ScalarKind kind);
ScalarKind parse_scalar_kind(std::string_view text);

/// Lowest-terms "p/q" with q > 0; integers keep the "/1" suffix.
std::string to_string(const Rational& q);

/// Accepts "p/q", plain integers and decimal literals ("-0.25", "3e-2").
/// Decimal literals are converted exactly, so "0.3" becomes 3/10.
Rational parse_rational(std::string_view text);

inline double to_double(const Rational& q) { return q.get_d(); }

Rational factorial(unsigned n);

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
    static constexpr ScalarKind kind = ScalarKind::rational;
    static Rational from_rational(const Rational& q) { return q; }
};

template <>
struct ScalarTraits<double> {
    static constexpr ScalarKind kind = ScalarKind::float64;
    static double from_rational(const Rational& q) { return q.get_d(); }
};

template <class T>
concept Scalar = std::is_same_v<T, Rational> || std::is_same_v<T, double>;

template <Scalar T>
T scalar_cast(const Rational& q) {
    return ScalarTraits<T>::from_rational(q);
}

}  // namespace essig
