#pragma once

#include "essig/rational.hpp"

#include <vector>

namespace essig {

/// Dense polynomial in x over the rationals; coefficient i multiplies x^i.
/// Trailing zeros are always stripped, so the zero polynomial is empty.
class UnivarPoly {
public:
    UnivarPoly() = default;
    explicit UnivarPoly(std::vector<Rational> coeffs);
    UnivarPoly(const Rational& constant);  // NOLINT(google-explicit-constructor)
    UnivarPoly(int constant) : UnivarPoly(Rational(constant)) {}  // NOLINT(google-explicit-constructor)

    static UnivarPoly x() { return UnivarPoly({Rational(0), Rational(1)}); }

    const std::vector<Rational>& coeffs() const { return coeffs_; }
    Rational coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }

    UnivarPoly& operator+=(const UnivarPoly& other);
    UnivarPoly& operator-=(const UnivarPoly& other);
    UnivarPoly& operator*=(const Rational& c);

    friend UnivarPoly operator+(UnivarPoly a, const UnivarPoly& b) { return a += b; }
    friend UnivarPoly operator-(UnivarPoly a, const UnivarPoly& b) { return a -= b; }
    friend UnivarPoly operator*(const UnivarPoly& a, const UnivarPoly& b);
    friend UnivarPoly operator*(const Rational& c, UnivarPoly a) { return a *= c; }
    friend bool operator==(const UnivarPoly&, const UnivarPoly&) = default;

    template <Scalar T>
    T operator()(const T& x) const {
        T acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + scalar_cast<T>(*it);
        return acc;
    }

private:
    void strip();
    std::vector<Rational> coeffs_;
};

UnivarPoly derivative(const UnivarPoly& p);
/// Antiderivative with zero constant term.
UnivarPoly antiderivative(const UnivarPoly& p);
UnivarPoly pow(const UnivarPoly& p, unsigned n);

}  // namespace essig
