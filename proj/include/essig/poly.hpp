#pragma once

#include "essig/errors.hpp"
#include "essig/rational.hpp"

#include <compare>
#include <map>
#include <vector>

namespace essig {

/// Exponent pair (e1, e2) for z1^e1 z2^e2, ordered by total degree then e1.
struct Monomial {
    int e1 = 0;
    int e2 = 0;

    int degree() const { return e1 + e2; }

    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
        if (auto c = a.degree() <=> b.degree(); c != 0) return c;
        if (auto c = a.e1 <=> b.e1; c != 0) return c;
        return a.e2 <=> b.e2;
    }
};

/// Exact polynomial in (z1, z2) over the rationals. Stores only nonzero terms.
class BivarPoly {
public:
    using Terms = std::map<Monomial, Rational>;

    BivarPoly() = default;
    BivarPoly(const Rational& constant);  // NOLINT(google-explicit-constructor)
    BivarPoly(int constant) : BivarPoly(Rational(constant)) {}  // NOLINT(google-explicit-constructor)

    static BivarPoly monomial(int e1, int e2, const Rational& c = 1);
    static BivarPoly z1() { return monomial(1, 0); }
    static BivarPoly z2() { return monomial(0, 1); }
    /// 1 - z1^2 - z2^2, the defining function of the unit disk.
    static BivarPoly disk_factor();

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    /// Total degree; -1 for the zero polynomial.
    int degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.degree(); }
    Rational coeff(int e1, int e2) const;

    BivarPoly& operator+=(const BivarPoly& other);
    BivarPoly& operator-=(const BivarPoly& other);
    BivarPoly& operator*=(const Rational& c);

    friend BivarPoly operator+(BivarPoly a, const BivarPoly& b) { return a += b; }
    friend BivarPoly operator-(BivarPoly a, const BivarPoly& b) { return a -= b; }
    friend BivarPoly operator-(BivarPoly a) { return a *= Rational(-1); }
    friend BivarPoly operator*(const BivarPoly& a, const BivarPoly& b);
    friend BivarPoly operator*(const Rational& c, BivarPoly a) { return a *= c; }

    friend bool operator==(const BivarPoly& a, const BivarPoly& b) { return a.terms_ == b.terms_; }

    /// Add c * z1^e1 z2^e2, dropping the term if it cancels.
    void add_term(Monomial m, const Rational& c);

private:
    Terms terms_;
};

BivarPoly partial(const BivarPoly& p, int axis);
BivarPoly laplacian(const BivarPoly& p);

/// Homogeneous components keyed by degree; their sum is p.
std::map<int, BivarPoly> homogeneous_parts(const BivarPoly& p);

struct DivisionResult {
    BivarPoly quotient;
    BivarPoly remainder;
};

/// Multivariate division with respect to lex order (z1 > z2). With a single
/// divisor the remainder is zero exactly when q divides p.
DivisionResult divide(const BivarPoly& p, const BivarPoly& q);

class NonExactDivision : public std::domain_error {
public:
    explicit NonExactDivision(BivarPoly remainder);
    const BivarPoly& remainder() const { return remainder_; }

private:
    BivarPoly remainder_;
};

/// Returns r with p = q * r, or throws NonExactDivision carrying the remainder.
BivarPoly divide_exact(const BivarPoly& p, const BivarPoly& q);

template <Scalar T>
T evaluate(const BivarPoly& p, const T& z1, const T& z2) {
    T acc(0);
    for (const auto& [m, c] : p.terms()) {
        T term = scalar_cast<T>(c);
        for (int i = 0; i < m.e1; ++i) term *= z1;
        for (int j = 0; j < m.e2; ++j) term *= z2;
        acc += term;
    }
    return acc;
}

/// Human-readable form, e.g. "1/4 - 1/4*z1^2 - 1/4*z2^2".
std::string to_string(const BivarPoly& p);

}  // namespace essig
