#pragma once

#include "essig/poly.hpp"
#include "essig/tensor.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace essig {

/// Truncated tensor over R^2 whose coefficients are polynomials in z.
/// Used for the field z -> Phi(z) on the unit disk.
class PolyTensor {
public:
    static constexpr int dimension = 2;

    explicit PolyTensor(int truncation);

    int truncation() const { return static_cast<int>(levels_.size()) - 1; }

    std::span<const BivarPoly> level(int k) const { return levels_.at(static_cast<std::size_t>(k)); }
    std::span<BivarPoly> level(int k) { return levels_.at(static_cast<std::size_t>(k)); }

    const BivarPoly& operator[](const Word& w) const;
    BivarPoly& operator[](const Word& w);

    friend bool operator==(const PolyTensor&, const PolyTensor&) = default;

private:
    std::vector<std::vector<BivarPoly>> levels_;
};

/// Right-hand side of the level-n Poisson problem:
/// -2 sum_i e_i (x) d rho_{n-1}/dz_i - (sum_i e_i (x) e_i) (x) rho_{n-2}.
/// Needs levels n-1 and n-2 of `phi`; n >= 2.
std::vector<BivarPoly> rhs_level(int n, const PolyTensor& phi);

/// Leading-part system M_n a = b for L(g) = Delta((1 - |z|^2) g) restricted
/// to homogeneous g = sum_j a_j z1^j z2^(n-j).
struct MnSystem {
    int degree = 0;
    std::vector<std::vector<std::int64_t>> matrix;
    std::vector<Rational> rhs;
    std::vector<Rational> solution;
};

/// M_n only (rhs and solution left empty).
MnSystem build_mn(int n);

/// Solves M_n a = b exactly.
MnSystem solve_mn(int n, std::vector<Rational> b);

/// L(g) = Delta((1 - z1^2 - z2^2) g).
BivarPoly disk_operator(const BivarPoly& g);

/// The unique polynomial F with Delta F = f on the unit disk and F = 0 on
/// the unit circle. The result always carries the factor 1 - |z|^2.
BivarPoly poisson_solve_disk(const BivarPoly& f);

/// Phi_D(z) up to level N for the unit disk, exact.
PolyTensor expected_signature_disk(int truncation);

/// Word-wise evaluation of the field at z; |z| <= 1 required (float inputs
/// get a 1e-12 slack). Throws DomainError outside the closed disk.
template <Scalar T>
TruncatedTensor<T> evaluate_phi(const PolyTensor& phi, const T& z1, const T& z2);

/// Expected signature for the disk of radius r centred at c, started at z:
/// dilate(r, Phi((z - c)/r)).
template <Scalar T>
TruncatedTensor<T> transport(const PolyTensor& phi, const std::array<T, 2>& center, const T& radius,
                             const std::array<T, 2>& z);

/// Level-n residual Delta rho_n + 2 sum_i e_i (x) d rho_{n-1}/dz_i
/// + (sum_i e_i (x) e_i) (x) rho_{n-2}, one polynomial per word.
std::vector<BivarPoly> pde_residual(const PolyTensor& phi, int n);

/// True iff pde_residual(phi, n) vanishes identically.
bool residual_check(const PolyTensor& phi, int n);

/// True iff every level-n coefficient is divisible by 1 - |z|^2 with
/// quotient degree at most n - 2.
bool boundary_factor_check(const PolyTensor& phi, int n);

extern template TruncatedTensor<Rational> evaluate_phi(const PolyTensor&, const Rational&, const Rational&);
extern template TruncatedTensor<double> evaluate_phi(const PolyTensor&, const double&, const double&);
extern template TruncatedTensor<Rational> transport(const PolyTensor&, const std::array<Rational, 2>&,
                                                    const Rational&, const std::array<Rational, 2>&);
extern template TruncatedTensor<double> transport(const PolyTensor&, const std::array<double, 2>&, const double&,
                                                  const std::array<double, 2>&);

}  // namespace essig
