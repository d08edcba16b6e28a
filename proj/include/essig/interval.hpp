#pragma once

#include "essig/univar.hpp"

#include <vector>

namespace essig::interval {

// One-dimensional Brownian motion on [-1, 1]. The signature of a scalar path
// is determined by its increment, so each level is a single polynomial in
// the starting point x (the coefficient of e1^{(x)n}).

/// (1 / (2 n!)) (1 - x^2) ((1 - x)^(n-1) - (-1 - x)^(n-1)); n >= 1.
UnivarPoly closed_form_level(int n);

/// Levels 0..N from rho_n'' = -rho_{n-2} - 2 rho_{n-1}', rho_n(+-1) = 0,
/// rho_0 = 1, rho_1 = 0.
std::vector<UnivarPoly> ode_recursion(int truncation);

/// E^x[(B_tau - x)^n / n!] summed over the two exit points, weighted by the
/// hitting probabilities (x+1)/2 and (1-x)/2.
UnivarPoly two_point_exit_level(int n);

/// Level n for the interval [c - r, c + r] started at x: r^n rho_n((x - c)/r).
Rational transport_level(const std::vector<UnivarPoly>& levels, int n, const Rational& center,
                         const Rational& radius, const Rational& x);

}  // namespace essig::interval
