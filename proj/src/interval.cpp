#include "essig/interval.hpp"

#include "essig/errors.hpp"

namespace essig::interval {

UnivarPoly closed_form_level(int n) {
    if (n < 1) throw UsageError("closed form is defined for n >= 1");
    const UnivarPoly x = UnivarPoly::x();
    const UnivarPoly one(1);
    const UnivarPoly boundary = one - x * x;
    const auto k = static_cast<unsigned>(n - 1);
    const UnivarPoly bracket = pow(one - x, k) - pow(Rational(-1) * one - x, k);
    return Rational(1) / (2 * factorial(static_cast<unsigned>(n))) * (boundary * bracket);
}

std::vector<UnivarPoly> ode_recursion(int truncation) {
    if (truncation < 0) throw UsageError("truncation must be non-negative");
    std::vector<UnivarPoly> levels;
    levels.emplace_back(1);
    if (truncation >= 1) levels.emplace_back();
    for (int n = 2; n <= truncation; ++n) {
        const UnivarPoly rhs = Rational(-1) * levels[static_cast<std::size_t>(n - 2)] -
                               Rational(2) * derivative(levels[static_cast<std::size_t>(n - 1)]);
        UnivarPoly particular = antiderivative(antiderivative(rhs));
        // Affine a + b x fixing particular(+-1) to zero.
        const Rational at_plus = particular(Rational(1));
        const Rational at_minus = particular(Rational(-1));
        const Rational a = -(at_plus + at_minus) / 2;
        const Rational b = -(at_plus - at_minus) / 2;
        levels.push_back(particular + UnivarPoly({a, b}));
    }
    return levels;
}

UnivarPoly two_point_exit_level(int n) {
    if (n < 0) throw UsageError("level must be non-negative");
    const UnivarPoly x = UnivarPoly::x();
    const UnivarPoly one(1);
    const Rational half(1, 2);
    const UnivarPoly hit_plus = half * (x + one);
    const UnivarPoly hit_minus = half * (one - x);
    const auto k = static_cast<unsigned>(n);
    const UnivarPoly moment = pow(one - x, k) * hit_plus + pow(Rational(-1) * one - x, k) * hit_minus;
    return Rational(1) / factorial(k) * moment;
}

Rational transport_level(const std::vector<UnivarPoly>& levels, int n, const Rational& center,
                         const Rational& radius, const Rational& x) {
    if (n < 0 || n >= static_cast<int>(levels.size())) throw UsageError("level out of range");
    if (radius <= 0) throw UsageError("radius must be positive");
    const Rational u = (x - center) / radius;
    if (abs(u) > 1) throw DomainError("starting point lies outside the interval");
    Rational scale(1);
    for (int i = 0; i < n; ++i) scale *= radius;
    return scale * levels[static_cast<std::size_t>(n)](u);
}

}  // namespace essig::interval
