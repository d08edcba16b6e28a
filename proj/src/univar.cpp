#include "essig/univar.hpp"

#include <algorithm>

namespace essig {

UnivarPoly::UnivarPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { strip(); }

UnivarPoly::UnivarPoly(const Rational& constant) {
    if (constant != 0) coeffs_.push_back(constant);
}

void UnivarPoly::strip() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

UnivarPoly& UnivarPoly::operator+=(const UnivarPoly& other) {
    if (coeffs_.size() < other.coeffs_.size()) coeffs_.resize(other.coeffs_.size());
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
    strip();
    return *this;
}

UnivarPoly& UnivarPoly::operator-=(const UnivarPoly& other) {
    if (coeffs_.size() < other.coeffs_.size()) coeffs_.resize(other.coeffs_.size());
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
    strip();
    return *this;
}

UnivarPoly& UnivarPoly::operator*=(const Rational& c) {
    for (auto& a : coeffs_) a *= c;
    strip();
    return *this;
}

UnivarPoly operator*(const UnivarPoly& a, const UnivarPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return UnivarPoly(std::move(out));
}

UnivarPoly derivative(const UnivarPoly& p) {
    const auto& c = p.coeffs();
    if (c.size() <= 1) return {};
    std::vector<Rational> out(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) out[i - 1] = c[i] * static_cast<long>(i);
    return UnivarPoly(std::move(out));
}

UnivarPoly antiderivative(const UnivarPoly& p) {
    const auto& c = p.coeffs();
    if (c.empty()) return {};
    std::vector<Rational> out(c.size() + 1);
    for (std::size_t i = 0; i < c.size(); ++i) out[i + 1] = c[i] / Rational(static_cast<long>(i + 1));
    return UnivarPoly(std::move(out));
}

UnivarPoly pow(const UnivarPoly& p, unsigned n) {
    UnivarPoly out(1);
    for (unsigned i = 0; i < n; ++i) out = out * p;
    return out;
}

}  // namespace essig
