#include "essig/poly.hpp"

#include <sstream>

namespace essig {

BivarPoly::BivarPoly(const Rational& constant) {
    if (constant != 0) terms_.emplace(Monomial{0, 0}, constant);
}

BivarPoly BivarPoly::monomial(int e1, int e2, const Rational& c) {
    if (e1 < 0 || e2 < 0) throw UsageError("negative exponent");
    BivarPoly p;
    p.add_term({e1, e2}, c);
    return p;
}

BivarPoly BivarPoly::disk_factor() {
    BivarPoly p(1);
    p.add_term({2, 0}, -1);
    p.add_term({0, 2}, -1);
    return p;
}

Rational BivarPoly::coeff(int e1, int e2) const {
    auto it = terms_.find({e1, e2});
    return it == terms_.end() ? Rational(0) : it->second;
}

void BivarPoly::add_term(Monomial m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (inserted) return;
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

BivarPoly& BivarPoly::operator+=(const BivarPoly& other) {
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
}

BivarPoly& BivarPoly::operator-=(const BivarPoly& other) {
    for (const auto& [m, c] : other.terms_) add_term(m, -c);
    return *this;
}

BivarPoly& BivarPoly::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, coef] : terms_) coef *= c;
    return *this;
}

BivarPoly operator*(const BivarPoly& a, const BivarPoly& b) {
    BivarPoly out;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) out.add_term({ma.e1 + mb.e1, ma.e2 + mb.e2}, ca * cb);
    return out;
}

BivarPoly partial(const BivarPoly& p, int axis) {
    if (axis != 1 && axis != 2) throw UsageError("axis must be 1 or 2");
    BivarPoly out;
    for (const auto& [m, c] : p.terms()) {
        const int e = axis == 1 ? m.e1 : m.e2;
        if (e == 0) continue;
        Monomial dm = axis == 1 ? Monomial{m.e1 - 1, m.e2} : Monomial{m.e1, m.e2 - 1};
        out.add_term(dm, c * e);
    }
    return out;
}

BivarPoly laplacian(const BivarPoly& p) {
    return partial(partial(p, 1), 1) + partial(partial(p, 2), 2);
}

std::map<int, BivarPoly> homogeneous_parts(const BivarPoly& p) {
    std::map<int, BivarPoly> parts;
    for (const auto& [m, c] : p.terms()) parts[m.degree()].add_term(m, c);
    return parts;
}

namespace {

// Leading term under lex order with z1 > z2.
std::pair<Monomial, Rational> lex_leading(const BivarPoly& p) {
    auto best = p.terms().begin();
    for (auto it = p.terms().begin(); it != p.terms().end(); ++it) {
        const Monomial& m = it->first;
        const Monomial& b = best->first;
        if (m.e1 > b.e1 || (m.e1 == b.e1 && m.e2 > b.e2)) best = it;
    }
    return *best;
}

}  // namespace

DivisionResult divide(const BivarPoly& p, const BivarPoly& q) {
    if (q.is_zero()) throw UsageError("division by the zero polynomial");
    const auto [lead_m, lead_c] = lex_leading(q);
    DivisionResult result;
    BivarPoly rest = p;
    while (!rest.is_zero()) {
        const auto [m, c] = lex_leading(rest);
        if (m.e1 >= lead_m.e1 && m.e2 >= lead_m.e2) {
            const Rational factor = c / lead_c;
            BivarPoly step = BivarPoly::monomial(m.e1 - lead_m.e1, m.e2 - lead_m.e2, factor);
            result.quotient += step;
            rest -= step * q;
        } else {
            BivarPoly term = BivarPoly::monomial(m.e1, m.e2, c);
            result.remainder += term;
            rest -= term;
        }
    }
    return result;
}

NonExactDivision::NonExactDivision(BivarPoly remainder)
    : std::domain_error("polynomial division leaves remainder " + to_string(remainder)),
      remainder_(std::move(remainder)) {}

BivarPoly divide_exact(const BivarPoly& p, const BivarPoly& q) {
    auto [quotient, remainder] = divide(p, q);
    if (!remainder.is_zero()) throw NonExactDivision(std::move(remainder));
    return quotient;
}

std::string to_string(const BivarPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        Rational mag = abs(c);
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        const bool bare = m.degree() > 0 && mag == 1;
        if (!bare) os << mag.get_str();
        auto power = [&](const char* name, int e, bool& need_star) {
            if (e == 0) return;
            if (need_star) os << "*";
            os << name;
            if (e > 1) os << "^" << e;
            need_star = true;
        };
        bool need_star = !bare;
        power("z1", m.e1, need_star);
        power("z2", m.e2, need_star);
    }
    return os.str();
}

}  // namespace essig
