#include "essig/rational.hpp"

#include "essig/errors.hpp"

#include <cctype>
#include <charconv>

namespace essig {

std::string_view to_string(ScalarKind kind) {
    return kind == ScalarKind::rational ? "rational" : "float64";
}

ScalarKind parse_scalar_kind(std::string_view text) {
    if (text == "rational") return ScalarKind::rational;
    if (text == "float64") return ScalarKind::float64;
    throw ParseError("unknown scalar kind '" + std::string(text) + "'");
}

std::string to_string(const Rational& q) {
    Rational r = q;
    r.canonicalize();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) throw ParseError("malformed rational '" + std::string(whole) + "'");
    mpz_class z(std::string(s), 10);
    return negative ? mpz_class(-z) : z;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    const std::string_view whole = text;
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw ParseError("empty rational literal");

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        mpz_class num = parse_integer(text.substr(0, slash), whole);
        mpz_class den = parse_integer(text.substr(slash + 1), whole);
        if (den == 0) throw ParseError("zero denominator in '" + std::string(whole) + "'");
        Rational q(num, den);
        q.canonicalize();
        return q;
    }

    bool negative = false;
    if (text.front() == '-' || text.front() == '+') {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view exp_text = text.substr(e + 1);
        if (!exp_text.empty() && exp_text.front() == '+') exp_text.remove_prefix(1);
        auto [ptr, ec] = std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exponent);
        if (ec != std::errc{} || ptr != exp_text.data() + exp_text.size())
            throw ParseError("malformed exponent in '" + std::string(whole) + "'");
        text = text.substr(0, e);
    }
    std::string digits;
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view int_part = text.substr(0, dot);
        std::string_view frac_part = text.substr(dot + 1);
        if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)) ||
            (int_part.empty() && frac_part.empty()))
            throw ParseError("malformed rational '" + std::string(whole) + "'");
        digits = std::string(int_part) + std::string(frac_part);
        exponent -= static_cast<long>(frac_part.size());
    } else {
        if (!all_digits(text)) throw ParseError("malformed rational '" + std::string(whole) + "'");
        digits = std::string(text);
    }

    mpz_class mantissa(digits, 10);
    if (negative) mantissa = -mantissa;
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    Rational q = exponent < 0 ? Rational(mantissa, scale) : Rational(mantissa * scale);
    q.canonicalize();
    return q;
}

Rational factorial(unsigned n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(f);
}

}  // namespace essig
