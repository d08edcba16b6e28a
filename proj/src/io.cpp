#include "essig/io.hpp"

#include "essig/errors.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>

namespace essig::io {

namespace {

template <Scalar T>
json scalar_json(const T& x) {
    if constexpr (std::is_same_v<T, Rational>)
        return to_string(x);
    else
        return x;
}

std::string float_text(double x) {
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

template <Scalar T>
std::string scalar_text(const T& x) {
    if constexpr (std::is_same_v<T, Rational>)
        return to_string(x);
    else
        return float_text(x);
}

template <Scalar T>
TruncatedTensor<T> tensor_body_from_json(const json& j, int d, int depth) {
    TruncatedTensor<T> t(d, depth);
    for (const auto& lvl : j.at("levels")) {
        const int k = lvl.at("level").get<int>();
        if (k < 0 || k > depth) throw ParseError("tensor level " + std::to_string(k) + " out of range");
        for (const auto& [key, value] : lvl.at("coeffs").items()) {
            const Word w = Word::parse(key);
            if (static_cast<int>(w.size()) != k) throw ParseError("word '" + key + "' listed under wrong level");
            if constexpr (std::is_same_v<T, Rational>)
                t[w] = parse_rational(value.template get<std::string>());
            else
                t[w] = value.template get<double>();
        }
    }
    return t;
}

}  // namespace

template <Scalar T>
json to_json(const TruncatedTensor<T>& t) {
    json levels = json::array();
    for (int k = 0; k <= t.truncation(); ++k) {
        json coeffs = json::object();
        auto lvl = t.level(k);
        for (std::size_t i = 0; i < lvl.size(); ++i) {
            if (lvl[i] == 0) continue;
            coeffs[Word::from_index(i, k, t.dimension()).str()] = scalar_json(lvl[i]);
        }
        levels.push_back({{"level", k}, {"coeffs", std::move(coeffs)}});
    }
    return {{"dimension", t.dimension()},
            {"truncation", t.truncation()},
            {"scalar", std::string(to_string(ScalarTraits<T>::kind))},
            {"levels", std::move(levels)}};
}

AnyTensor tensor_from_json(const json& j) {
    try {
        const int d = j.at("dimension").get<int>();
        const int depth = j.at("truncation").get<int>();
        switch (parse_scalar_kind(j.at("scalar").get<std::string>())) {
        case ScalarKind::rational:
            return tensor_body_from_json<Rational>(j, d, depth);
        case ScalarKind::float64:
            return tensor_body_from_json<double>(j, d, depth);
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid tensor JSON: ") + e.what());
    } catch (const UsageError& e) {
        throw ParseError(std::string("invalid tensor JSON: ") + e.what());
    }
    throw ParseError("invalid tensor JSON");
}

json to_json(const BivarPoly& p) {
    json out = json::array();
    for (const auto& [m, c] : p.terms()) out.push_back({{"e1", m.e1}, {"e2", m.e2}, {"c", to_string(c)}});
    return out;
}

BivarPoly poly_from_json(const json& j) {
    BivarPoly p;
    try {
        for (const auto& term : j) {
            const int e1 = term.at("e1").get<int>();
            const int e2 = term.at("e2").get<int>();
            if (e1 < 0 || e2 < 0) throw ParseError("negative exponent in polynomial JSON");
            p.add_term({e1, e2}, parse_rational(term.at("c").get<std::string>()));
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid polynomial JSON: ") + e.what());
    }
    return p;
}

json to_json(const PolyTensor& phi) {
    json levels = json::array();
    for (int k = 0; k <= phi.truncation(); ++k) {
        json coeffs = json::object();
        auto lvl = phi.level(k);
        for (std::size_t i = 0; i < lvl.size(); ++i) {
            if (lvl[i].is_zero()) continue;
            coeffs[Word::from_index(i, k, PolyTensor::dimension).str()] = to_json(lvl[i]);
        }
        levels.push_back({{"level", k}, {"coeffs", std::move(coeffs)}});
    }
    return {{"dimension", PolyTensor::dimension},
            {"truncation", phi.truncation()},
            {"scalar", "rational"},
            {"levels", std::move(levels)}};
}

PolyTensor polytensor_from_json(const json& j) {
    try {
        if (j.at("dimension").get<int>() != PolyTensor::dimension)
            throw ParseError("polynomial tensors are two-dimensional");
        PolyTensor phi(j.at("truncation").get<int>());
        for (const auto& lvl : j.at("levels")) {
            const int k = lvl.at("level").get<int>();
            if (k < 0 || k > phi.truncation()) throw ParseError("tensor level out of range");
            for (const auto& [key, value] : lvl.at("coeffs").items()) {
                const Word w = Word::parse(key);
                if (static_cast<int>(w.size()) != k) throw ParseError("word '" + key + "' listed under wrong level");
                phi[w] = poly_from_json(value);
            }
        }
        return phi;
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid polynomial tensor JSON: ") + e.what());
    }
}

json to_json(const std::vector<UnivarPoly>& levels) {
    json out = json::array();
    for (std::size_t n = 0; n < levels.size(); ++n) {
        json coeffs = json::array();
        for (const auto& c : levels[n].coeffs()) coeffs.push_back(to_string(c));
        out.push_back({{"level", n}, {"coeffs", std::move(coeffs)}});
    }
    return {{"levels", std::move(out)}};
}

template <Scalar T>
json to_json(const lattice::LatticeField<T>& field) {
    const auto& domain = field.domain();
    json interior = json::array();
    json values = json::object();
    for (std::size_t i = 0; i < domain.closure_size(); ++i) {
        const std::string key = lattice::point_key(domain.point(i));
        if (domain.is_interior(i)) interior.push_back(key);
        values[key] = to_json(field.at(i));
    }
    return {{"dimension", domain.dimension()},
            {"truncation", field.truncation()},
            {"scalar", std::string(to_string(ScalarTraits<T>::kind))},
            {"interior", std::move(interior)},
            {"field", std::move(values)}};
}

json to_json(const mc::McEstimate& est) {
    json se = json::object();
    for (int k = 0; k <= est.standard_error.truncation(); ++k) {
        auto lvl = est.standard_error.level(k);
        for (std::size_t i = 0; i < lvl.size(); ++i) se[Word::from_index(i, k, 2).str()] = lvl[i];
    }
    return {{"mean", to_json(est.mean)},
            {"standard_error", std::move(se)},
            {"count", est.count},
            {"seed", est.seed},
            {"dt", est.dt},
            {"max_quadratic_defect", est.max_quadratic_defect}};
}

template <Scalar T>
void write_csv(std::ostream& out, const TruncatedTensor<T>& t) {
    out << "level,word,value\n";
    for (int k = 0; k <= t.truncation(); ++k) {
        auto lvl = t.level(k);
        for (std::size_t i = 0; i < lvl.size(); ++i) {
            if (lvl[i] == 0) continue;
            out << k << ',' << Word::from_index(i, k, t.dimension()).str() << ',' << scalar_text(lvl[i]) << '\n';
        }
    }
}

void write_csv(std::ostream& out, const PolyTensor& phi) {
    out << "level,word,e1,e2,coeff\n";
    for (int k = 0; k <= phi.truncation(); ++k) {
        auto lvl = phi.level(k);
        for (std::size_t i = 0; i < lvl.size(); ++i) {
            const std::string word = Word::from_index(i, k, PolyTensor::dimension).str();
            for (const auto& [m, c] : lvl[i].terms())
                out << k << ',' << word << ',' << m.e1 << ',' << m.e2 << ',' << to_string(c) << '\n';
        }
    }
}

template json to_json(const TruncatedTensor<Rational>&);
template json to_json(const TruncatedTensor<double>&);
template json to_json(const lattice::LatticeField<Rational>&);
template json to_json(const lattice::LatticeField<double>&);
template void write_csv(std::ostream&, const TruncatedTensor<Rational>&);
template void write_csv(std::ostream&, const TruncatedTensor<double>&);

}  // namespace essig::io
