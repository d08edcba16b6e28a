#pragma once

#include "essig/disk.hpp"
#include "essig/lattice.hpp"
#include "essig/mc.hpp"
#include "essig/tensor.hpp"
#include "essig/univar.hpp"

#include <json.hpp>

#include <iosfwd>
#include <vector>

namespace essig::io {

using json = nlohmann::json;

// Tensor schema:
//   {"dimension":d,"truncation":N,"scalar":"rational"|"float64",
//    "levels":[{"level":k,"coeffs":{"<word>":<value>}}]}
// Rationals are "p/q" strings, floats are numbers; zero coefficients are omitted.

template <Scalar T>
json to_json(const TruncatedTensor<T>& t);
AnyTensor tensor_from_json(const json& j);

/// [{"e1":i,"e2":j,"c":"p/q"}, ...] sorted by (total degree, e1).
json to_json(const BivarPoly& p);
BivarPoly poly_from_json(const json& j);

/// Tensor schema with monomial lists as coefficient values.
json to_json(const PolyTensor& phi);
PolyTensor polytensor_from_json(const json& j);

/// {"levels":[{"level":n,"coeffs":["p/q", ...]}]}, coefficient i multiplying x^i.
json to_json(const std::vector<UnivarPoly>& levels);

/// {"dimension","truncation","scalar","interior":[keys],"field":{"x1,x2":tensor}}
template <Scalar T>
json to_json(const lattice::LatticeField<T>& field);

json to_json(const mc::McEstimate& est);

// CSV rows: "level,word,value" for tensors and "level,word,e1,e2,coeff" for
// polynomial tensors, zero entries omitted.
template <Scalar T>
void write_csv(std::ostream& out, const TruncatedTensor<T>& t);
void write_csv(std::ostream& out, const PolyTensor& phi);

}  // namespace essig::io
