#include "helpers.hpp"

#include "essig/disk.hpp"
#include "essig/errors.hpp"
#include "essig/interval.hpp"
#include "essig/io.hpp"

#include <doctest.h>

#include <sstream>

using namespace essig;
using io::json;
using Q = Rational;

TEST_CASE("tensor JSON schema") {
    TruncatedTensor<Q> t(2, 2);
    t.level(0)[0] = 1;
    t[Word::parse("12")] = Q(-3) / 6;
    const auto j = io::to_json(t);
    CHECK(j["dimension"] == 2);
    CHECK(j["truncation"] == 2);
    CHECK(j["scalar"] == "rational");
    REQUIRE(j["levels"].size() == 3);
    CHECK(j["levels"][0]["level"] == 0);
    CHECK(j["levels"][0]["coeffs"][""] == "1/1");
    CHECK(j["levels"][1]["coeffs"].empty());
    CHECK(j["levels"][2]["coeffs"].size() == 1);
    CHECK(j["levels"][2]["coeffs"]["12"] == "-1/2");

    const auto f = io::to_json(to_float(t));
    CHECK(f["scalar"] == "float64");
    CHECK(f["levels"][2]["coeffs"]["12"] == -0.5);
}

TEST_CASE("tensor JSON round trip") {
    std::mt19937_64 rng(41);
    const auto t = essig::test::random_tensor(rng, 3, 3);
    const auto back = io::tensor_from_json(io::to_json(t));
    REQUIRE(std::holds_alternative<TruncatedTensor<Q>>(back));
    CHECK(std::get<TruncatedTensor<Q>>(back) == t);
    const auto f = essig::test::random_float_tensor(rng, 2, 3);
    const auto fb = io::tensor_from_json(json::parse(io::to_json(f).dump()));
    REQUIRE(std::holds_alternative<TruncatedTensor<double>>(fb));
    CHECK(std::get<TruncatedTensor<double>>(fb) == f);

    CHECK_THROWS_AS(io::tensor_from_json(json::parse(R"({"dimension":2})")), ParseError);
    CHECK_THROWS_AS(io::tensor_from_json(json::parse(
                        R"({"dimension":2,"truncation":1,"scalar":"rational","levels":[{"level":1,"coeffs":{"12":"1/1"}}]})")),
                    ParseError);
    CHECK_THROWS_AS(io::tensor_from_json(json::parse(
                        R"({"dimension":2,"truncation":1,"scalar":"complex","levels":[]})")),
                    ParseError);
}

TEST_CASE("polynomial JSON ordering") {
    const auto p = BivarPoly::disk_factor() * BivarPoly::z1() + BivarPoly::monomial(0, 1, Q(2, 3));
    const auto j = io::to_json(p);
    REQUIRE(j.is_array());
    int last_deg = -1, last_e1 = -1;
    for (const auto& m : j) {
        const int deg = m["e1"].get<int>() + m["e2"].get<int>();
        CHECK((deg > last_deg || (deg == last_deg && m["e1"].get<int>() > last_e1)));
        last_deg = deg;
        last_e1 = m["e1"].get<int>();
    }
    CHECK(j[0] == json({{"e1", 0}, {"e2", 1}, {"c", "2/3"}}));
    CHECK(io::poly_from_json(j) == p);
    CHECK(io::to_json(BivarPoly()).empty());
}

TEST_CASE("polytensor and interval JSON") {
    const auto phi = expected_signature_disk(4);
    const auto j = io::to_json(phi);
    CHECK(j["dimension"] == 2);
    CHECK(j["scalar"] == "rational");
    CHECK(io::polytensor_from_json(j) == phi);
    CHECK(io::polytensor_from_json(json::parse(j.dump())) == phi);

    const auto levels = interval::ode_recursion(3);
    const auto ij = io::to_json(levels);
    CHECK(ij["levels"][2]["coeffs"] == json({"1/2", "0/1", "-1/2"}));
}

TEST_CASE("csv output") {
    TruncatedTensor<Q> t(2, 2);
    t.level(0)[0] = 1;
    t[Word::parse("21")] = Q(1, 3);
    std::ostringstream os;
    io::write_csv(os, t);
    CHECK(os.str() == "level,word,value\n0,,1/1\n2,21,1/3\n");
    std::ostringstream ps;
    io::write_csv(ps, expected_signature_disk(2));
    CHECK(ps.str().rfind("level,word,e1,e2,coeff\n0,,0,0,1/1\n2,11,0,0,1/4\n", 0) == 0);
}
