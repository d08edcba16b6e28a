#include "helpers.hpp"

#include "essig/errors.hpp"
#include "essig/lattice.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace essig;
using namespace essig::lattice;
using Q = Rational;

namespace {

std::shared_ptr<const LatticeDomain> make(int d, std::vector<Point> pts) {
    return std::make_shared<const LatticeDomain>(d, std::move(pts));
}

std::shared_ptr<const LatticeDomain> block(int lo, int hi) {
    std::vector<Point> pts;
    for (int i = lo; i <= hi; ++i)
        for (int j = lo; j <= hi; ++j) pts.push_back({i, j});
    return make(2, pts);
}

// 1-D gambler's ruin on {1, .., m-1} with exits at 0 and m: E[(S - x)^n] / n!.
Q ruin_level(int m, int x, int n) {
    const Q p_up(x, m);
    Q up = 1, down = 1;
    for (int k = 0; k < n; ++k) {
        up *= m - x;
        down *= -x;
    }
    return (p_up * up + (1 - p_up) * down) / factorial(static_cast<unsigned>(n));
}

}  // namespace

TEST_CASE("domain construction") {
    const auto dom = make(2, {{0, 0}, {1, 0}});
    CHECK(dom->interior_size() == 2);
    CHECK(dom->closure_size() == 8);
    CHECK(dom->find({2, 0}).has_value());
    CHECK_FALSE(dom->is_interior(*dom->find({2, 0})));
    CHECK_FALSE(dom->find({2, 2}).has_value());
    for (std::size_t i = 0; i < dom->interior_size(); ++i) CHECK(dom->neighbors(i).size() == 4);
    const auto nb = dom->neighbors(*dom->find({0, 0}));
    CHECK(dom->point(nb[0]) == Point{1, 0});
    CHECK(dom->point(nb[1]) == Point{-1, 0});
    CHECK(dom->point(nb[2]) == Point{0, 1});
    CHECK(dom->point(nb[3]) == Point{0, -1});
    CHECK_THROWS_AS(make(2, {}), UsageError);
    CHECK_THROWS_AS(make(2, {{0, 0}, {0, 0}}), UsageError);
    CHECK_THROWS_AS(make(2, {{0}}), UsageError);
    CHECK(point_key({1, -2}) == "1,-2");
}

TEST_CASE("domain file") {
    std::istringstream in("# comment\n2 3\n0 0\n\n1 0\n");
    const auto parsed = read_domain(in);
    CHECK(parsed.truncation == 3);
    CHECK(parsed.domain->interior_size() == 2);
    std::istringstream bad("2 3\n0\n");
    CHECK_THROWS_AS(read_domain(bad), ParseError);
    std::istringstream empty("");
    CHECK_THROWS_AS(read_domain(empty), ParseError);
    std::istringstream junk("2 3\n0 0 x\n");
    CHECK_THROWS_AS(read_domain(junk), ParseError);
    std::istringstream none("2 3\n");
    CHECK_THROWS_AS(read_domain(none), ParseError);
}

TEST_CASE("discrete laplacian") {
    const auto dom = make(1, {{0}});
    std::vector<Q> constant(dom->closure_size(), Q(5));
    CHECK(discrete_laplacian<Q>(*dom, constant, 0) == 0);
    std::vector<Q> spike(dom->closure_size(), Q(0));
    spike[0] = Q(7, 3);
    CHECK(discrete_laplacian<Q>(*dom, spike, 0) == Q(-7, 3));

    const auto sq = block(0, 2);
    std::mt19937_64 rng(31);
    std::vector<Q> values(sq->closure_size());
    for (auto& v : values) v = essig::test::small_rational(rng);
    for (std::size_t x = 0; x < sq->interior_size(); ++x) {
        const auto& p = sq->point(x);
        Q sum = 0;
        for (const Point& q : std::vector<Point>{{p[0] + 1, p[1]}, {p[0] - 1, p[1]}, {p[0], p[1] + 1}, {p[0], p[1] - 1}})
            sum += values[*sq->find(q)];
        CHECK(discrete_laplacian<Q>(*sq, values, x) == sum / 4 - values[x]);
    }
}

TEST_CASE("single-point 1-D domain") {
    const auto dom = make(1, {{0}});
    const auto field = expected_signature_lattice<Q>(dom, 4);
    const auto& phi = field.at(Point{0});
    CHECK(phi[Word::parse("")] == 1);
    CHECK(phi[Word::parse("1")] == 0);
    CHECK(phi[Word::parse("11")] == Q(1, 2));
    CHECK(phi[Word::parse("111")] == 0);
    CHECK(phi[Word::parse("1111")] == Q(1, 24));
    CHECK(field.at(Point{1}) == TruncatedTensor<Q>::unit(1, 4));
    CHECK(field.at(Point{-1}) == TruncatedTensor<Q>::unit(1, 4));
    LatticeField<Q> lower(dom, 2);
    CHECK(rhs_level(2, lower, 0) == std::vector<Q>{Q(1, 2)});
}

TEST_CASE("gambler's ruin oracle") {
    for (int m : {4, 6}) {
        std::vector<Point> pts;
        for (int x = 1; x < m; ++x) pts.push_back({x});
        const auto field = expected_signature_lattice<Q>(make(1, pts), 6);
        for (int x = 1; x < m; ++x)
            for (int n = 0; n <= 6; ++n) CHECK(field.at(Point{x}).level(n)[0] == ruin_level(m, x, n));
    }
    const auto field = expected_signature_lattice<Q>(make(1, {{1}, {2}, {3}}), 2);
    CHECK(field.at(Point{2})[Word::parse("11")] == 2);
}

TEST_CASE("rhs with only the top level surviving") {
    const auto dom = make(2, {{0, 0}});
    LatticeField<Q> field(dom, 5);
    for (int n = 2; n <= 5; ++n) {
        const auto g = rhs_level(n, field, 0);
        TruncatedTensor<Q> expected(2, n);
        for (int axis = 0; axis < 2; ++axis)
            for (int sign : {1, -1}) {
                std::vector<Q> e(2, Q(0));
                e[static_cast<std::size_t>(axis)] = sign;
                expected += scale(Q(1, 4), exp_increment<Q>(e, n));
            }
        CHECK(g == project_level(expected, n));
    }
}

TEST_CASE("fixed-point identity and exact re-substitution") {
    const auto dom = make(2, {{0, 0}, {1, 0}, {2, 0}, {0, 1}, {0, 2}, {1, 1}});
    const auto field = expected_signature_lattice<Q>(dom, 4);
    CHECK(fixed_point_defect(field) == 0);
    for (std::size_t i = dom->interior_size(); i < dom->closure_size(); ++i)
        CHECK(field.at(i) == TruncatedTensor<Q>::unit(2, 4));
    for (std::size_t i = 0; i < dom->closure_size(); ++i) {
        CHECK(field.at(i).level(0)[0] == 1);
        for (const auto& c : field.at(i).level(1)) CHECK(c == 0);
    }
    // Solving one level again from the lower ones reproduces it, and the residual is zero.
    const DirichletSolver<Q> solver(dom);
    for (int n = 2; n <= 4; ++n) {
        const auto sol = solve_level(n, field, solver);
        for (std::size_t x = 0; x < dom->interior_size(); ++x) {
            CHECK(sol[x] == project_level(field.at(x), n));
            const auto g = rhs_level(n, field, x);
            for (std::size_t w = 0; w < g.size(); ++w) {
                std::vector<Q> values;
                for (std::size_t i = 0; i < dom->closure_size(); ++i) values.push_back(field.at(i).level(n)[w]);
                CHECK(discrete_laplacian<Q>(*dom, values, x) == -g[w]);
            }
        }
    }
    const auto square = expected_signature_lattice<Q>(block(1, 5), 4);
    CHECK(fixed_point_defect(square) == 0);
}

TEST_CASE("lattice symmetry") {
    const auto dom = block(-2, 2);
    const auto field = expected_signature_lattice<Q>(dom, 4);
    const auto r = quarter_turn<Q>();
    const Matrix2<Q> flip{{{Q(-1), Q(0)}, {Q(0), Q(1)}}};
    for (std::size_t i = 0; i < dom->closure_size(); ++i) {
        const auto& p = dom->point(i);
        CHECK(field.at(Point{-p[1], p[0]}) == rotate(r, field.at(i)));
        CHECK(field.at(Point{-p[0], p[1]}) == rotate(flip, field.at(i)));
    }
}

TEST_CASE("float solve agrees with exact solve") {
    const auto dom = block(0, 3);
    const auto exact = expected_signature_lattice<Q>(dom, 4);
    const auto approx = expected_signature_lattice<double>(dom, 4);
    double worst = 0.0;
    for (std::size_t i = 0; i < dom->closure_size(); ++i)
        for (int k = 0; k <= 4; ++k)
            for (std::size_t w = 0; w < exact.at(i).level(k).size(); ++w)
                worst = std::max(worst, std::abs(approx.at(i).level(k)[w] - exact.at(i).level(k)[w].get_d()));
    CHECK(worst <= 1e-9);
    CHECK(fixed_point_defect(approx) <= 1e-9);
}

TEST_CASE("representation estimate") {
    const auto single = make(1, {{0}});
    const std::vector<std::vector<double>> half{{0.5}};
    const auto est = representation_estimate(*single, half, 0, 100, 7);
    CHECK(est.mean[0] == 0.5);
    CHECK(est.standard_error[0] == 0.0);
    const std::vector<std::vector<double>> zero{{0.0}};
    CHECK(representation_estimate(*single, zero, 0, 10, 7).mean[0] == 0.0);

    const auto line = make(1, {{1}, {2}, {3}});
    const auto field = expected_signature_lattice<Q>(line, 4);
    for (int n = 2; n <= 4; ++n) {
        std::vector<std::vector<double>> g;
        for (std::size_t x = 0; x < 3; ++x) g.push_back({rhs_level(n, field, x)[0].get_d()});
        for (std::size_t x = 0; x < 3; ++x) {
            const auto e = representation_estimate(*line, g, x, 20000, 11);
            CHECK(std::abs(e.mean[0] - field.at(x).level(n)[0].get_d()) <= 3.0 * e.standard_error[0]);
        }
    }
    // Fixed seed gives identical estimates.
    const std::vector<std::vector<double>> g{{1.0}, {2.0}, {3.0}};
    CHECK(representation_estimate(*line, g, 1, 500, 3).mean == representation_estimate(*line, g, 1, 500, 3).mean);
    CHECK_THROWS_AS(representation_estimate(*line, g, 3, 500, 3), UsageError);
}
