#include "helpers.hpp"

#include "essig/checks.hpp"
#include "essig/disk.hpp"
#include "essig/errors.hpp"
#include "essig/mc.hpp"
#include "essig/random.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace essig;
using namespace essig::mc;
using Q = Rational;
using TD = TruncatedTensor<double>;

namespace {

double max_abs_diff(const TD& a, const TD& b) {
    double m = 0.0;
    for (int k = 0; k <= a.truncation(); ++k)
        for (std::size_t i = 0; i < a.level(k).size(); ++i) m = std::max(m, std::abs(a.level(k)[i] - b.level(k)[i]));
    return m;
}

PiecewisePath random_path(std::mt19937_64& rng, std::size_t segments) {
    std::normal_distribution<double> step(0.0, 0.3);
    PiecewisePath path;
    double x[2] = {0.0, 0.0};
    path.push_back(0.0, x);
    for (std::size_t s = 1; s <= segments; ++s) {
        x[0] += step(rng);
        x[1] += step(rng);
        path.push_back(static_cast<double>(s), x);
    }
    return path;
}

PiecewisePath sub_path(const PiecewisePath& p, std::size_t from, std::size_t to) {
    PiecewisePath out;
    for (std::size_t i = from; i <= to; ++i) out.push_back(p.times[i], p.point(i));
    return out;
}

}  // namespace

TEST_CASE("sample_bm_exit") {
    auto rng = make_stream(1, 0);
    const Disk unit;
    const auto on_edge = sample_bm_exit({1.0, 0.0}, unit, 1e-3, rng);
    CHECK(on_edge.size() == 1);
    CHECK(on_edge.ends_on_boundary);

    const Disk shifted{{1.0, -2.0}, 0.5};
    for (int i = 0; i < 50; ++i) {
        const auto path = sample_bm_exit({1.1, -2.1}, shifted, 1e-3, rng);
        REQUIRE(path.size() >= 2);
        CHECK(path.ends_on_boundary);
        const auto end = path.point(path.size() - 1);
        CHECK(std::abs(std::hypot(end[0] - 1.0, end[1] + 2.0) - 0.5) <= 1e-12);
        for (std::size_t j = 1; j < path.size(); ++j) CHECK(path.times[j] > path.times[j - 1]);
        for (std::size_t j = 0; j + 1 < path.size(); ++j) {
            const auto p = path.point(j);
            CHECK(std::hypot(p[0] - 1.0, p[1] + 2.0) <= 0.5 + 1e-12);
        }
    }
    CHECK_THROWS_AS(sample_bm_exit({2.0, 0.0}, unit, 1e-3, rng), DomainError);
    CHECK_THROWS_AS(sample_bm_exit({0.0, 0.0}, unit, 0.0, rng), UsageError);
}

TEST_CASE("half squared exit distance per path") {
    auto rng = make_stream(2, 0);
    const Disk unit;
    for (int i = 0; i < 100; ++i) {
        const auto path = sample_bm_exit({0.0, 0.0}, unit, 1e-3, rng);
        const auto sig = signature_of_path(path, 2);
        CHECK(std::abs(sig[Word::parse("11")] + sig[Word::parse("22")] - 0.5) <= 1e-6);
    }
}

TEST_CASE("signature of simple paths") {
    PiecewisePath seg;
    const double a[2] = {0.0, 0.0}, b[2] = {0.7, -0.2};
    seg.push_back(0.0, a);
    seg.push_back(1.0, b);
    const std::vector<double> v{0.7, -0.2};
    CHECK(max_abs_diff(signature_of_path(seg, 4), exp_increment<double>(v, 4)) <= 1e-15);

    PiecewisePath single;
    single.push_back(0.0, a);
    CHECK(signature_of_path(single, 3) == TD::unit(2, 3));

    // Unit square traversed counter-clockwise.
    const std::vector<std::vector<Q>> square{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 0}};
    const auto s = signature_of_points<Q>(square, 2);
    CHECK(s[Word::parse("12")] == 1);
    CHECK(s[Word::parse("21")] == -1);
    CHECK(s[Word::parse("12")] - s[Word::parse("21")] == 2);
    CHECK(s[Word::parse("1")] == 0);
    CHECK(s[Word::parse("11")] == 0);

    CHECK_THROWS_AS(signature_of_path(PiecewisePath{}, 2), UsageError);
    PiecewisePath bad;
    bad.push_back(1.0, a);
    CHECK_THROWS_AS(bad.push_back(1.0, b), UsageError);
}

TEST_CASE("Chen identity and shuffles on sampled paths") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        const auto path = random_path(rng, 40);
        const auto whole = signature_of_path(path, 5);
        CHECK(checks::shuffle_defect(whole) <= 1e-10);
        for (std::size_t split : {std::size_t{1}, std::size_t{17}, std::size_t{39}}) {
            const auto prod = mul(signature_of_path(sub_path(path, 0, split), 5),
                                  signature_of_path(sub_path(path, split, path.size() - 1), 5));
            CHECK(max_abs_diff(whole, prod) <= 1e-10);
        }
        CHECK(std::abs(whole[Word::parse("1")] * whole[Word::parse("2")] - whole[Word::parse("12")] -
                       whole[Word::parse("21")]) <= 1e-12);
        CHECK(std::abs(whole[Word::parse("1")] * whole[Word::parse("1")] - 2.0 * whole[Word::parse("11")]) <= 1e-12);
    }
    // Brownian sample paths.
    auto stream = make_stream(4, 0);
    const auto bm = sample_bm_exit({0.1, 0.2}, Disk{}, 1e-3, stream);
    const auto sig = signature_of_path(bm, 5);
    CHECK(checks::shuffle_defect(sig) <= 1e-10);
    const std::size_t mid = bm.size() / 2;
    CHECK(max_abs_diff(sig, mul(signature_of_path(sub_path(bm, 0, mid), 5),
                                signature_of_path(sub_path(bm, mid, bm.size() - 1), 5))) <= 1e-10);
}

TEST_CASE("reparameterization invariance") {
    std::mt19937_64 rng(5);
    const auto path = random_path(rng, 20);
    auto warped = path;
    for (auto& t : warped.times) t = t * t * 0.01 + 3.0 * t;
    CHECK(signature_of_path(path, 4) == signature_of_path(warped, 4));
}

TEST_CASE("shuffle enumeration") {
    CHECK(checks::shuffles(Word::parse("1"), Word::parse("2")).size() == 2);
    CHECK(checks::shuffles(Word::parse("12"), Word::parse("34")).size() == 6);
    CHECK(checks::shuffles(Word::parse(""), Word::parse("12")).size() == 1);
    const std::vector<std::vector<Q>> pts{{0, 0}, {Q(1, 2), 2}, {-1, Q(1, 3)}, {2, 2}};
    CHECK(checks::shuffle_defect(signature_of_points<Q>(pts, 5)) == 0);
}

TEST_CASE("path file round trip") {
    auto rng = make_stream(6, 0);
    const auto path = sample_bm_exit({0.0, 0.0}, Disk{}, 1e-2, rng);
    std::stringstream buf;
    write_path(buf, path);
    const auto back = read_path(buf);
    REQUIRE(back.size() == path.size());
    CHECK(back.coords == path.coords);
    CHECK(back.times == path.times);
    std::istringstream bad("0 0 0\n1 x 0\n");
    CHECK_THROWS_AS(read_path(bad), ParseError);
    std::istringstream mixed("0 0 0\n1 1\n");
    CHECK_THROWS_AS(read_path(mixed), ParseError);
}

TEST_CASE("estimate_phi determinism and basic statistics") {
    McOptions opt;
    opt.paths = 2000;
    opt.dt = 1e-3;
    opt.seed = 42;
    opt.batch_size = 300;
    const auto a = estimate_phi({0.0, 0.0}, Disk{}, 3, opt);
    const auto b = estimate_phi({0.0, 0.0}, Disk{}, 3, opt);
    CHECK(a.mean == b.mean);
    CHECK(a.standard_error == b.standard_error);
    opt.threads = 3;
    const auto c = estimate_phi({0.0, 0.0}, Disk{}, 3, opt);
    CHECK(a.mean == c.mean);
    CHECK(a.count == 2000);
    CHECK(a.seed == 42);
    CHECK(a.max_quadratic_defect <= 1e-6);
    for (std::size_t i = 0; i < 2; ++i) CHECK(std::abs(a.mean.level(1)[i]) <= 3.0 * a.standard_error.level(1)[i]);
    CHECK(std::abs(a.mean[Word::parse("11")] + a.mean[Word::parse("22")] - 0.5) <= 1e-6);
    opt.seed = 43;
    CHECK_FALSE(estimate_phi({0.0, 0.0}, Disk{}, 3, opt).mean == a.mean);
    CHECK_THROWS_AS(estimate_phi({3.0, 0.0}, Disk{}, 3, opt), DomainError);
    opt.paths = 0;
    CHECK_THROWS_AS(estimate_phi({0.0, 0.0}, Disk{}, 3, opt), UsageError);
}

TEST_CASE("rotated starting points agree after rotation") {
    McOptions opt;
    opt.paths = 4000;
    opt.dt = 1e-3;
    opt.seed = 7;
    const std::array<double, 2> z{0.3, 0.1};
    const auto r = quarter_turn<double>();
    const auto base = estimate_phi(z, Disk{}, 3, opt);
    opt.seed = 8;
    const auto turned = estimate_phi({-z[1], z[0]}, Disk{}, 3, opt);
    const auto rotated = rotate(r, base.mean);
    // Standard errors rotate with the coefficients for a quarter turn (a signed permutation).
    const auto rotated_se = rotate(Matrix2<double>{{{0.0, 1.0}, {1.0, 0.0}}}, base.standard_error);
    for (int k = 1; k <= 3; ++k)
        for (std::size_t i = 0; i < rotated.level(k).size(); ++i) {
            const double se = std::hypot(rotated_se.level(k)[i], turned.standard_error.level(k)[i]);
            CHECK(std::abs(rotated.level(k)[i] - turned.mean.level(k)[i]) <= 3.0 * se);
        }
}

TEST_CASE("mean value check") {
    const auto phi = expected_signature_disk(2);
    CHECK(mean_value_check({0.0, 0.0}, 0.5, phi) <= 1e-10);
    CHECK(mean_value_check({0.2 / std::sqrt(2.0), 0.2 / std::sqrt(2.0)}, 0.1, phi) <= 1e-10);
    CHECK(mean_value_check({0.2, 0.1}, 0.3, phi) <= 1e-10);
    CHECK(mean_value_check({0.1, -0.3}, 0.0, phi) <= 1e-12);
    auto corrupted = phi;
    // Harmonic perturbations pass the mean-value identity, so perturb by z1^2.
    corrupted[Word::parse("11")] += BivarPoly::monomial(2, 0, Q(1, 10));
    CHECK(mean_value_check({0.2, 0.1}, 0.3, corrupted) > 1e-3);
    CHECK_THROWS_AS(mean_value_check({0.0, 0.0}, 0.1, expected_signature_disk(1)), UsageError);
}
