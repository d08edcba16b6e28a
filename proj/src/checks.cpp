#include "essig/checks.hpp"

#include "essig/disk.hpp"
#include "essig/errors.hpp"
#include "essig/interval.hpp"
#include "essig/lattice.hpp"
#include "essig/mc.hpp"
#include "essig/random.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>

namespace essig::checks {

namespace {

constexpr std::array<std::string_view, 7> kSuites = {"residual", "boundary-factor", "chen",          "rotation",
                                                     "meanvalue", "lattice-mc",     "interval-oracle"};

template <Scalar T>
T abs_value(const T& x) {
    if constexpr (std::is_same_v<T, double>)
        return std::abs(x);
    else
        return abs(x);
}

void shuffle_into(const std::vector<int>& u, std::size_t i, const std::vector<int>& v, std::size_t j,
                  std::vector<int>& prefix, std::vector<Word>& out) {
    if (i == u.size() && j == v.size()) {
        out.emplace_back(prefix);
        return;
    }
    if (i < u.size()) {
        prefix.push_back(u[i]);
        shuffle_into(u, i + 1, v, j, prefix, out);
        prefix.pop_back();
    }
    if (j < v.size()) {
        prefix.push_back(v[j]);
        shuffle_into(u, i, v, j + 1, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace

std::span<const std::string_view> suite_names() { return kSuites; }

std::vector<Word> shuffles(const Word& u, const Word& v) {
    std::vector<Word> out;
    std::vector<int> prefix;
    shuffle_into(u.letters(), 0, v.letters(), 0, prefix, out);
    return out;
}

template <Scalar T>
T shuffle_defect(const TruncatedTensor<T>& sig) {
    const int d = sig.dimension();
    const int depth = sig.truncation();
    T worst(0);
    for (int a = 1; a < depth; ++a) {
        for (int b = 1; a + b <= depth; ++b) {
            for (std::size_t iu = 0; iu < level_size(d, a); ++iu) {
                const Word u = Word::from_index(iu, a, d);
                for (std::size_t iv = 0; iv < level_size(d, b); ++iv) {
                    const Word v = Word::from_index(iv, b, d);
                    T lhs = sig[u] * sig[v];
                    for (const auto& w : shuffles(u, v)) lhs -= sig[w];
                    T mag = abs_value(lhs);
                    if (mag > worst) worst = mag;
                }
            }
        }
    }
    return worst;
}

template Rational shuffle_defect(const TruncatedTensor<Rational>&);
template double shuffle_defect(const TruncatedTensor<double>&);

CheckReport check_residual(int truncation) {
    CheckReport report{"residual"};
    const auto phi = expected_signature_disk(truncation);
    for (int n = 2; n <= truncation; ++n) {
        if (!residual_check(phi, n))
            report.fail("PDE residual nonzero at level " + std::to_string(n));
        else
            report.note("level " + std::to_string(n) + ": residual identically zero over " +
                        std::to_string(level_size(2, n)) + " words");
    }
    report.metrics["truncation"] = truncation;
    return report;
}

CheckReport check_boundary_factor(int truncation) {
    CheckReport report{"boundary-factor"};
    const auto phi = expected_signature_disk(truncation);
    for (int n = 2; n <= truncation; ++n) {
        if (!boundary_factor_check(phi, n))
            report.fail("level " + std::to_string(n) + " lacks the 1 - |z|^2 factor or exceeds the degree bound");
        else
            report.note("level " + std::to_string(n) + ": divisible by 1 - |z|^2, quotient degree <= " +
                        std::to_string(n - 2));
    }
    report.metrics["truncation"] = truncation;
    return report;
}

CheckReport check_chen(std::size_t paths, int truncation, std::uint64_t seed) {
    CheckReport report{"chen"};
    auto rng = make_stream(seed, 0xC4E7);
    std::uniform_int_distribution<int> segments(1, 50);
    std::normal_distribution<double> gauss(0.0, 0.3);
    std::uniform_int_distribution<int> numer(-5, 5);
    std::uniform_int_distribution<int> denom(1, 4);

    double worst_split = 0.0;
    double worst_shuffle = 0.0;
    bool exact_ok = true;
    for (std::size_t p = 0; p < paths; ++p) {
        const int k = segments(rng);
        std::vector<std::vector<double>> pts{{0.0, 0.0}};
        std::vector<std::vector<Rational>> qpts{{Rational(0), Rational(0)}};
        for (int s = 0; s < k; ++s) {
            pts.push_back({pts.back()[0] + gauss(rng), pts.back()[1] + gauss(rng)});
            Rational dx(numer(rng), denom(rng));
            Rational dy(numer(rng), denom(rng));
            dx.canonicalize();
            dy.canonicalize();
            qpts.push_back({qpts.back()[0] + dx, qpts.back()[1] + dy});
        }
        const std::size_t split = std::uniform_int_distribution<std::size_t>(0, pts.size() - 1)(rng);

        const std::span<const std::vector<double>> all(pts);
        const auto whole = mc::signature_of_points(all, truncation);
        const auto joined = mul(mc::signature_of_points(all.first(split + 1), truncation),
                                mc::signature_of_points(all.subspan(split), truncation));
        const auto diff = whole - joined;
        for (int n = 0; n <= truncation; ++n)
            for (double c : diff.level(n)) worst_split = std::max(worst_split, std::abs(c));
        worst_shuffle = std::max(worst_shuffle, shuffle_defect(whole));

        const std::span<const std::vector<Rational>> qall(qpts);
        const auto qwhole = mc::signature_of_points(qall, truncation);
        const auto qjoined = mul(mc::signature_of_points(qall.first(split + 1), truncation),
                                 mc::signature_of_points(qall.subspan(split), truncation));
        if (qwhole != qjoined || shuffle_defect(qwhole) != 0) exact_ok = false;
    }
    if (worst_split > 1e-10) report.fail("float split-product defect " + std::to_string(worst_split));
    if (worst_shuffle > 1e-10) report.fail("float shuffle defect " + std::to_string(worst_shuffle));
    if (!exact_ok) report.fail("rational Chen or shuffle identity not exact");
    report.note("paths=" + std::to_string(paths) + " N=" + std::to_string(truncation));
    report.metrics["max_split_defect"] = worst_split;
    report.metrics["max_shuffle_defect"] = worst_shuffle;
    report.metrics["rational_exact"] = exact_ok;
    return report;
}

CheckReport check_rotation(int truncation) {
    CheckReport report{"rotation"};
    const auto phi = expected_signature_disk(truncation);
    const auto quarter = quarter_turn<Rational>();
    const std::vector<std::array<Rational, 2>> points = {
        {Rational(0), Rational(0)}, {Rational(3, 10), Rational(2, 5)}, {Rational(-1, 7), Rational(1, 3)},
        {Rational(1, 2), Rational(-1, 2)}, {Rational(3, 5), Rational(4, 5)}};
    for (const auto& z : points) {
        const auto lhs = rotate(quarter, evaluate_phi(phi, z[0], z[1]));
        const Rational rz1 = -z[1];
        const auto rhs = evaluate_phi(phi, rz1, z[0]);
        if (lhs != rhs) report.fail("quarter-turn equivariance fails at (" + to_string(z[0]) + ", " + to_string(z[1]) + ")");
    }

    double worst = 0.0;
    for (double theta : {0.3, 1.1, 2.5, 4.0, 5.9}) {
        const auto r = rotation_matrix(theta);
        for (const auto& z : std::vector<std::array<double, 2>>{{0.1, 0.2}, {-0.5, 0.4}, {0.7, -0.1}}) {
            const auto lhs = rotate(r, evaluate_phi(phi, z[0], z[1]));
            const double rz1 = r[0][0] * z[0] + r[0][1] * z[1];
            const double rz2 = r[1][0] * z[0] + r[1][1] * z[1];
            const auto diff = lhs - evaluate_phi(phi, rz1, rz2);
            for (int n = 0; n <= truncation; ++n)
                for (double c : diff.level(n)) worst = std::max(worst, std::abs(c));
        }
    }
    if (worst > 1e-12) report.fail("numeric rotation defect " + std::to_string(worst));
    report.metrics["max_numeric_defect"] = worst;
    report.note("exact quarter turn at " + std::to_string(points.size()) + " rational points");
    return report;
}

CheckReport check_meanvalue() {
    CheckReport report{"meanvalue"};
    const auto phi = expected_signature_disk(2);
    double worst = 0.0;
    for (const auto& z : std::vector<std::array<double, 2>>{{0.0, 0.0}, {0.2, 0.1}}) {
        const double r = mc::mean_value_check(z, 0.3, phi, 1024);
        worst = std::max(worst, r);
        if (r > 1e-10) report.fail("mean-value residual " + std::to_string(r));
    }
    report.metrics["max_residual"] = worst;
    report.note("eps=0.3, 1024-node trapezoid");
    return report;
}

CheckReport check_lattice_mc(int truncation, std::size_t walks, std::uint64_t seed) {
    CheckReport report{"lattice-mc"};
    std::vector<lattice::Point> block;
    for (int i = -2; i <= 2; ++i)
        for (int j = -2; j <= 2; ++j) block.push_back({i, j});
    auto domain = std::make_shared<const lattice::LatticeDomain>(2, block);
    const auto field = lattice::expected_signature_lattice<Rational>(domain, truncation);
    if (lattice::fixed_point_defect(field) != 0) report.fail("fixed-point identity not exact");

    std::size_t agree = 0;
    std::size_t total = 0;
    double max_z = 0.0;
    for (int n = 2; n <= truncation; ++n) {
        std::vector<std::vector<double>> g(domain->interior_size());
        for (std::size_t x = 0; x < g.size(); ++x) {
            const auto gx = lattice::rhs_level(n, field, x);
            for (const auto& c : gx) g[x].push_back(to_double(c));
        }
        for (std::size_t x = 0; x < domain->interior_size(); ++x) {
            const auto est = lattice::representation_estimate(*domain, g, x, walks, seed + static_cast<std::uint64_t>(n));
            const auto exact = field.at(x).level(n);
            for (std::size_t w = 0; w < exact.size(); ++w) {
                ++total;
                const double err = std::abs(est.mean[w] - to_double(exact[w]));
                if (est.standard_error[w] > 0.0) max_z = std::max(max_z, err / est.standard_error[w]);
                if (err <= 3.0 * est.standard_error[w] || (est.standard_error[w] == 0.0 && err < 1e-12)) ++agree;
            }
        }
    }
    const double fraction = total ? static_cast<double>(agree) / static_cast<double>(total) : 1.0;
    if (fraction < 0.95) report.fail("only " + std::to_string(fraction) + " of pairs within 3 SE");
    report.metrics["agreement"] = fraction;
    report.metrics["pairs"] = total;
    report.metrics["max_z_score"] = max_z;
    report.note("5x5 block, walks=" + std::to_string(walks));
    return report;
}

CheckReport check_interval_oracle(int truncation) {
    CheckReport report{"interval-oracle"};
    const auto levels = interval::ode_recursion(truncation);
    for (int n = 2; n <= truncation; ++n) {
        const auto closed = interval::closed_form_level(n);
        const auto enumerated = interval::two_point_exit_level(n);
        if (levels[static_cast<std::size_t>(n)] != closed) report.fail("ODE != closed form at level " + std::to_string(n));
        if (enumerated != closed) report.fail("two-point enumeration != closed form at level " + std::to_string(n));
    }
    report.note("levels 2.." + std::to_string(truncation) + " compared exactly");
    return report;
}

CheckReport run_check(std::string_view suite, const CheckConfig& config) {
    if (suite == "residual") return check_residual(config.truncation);
    if (suite == "boundary-factor") return check_boundary_factor(config.truncation);
    if (suite == "chen") return check_chen(config.paths, config.truncation, config.seed);
    if (suite == "rotation") return check_rotation(config.truncation);
    if (suite == "meanvalue") return check_meanvalue();
    if (suite == "lattice-mc") return check_lattice_mc(config.truncation, config.paths, config.seed);
    if (suite == "interval-oracle") return check_interval_oracle(config.truncation);
    throw UsageError("unknown check suite '" + std::string(suite) + "'");
}

}  // namespace essig::checks
