#include "essig/disk.hpp"

#include "essig/errors.hpp"
#include "essig/linalg.hpp"

#include <stdexcept>
#include <string>

namespace essig {

PolyTensor::PolyTensor(int truncation) {
    if (truncation < 0) throw UsageError("truncation must be non-negative");
    for (int k = 0; k <= truncation; ++k) levels_.emplace_back(level_size(dimension, k));
}

const BivarPoly& PolyTensor::operator[](const Word& w) const {
    if (static_cast<int>(w.size()) > truncation()) throw UsageError("word longer than truncation");
    return levels_[w.size()][w.index(dimension)];
}

BivarPoly& PolyTensor::operator[](const Word& w) {
    if (static_cast<int>(w.size()) > truncation()) throw UsageError("word longer than truncation");
    return levels_[w.size()][w.index(dimension)];
}

std::vector<BivarPoly> rhs_level(int n, const PolyTensor& phi) {
    if (n < 2) throw UsageError("rhs_level needs n >= 2");
    if (phi.truncation() < n - 1) throw UsageError("levels n-1 and n-2 must be available");
    const auto prev = phi.level(n - 1);
    const auto prev2 = phi.level(n - 2);
    const std::size_t half = prev.size();      // 2^(n-1)
    const std::size_t quarter = prev2.size();  // 2^(n-2)

    std::vector<BivarPoly> rhs(2 * half);
    for (std::size_t idx = 0; idx < rhs.size(); ++idx) {
        const int first = static_cast<int>(idx / half) + 1;
        const std::size_t tail = idx % half;
        const int second = static_cast<int>(tail / quarter) + 1;
        const std::size_t tail2 = tail % quarter;

        BivarPoly value = Rational(-2) * partial(prev[tail], first);
        if (first == second) value -= prev2[tail2];
        rhs[idx] = std::move(value);
    }
    return rhs;
}

MnSystem build_mn(int n) {
    if (n < 0) throw UsageError("M_n needs n >= 0");
    MnSystem sys;
    sys.degree = n;
    const auto size = static_cast<std::size_t>(n) + 1;
    sys.matrix.assign(size, std::vector<std::int64_t>(size, 0));
    const std::int64_t nn = n;
    for (std::int64_t j = 0; j <= nn; ++j) {
        auto& row = sys.matrix[static_cast<std::size_t>(j)];
        std::int64_t diag = -4 * (nn + 1);
        if (j >= 2) diag -= j * (j - 1);
        if (j <= nn - 2) diag -= (nn - j) * (nn - j - 1);
        row[static_cast<std::size_t>(j)] = diag;
        if (j <= nn - 2) row[static_cast<std::size_t>(j + 2)] = -(j + 2) * (j + 1);
        if (j >= 2) row[static_cast<std::size_t>(j - 2)] = -(nn - j + 2) * (nn - j + 1);
    }
    return sys;
}

MnSystem solve_mn(int n, std::vector<Rational> b) {
    MnSystem sys = build_mn(n);
    if (b.size() != sys.matrix.size()) throw UsageError("M_n right-hand side has wrong length");
    DenseMatrix<Rational> a(sys.matrix.size());
    for (std::size_t i = 0; i < a.n; ++i)
        for (std::size_t j = 0; j < a.n; ++j) a(i, j) = Rational(static_cast<long>(sys.matrix[i][j]));
    sys.solution = solve_exact(std::move(a), b);
    sys.rhs = std::move(b);
    return sys;
}

BivarPoly disk_operator(const BivarPoly& g) {
    return laplacian(BivarPoly::disk_factor() * g);
}

BivarPoly poisson_solve_disk(const BivarPoly& f) {
    BivarPoly residual = f;
    BivarPoly g;
    while (!residual.is_zero()) {
        const int m = residual.degree();
        std::vector<Rational> b(static_cast<std::size_t>(m) + 1);
        for (int j = 0; j <= m; ++j) b[static_cast<std::size_t>(j)] = residual.coeff(j, m - j);

        const MnSystem sys = solve_mn(m, std::move(b));
        BivarPoly g_m;
        for (int j = 0; j <= m; ++j) g_m.add_term({j, m - j}, sys.solution[static_cast<std::size_t>(j)]);

        g += g_m;
        residual -= disk_operator(g_m);
        // L(g_m) reproduces the leading part and adds only degree m - 2.
        if (residual.degree() >= m) throw std::logic_error("disk Poisson peeling failed to reduce degree");
    }
    return BivarPoly::disk_factor() * g;
}

PolyTensor expected_signature_disk(int truncation) {
    PolyTensor phi(truncation);
    phi.level(0)[0] = BivarPoly(1);
    for (int n = 2; n <= truncation; ++n) {
        auto rhs = rhs_level(n, phi);
        auto out = phi.level(n);
        for (std::size_t w = 0; w < rhs.size(); ++w) out[w] = poisson_solve_disk(rhs[w]);
    }
    return phi;
}

namespace {

template <Scalar T>
bool outside_closed_disk(const T& z1, const T& z2, const T& radius_sq) {
    if constexpr (std::is_same_v<T, double>)
        return z1 * z1 + z2 * z2 > radius_sq * (1.0 + 1e-12);
    else
        return z1 * z1 + z2 * z2 > radius_sq;
}

}  // namespace

template <Scalar T>
TruncatedTensor<T> evaluate_phi(const PolyTensor& phi, const T& z1, const T& z2) {
    if (outside_closed_disk(z1, z2, T(1))) throw DomainError("evaluation point lies outside the unit disk");
    TruncatedTensor<T> out(PolyTensor::dimension, phi.truncation());
    for (int n = 0; n <= phi.truncation(); ++n) {
        auto src = phi.level(n);
        auto dst = out.level(n);
        for (std::size_t i = 0; i < src.size(); ++i) dst[i] = evaluate(src[i], z1, z2);
    }
    return out;
}

template <Scalar T>
TruncatedTensor<T> transport(const PolyTensor& phi, const std::array<T, 2>& center, const T& radius,
                             const std::array<T, 2>& z) {
    if (!(radius > 0)) throw UsageError("radius must be positive");
    const T d1 = z[0] - center[0];
    const T d2 = z[1] - center[1];
    if (outside_closed_disk(d1, d2, T(radius * radius)))
        throw DomainError("starting point lies outside the disk");
    return dilate(radius, evaluate_phi(phi, T(d1 / radius), T(d2 / radius)));
}

namespace {

// e_letter (x) level, as a level-(k+1) array.
std::vector<BivarPoly> left_letter(int letter, std::span<const BivarPoly> level) {
    std::vector<BivarPoly> out(2 * level.size());
    const std::size_t offset = static_cast<std::size_t>(letter - 1) * level.size();
    for (std::size_t i = 0; i < level.size(); ++i) out[offset + i] = level[i];
    return out;
}

}  // namespace

std::vector<BivarPoly> pde_residual(const PolyTensor& phi, int n) {
    if (n < 2 || n > phi.truncation()) throw UsageError("residual level must lie in 2..N");
    std::vector<BivarPoly> res;
    for (const auto& p : phi.level(n)) res.push_back(laplacian(p));

    for (int i = 1; i <= 2; ++i) {
        std::vector<BivarPoly> grad;
        for (const auto& p : phi.level(n - 1)) grad.push_back(partial(p, i));
        auto term = left_letter(i, grad);
        for (std::size_t w = 0; w < res.size(); ++w) res[w] += Rational(2) * term[w];

        auto trace = left_letter(i, left_letter(i, phi.level(n - 2)));
        for (std::size_t w = 0; w < res.size(); ++w) res[w] += trace[w];
    }
    return res;
}

bool residual_check(const PolyTensor& phi, int n) {
    for (const auto& p : pde_residual(phi, n))
        if (!p.is_zero()) return false;
    return true;
}

bool boundary_factor_check(const PolyTensor& phi, int n) {
    if (n < 2 || n > phi.truncation()) throw UsageError("boundary check level must lie in 2..N");
    const BivarPoly factor = BivarPoly::disk_factor();
    for (const auto& p : phi.level(n)) {
        if (p.degree() > n) return false;
        auto [quotient, remainder] = divide(p, factor);
        if (!remainder.is_zero() || quotient.degree() > n - 2) return false;
    }
    return true;
}

template TruncatedTensor<Rational> evaluate_phi(const PolyTensor&, const Rational&, const Rational&);
template TruncatedTensor<double> evaluate_phi(const PolyTensor&, const double&, const double&);
template TruncatedTensor<Rational> transport(const PolyTensor&, const std::array<Rational, 2>&, const Rational&,
                                             const std::array<Rational, 2>&);
template TruncatedTensor<double> transport(const PolyTensor&, const std::array<double, 2>&, const double&,
                                           const std::array<double, 2>&);

}  // namespace essig
