#include "essig/lattice.hpp"

#include "essig/errors.hpp"
#include "essig/random.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace essig::lattice {

std::string point_key(const Point& p) {
    std::string key;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) key += ',';
        key += std::to_string(p[i]);
    }
    return key;
}

LatticeDomain::LatticeDomain(int dimension, std::vector<Point> interior) : dim_(dimension) {
    if (dimension < 1) throw UsageError("lattice dimension must be positive");
    if (interior.empty()) throw UsageError("lattice domain needs at least one interior point");
    for (const auto& p : interior) {
        if (static_cast<int>(p.size()) != dimension)
            throw UsageError("point '" + point_key(p) + "' does not have " + std::to_string(dimension) +
                             " coordinates");
        if (!index_.emplace(p, points_.size()).second)
            throw UsageError("duplicate interior point '" + point_key(p) + "'");
        points_.push_back(p);
    }
    interior_count_ = points_.size();

    std::set<Point> boundary;
    for (std::size_t i = 0; i < interior_count_; ++i) {
        for (int j = 0; j < dim_; ++j) {
            for (int sign : {1, -1}) {
                Point q = points_[i];
                q[static_cast<std::size_t>(j)] += sign;
                if (!index_.contains(q)) boundary.insert(q);
            }
        }
    }
    for (const auto& q : boundary) {
        index_.emplace(q, points_.size());
        points_.push_back(q);
    }

    neighbors_.reserve(interior_count_ * 2 * static_cast<std::size_t>(dim_));
    for (std::size_t i = 0; i < interior_count_; ++i) {
        for (int j = 0; j < dim_; ++j) {
            for (int sign : {1, -1}) {
                Point q = points_[i];
                q[static_cast<std::size_t>(j)] += sign;
                neighbors_.push_back(index_.at(q));
            }
        }
    }
}

std::optional<std::size_t> LatticeDomain::find(const Point& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::span<const std::size_t> LatticeDomain::neighbors(std::size_t interior_idx) const {
    if (interior_idx >= interior_count_) throw UsageError("neighbors requested for a non-interior point");
    const std::size_t k = 2 * static_cast<std::size_t>(dim_);
    return std::span<const std::size_t>(neighbors_).subspan(interior_idx * k, k);
}

DomainFile read_domain(std::istream& in) {
    std::string line;
    int dim = 0;
    int truncation = 0;
    bool have_header = false;
    std::vector<Point> interior;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream fields(line);
        if (!have_header) {
            if (!(fields >> dim >> truncation) || dim < 1 || truncation < 0)
                throw ParseError("domain file line " + std::to_string(line_no) + ": expected header 'd N'");
            have_header = true;
        } else {
            Point p(static_cast<std::size_t>(dim));
            for (auto& c : p)
                if (!(fields >> c))
                    throw ParseError("domain file line " + std::to_string(line_no) + ": expected " +
                                     std::to_string(dim) + " integers");
            std::string extra;
            if (fields >> extra)
                throw ParseError("domain file line " + std::to_string(line_no) + ": trailing data '" + extra + "'");
            interior.push_back(std::move(p));
        }
    }
    if (!have_header) throw ParseError("domain file is empty");
    if (interior.empty()) throw ParseError("domain file lists no interior points");
    return {std::make_shared<const LatticeDomain>(dim, std::move(interior)), truncation};
}

template <Scalar T>
LatticeField<T>::LatticeField(std::shared_ptr<const LatticeDomain> domain, int truncation)
    : domain_(std::move(domain)), truncation_(truncation) {
    values_.assign(domain_->closure_size(), TruncatedTensor<T>::unit(domain_->dimension(), truncation));
}

template <Scalar T>
const TruncatedTensor<T>& LatticeField<T>::at(const Point& p) const {
    auto idx = domain_->find(p);
    if (!idx) throw UsageError("point '" + point_key(p) + "' is not in the domain closure");
    return values_[*idx];
}

template <Scalar T>
T discrete_laplacian(const LatticeDomain& domain, std::span<const T> values, std::size_t x) {
    if (values.size() != domain.closure_size()) throw UsageError("field size does not match domain");
    T sum(0);
    for (std::size_t y : domain.neighbors(x)) sum += values[y];
    return sum / T(2 * domain.dimension()) - values[x];
}

template <Scalar T>
std::vector<T> rhs_level(int n, const LatticeField<T>& field, std::size_t x) {
    if (n < 2 || n > field.truncation()) throw UsageError("lattice rhs level must lie in 2..N");
    const LatticeDomain& domain = field.domain();
    const int d = domain.dimension();
    std::vector<T> g(level_size(d, n), T(0));
    const T weight = T(1) / T(2 * d);

    const auto nbrs = domain.neighbors(x);
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
        std::vector<T> step(static_cast<std::size_t>(d), T(0));
        step[k / 2] = (k % 2 == 0) ? T(1) : T(-1);
        const auto e = exp_increment<T>(step, n);
        const auto& neighbour = field.at(nbrs[k]);
        for (int i = 1; i <= n; ++i) {
            auto left = e.level(i);
            auto right = neighbour.level(n - i);
            const std::size_t stride = right.size();
            for (std::size_t iu = 0; iu < left.size(); ++iu) {
                if (left[iu] == 0) continue;
                T head = weight * left[iu];
                for (std::size_t iv = 0; iv < stride; ++iv)
                    if (right[iv] != 0) g[iu * stride + iv] += head * right[iv];
            }
        }
    }
    return g;
}

template <Scalar T>
DirichletSolver<T>::DirichletSolver(std::shared_ptr<const LatticeDomain> domain, SolveOptions options)
    : domain_(std::move(domain)), options_(options) {
    if constexpr (std::is_same_v<T, Rational>) {
        const std::size_t m = domain_->interior_size();
        DenseMatrix<Rational> a(m);
        const long two_d = 2L * domain_->dimension();
        for (std::size_t i = 0; i < m; ++i) {
            a(i, i) = two_d;
            for (std::size_t y : domain_->neighbors(i))
                if (domain_->is_interior(y)) a(i, y) -= 1;
        }
        try {
            lu_.emplace(std::move(a));
        } catch (const std::domain_error&) {
            throw UsageError("malformed lattice domain: discrete Dirichlet system is singular");
        }
    }
}

template <Scalar T>
std::vector<T> DirichletSolver<T>::solve(const std::vector<T>& g) const {
    const std::size_t m = domain_->interior_size();
    if (g.size() != m) throw UsageError("Dirichlet right-hand side has wrong length");
    if constexpr (std::is_same_v<T, Rational>) {
        std::vector<Rational> rhs(m);
        const long two_d = 2L * domain_->dimension();
        for (std::size_t i = 0; i < m; ++i) rhs[i] = g[i] * two_d;
        return lu_->solve(rhs);
    } else {
        // f(x) = mean of neighbours + g(x); boundary values are zero.
        std::vector<double> f(m, 0.0);
        const double inv = 1.0 / (2.0 * domain_->dimension());
        for (long sweep = 0; sweep < options_.max_sweeps; ++sweep) {
            double change = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                double sum = 0.0;
                for (std::size_t y : domain_->neighbors(i))
                    if (domain_->is_interior(y)) sum += f[y];
                const double updated = sum * inv + g[i];
                change = std::max(change, std::abs(updated - f[i]));
                f[i] = updated;
            }
            if (change <= options_.tolerance) return f;
        }
        throw std::runtime_error("Gauss-Seidel did not converge within the sweep limit");
    }
}

template <Scalar T>
std::vector<std::vector<T>> solve_level(int n, const LatticeField<T>& field, const DirichletSolver<T>& solver) {
    const LatticeDomain& domain = field.domain();
    const std::size_t m = domain.interior_size();
    std::vector<std::vector<T>> g(m);
    for (std::size_t x = 0; x < m; ++x) g[x] = rhs_level(n, field, x);

    const std::size_t words = level_size(domain.dimension(), n);
    std::vector<std::vector<T>> out(m, std::vector<T>(words, T(0)));
    std::vector<T> column(m);
    for (std::size_t w = 0; w < words; ++w) {
        bool all_zero = true;
        for (std::size_t x = 0; x < m; ++x) {
            column[x] = g[x][w];
            all_zero = all_zero && column[x] == 0;
        }
        if (all_zero) continue;
        const auto f = solver.solve(column);
        for (std::size_t x = 0; x < m; ++x) out[x][w] = f[x];
    }
    return out;
}

template <Scalar T>
LatticeField<T> expected_signature_lattice(std::shared_ptr<const LatticeDomain> domain, int truncation,
                                           SolveOptions options) {
    LatticeField<T> field(domain, truncation);
    const DirichletSolver<T> solver(domain, options);
    for (int n = 2; n <= truncation; ++n) {
        auto level = solve_level(n, field, solver);
        for (std::size_t x = 0; x < level.size(); ++x) std::ranges::copy(level[x], field.at(x).level(n).begin());
    }
    return field;
}

template <Scalar T>
T fixed_point_defect(const LatticeField<T>& field) {
    const LatticeDomain& domain = field.domain();
    const int d = domain.dimension();
    const T weight = T(1) / T(2 * d);
    T worst(0);
    for (std::size_t x = 0; x < domain.interior_size(); ++x) {
        auto mean = TruncatedTensor<T>::zero(d, field.truncation());
        const auto nbrs = domain.neighbors(x);
        for (std::size_t k = 0; k < nbrs.size(); ++k) {
            std::vector<T> step(static_cast<std::size_t>(d), T(0));
            step[k / 2] = (k % 2 == 0) ? T(1) : T(-1);
            mean += mul(exp_increment<T>(step, field.truncation()), field.at(nbrs[k]));
        }
        mean *= weight;
        const auto diff = mean - field.at(x);
        for (int n = 0; n <= field.truncation(); ++n)
            for (const auto& c : diff.level(n)) {
                T a = c < 0 ? T(-c) : c;
                if (a > worst) worst = a;
            }
    }
    return worst;
}

RepresentationEstimate representation_estimate(const LatticeDomain& domain,
                                               std::span<const std::vector<double>> g, std::size_t x,
                                               std::size_t paths, std::uint64_t seed) {
    if (g.size() != domain.interior_size()) throw UsageError("g must hold one value per interior point");
    if (!domain.is_interior(x)) throw UsageError("walk must start at an interior point");
    if (paths < 2) throw UsageError("representation estimate needs at least two walks");
    const std::size_t words = g.front().size();
    for (const auto& v : g)
        if (v.size() != words) throw UsageError("g has inconsistent level sizes");

    auto rng = make_stream(seed, x);
    std::uniform_int_distribution<int> pick(0, 2 * domain.dimension() - 1);
    std::vector<double> sum(words, 0.0), sum_sq(words, 0.0), acc(words);
    for (std::size_t p = 0; p < paths; ++p) {
        std::ranges::fill(acc, 0.0);
        std::size_t cur = x;
        while (domain.is_interior(cur)) {
            const auto& gx = g[cur];
            for (std::size_t w = 0; w < words; ++w) acc[w] += gx[w];
            cur = domain.neighbors(cur)[static_cast<std::size_t>(pick(rng))];
        }
        for (std::size_t w = 0; w < words; ++w) {
            sum[w] += acc[w];
            sum_sq[w] += acc[w] * acc[w];
        }
    }
    RepresentationEstimate est;
    est.paths = paths;
    est.mean.resize(words);
    est.standard_error.resize(words);
    const auto count = static_cast<double>(paths);
    for (std::size_t w = 0; w < words; ++w) {
        est.mean[w] = sum[w] / count;
        const double var = std::max(0.0, (sum_sq[w] - sum[w] * sum[w] / count) / (count - 1.0));
        est.standard_error[w] = std::sqrt(var / count);
    }
    return est;
}

template class LatticeField<Rational>;
template class LatticeField<double>;
template class DirichletSolver<Rational>;
template class DirichletSolver<double>;

#define ESSIG_LATTICE_INSTANTIATE(T)                                                                      \
    template T discrete_laplacian(const LatticeDomain&, std::span<const T>, std::size_t);                 \
    template std::vector<T> rhs_level(int, const LatticeField<T>&, std::size_t);                          \
    template std::vector<std::vector<T>> solve_level(int, const LatticeField<T>&, const DirichletSolver<T>&); \
    template LatticeField<T> expected_signature_lattice(std::shared_ptr<const LatticeDomain>, int, SolveOptions); \
    template T fixed_point_defect(const LatticeField<T>&);

ESSIG_LATTICE_INSTANTIATE(Rational)
ESSIG_LATTICE_INSTANTIATE(double)

#undef ESSIG_LATTICE_INSTANTIATE

}  // namespace essig::lattice
