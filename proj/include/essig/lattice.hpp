#pragma once

#include "essig/linalg.hpp"
#include "essig/tensor.hpp"

#include <cstdint>
#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace essig::lattice {

using Point = std::vector<int>;

/// "x1,x2,..."
std::string point_key(const Point& p);

/// Finite interior set Gamma in Z^d with its derived outer boundary.
///
/// Closure indices list the interior points first (in input order) and the
/// boundary points after them in lexicographic order.
class LatticeDomain {
public:
    /// Throws UsageError for an empty set, duplicate points or wrong arity.
    LatticeDomain(int dimension, std::vector<Point> interior);

    int dimension() const { return dim_; }
    std::size_t interior_size() const { return interior_count_; }
    std::size_t closure_size() const { return points_.size(); }
    bool is_interior(std::size_t idx) const { return idx < interior_count_; }
    const Point& point(std::size_t idx) const { return points_.at(idx); }
    std::optional<std::size_t> find(const Point& p) const;

    /// Closure indices of the 2d neighbours of an interior point, ordered
    /// +e1, -e1, +e2, -e2, ...
    std::span<const std::size_t> neighbors(std::size_t interior_idx) const;

private:
    int dim_;
    std::size_t interior_count_;
    std::vector<Point> points_;
    std::map<Point, std::size_t> index_;
    std::vector<std::size_t> neighbors_;
};

struct DomainFile {
    std::shared_ptr<const LatticeDomain> domain;
    /// The N from the "d N" header line.
    int truncation = 0;
};

/// Header line "d N", then one interior point per line as d integers.
/// Blank lines and lines starting with '#' are ignored.
DomainFile read_domain(std::istream& in);

/// Tensor-valued field on the closure of a lattice domain.
template <Scalar T>
class LatticeField {
public:
    LatticeField(std::shared_ptr<const LatticeDomain> domain, int truncation);

    const LatticeDomain& domain() const { return *domain_; }
    std::shared_ptr<const LatticeDomain> domain_ptr() const { return domain_; }
    int truncation() const { return truncation_; }

    const TruncatedTensor<T>& at(std::size_t idx) const { return values_.at(idx); }
    TruncatedTensor<T>& at(std::size_t idx) { return values_.at(idx); }
    const TruncatedTensor<T>& at(const Point& p) const;

private:
    std::shared_ptr<const LatticeDomain> domain_;
    int truncation_;
    std::vector<TruncatedTensor<T>> values_;
};

/// (1/2d) sum_{|e|=1} f(x+e) - f(x) for interior x; `values` is indexed by closure index.
template <Scalar T>
T discrete_laplacian(const LatticeDomain& domain, std::span<const T> values, std::size_t x);

/// g_n(x) = sum_{|e|=1} (1/2d) sum_{i=1..n} e^{(x)i}/i! (x) rho_{n-i}(Phi(x+e)),
/// read from levels < n of `field`.
template <Scalar T>
std::vector<T> rhs_level(int n, const LatticeField<T>& field, std::size_t x);

struct SolveOptions {
    double tolerance = 1e-12;
    long max_sweeps = 1'000'000;
};

/// Solves Delta f = -g on Gamma, f = 0 on the boundary, one word at a time.
/// Rational fields use an exact LU factorised once per domain; float fields
/// use Gauss-Seidel.
template <Scalar T>
class DirichletSolver {
public:
    explicit DirichletSolver(std::shared_ptr<const LatticeDomain> domain, SolveOptions options = {});

    /// `g` holds one value per interior point.
    std::vector<T> solve(const std::vector<T>& g) const;

private:
    std::shared_ptr<const LatticeDomain> domain_;
    SolveOptions options_;
    std::optional<RationalLu> lu_;
};

/// Level-n values on the interior, one level array per interior point.
template <Scalar T>
std::vector<std::vector<T>> solve_level(int n, const LatticeField<T>& field, const DirichletSolver<T>& solver);

template <Scalar T>
LatticeField<T> expected_signature_lattice(std::shared_ptr<const LatticeDomain> domain, int truncation,
                                           SolveOptions options = {});

/// max over interior x of |Phi(x) - sum_e (1/2d) exp(e) (x) Phi(x+e)|, per coefficient.
template <Scalar T>
T fixed_point_defect(const LatticeField<T>& field);

struct RepresentationEstimate {
    std::vector<double> mean;
    std::vector<double> standard_error;
    std::size_t paths = 0;
};

/// Monte Carlo estimate of E^x[sum_{j<tau} g(S_j)] for the simple random
/// walk. `g` holds one level array per interior point.
RepresentationEstimate representation_estimate(const LatticeDomain& domain,
                                               std::span<const std::vector<double>> g, std::size_t x,
                                               std::size_t paths, std::uint64_t seed);

extern template class LatticeField<Rational>;
extern template class LatticeField<double>;
extern template class DirichletSolver<Rational>;
extern template class DirichletSolver<double>;

}  // namespace essig::lattice
