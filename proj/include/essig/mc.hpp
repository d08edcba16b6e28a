#pragma once

#include "essig/disk.hpp"
#include "essig/tensor.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <span>
#include <vector>

namespace essig::mc {

/// Piecewise-linear path with strictly increasing timestamps.
struct PiecewisePath {
    int dimension = 2;
    std::vector<double> times;
    std::vector<double> coords;  // row-major, one row per vertex
    bool ends_on_boundary = false;

    std::size_t size() const { return times.size(); }
    std::span<const double> point(std::size_t i) const {
        return std::span<const double>(coords).subspan(i * static_cast<std::size_t>(dimension),
                                                       static_cast<std::size_t>(dimension));
    }
    void push_back(double t, std::span<const double> x);
};

struct Disk {
    std::array<double, 2> center{0.0, 0.0};
    double radius = 1.0;
};

/// Euler-discretised Brownian path from z, stopped at the first step that
/// leaves the disk. That step is cut where the segment meets the circle, so
/// the path ends exactly on the boundary. A start on the boundary yields a
/// single-point path.
PiecewisePath sample_bm_exit(const std::array<double, 2>& z, const Disk& disk, double dt, std::mt19937_64& rng);

/// Ordered product of exp_increment over consecutive vertex differences.
template <Scalar T>
TruncatedTensor<T> signature_of_points(std::span<const std::vector<T>> points, int truncation);

/// Timestamps are never read, so reparameterisation leaves the result unchanged.
TruncatedTensor<double> signature_of_path(const PiecewisePath& path, int truncation);

struct McOptions {
    std::size_t paths = 1000;
    double dt = 1e-3;
    std::uint64_t seed = 0;
    /// Paths per batch; batch b draws from make_stream(seed, b).
    std::size_t batch_size = 1000;
    unsigned threads = 1;
};

struct McEstimate {
    TruncatedTensor<double> mean;
    TruncatedTensor<double> standard_error;
    std::size_t count = 0;
    std::uint64_t seed = 0;
    double dt = 0.0;
    /// max over paths of |pi^{11} + pi^{22} - |B_tau - z|^2 / 2| (0 when N < 2).
    double max_quadratic_defect = 0.0;
};

/// Mean and per-word standard error of the exit-path signature. The result
/// depends only on (z, disk, N, paths, dt, seed, batch_size), never on the
/// thread count.
McEstimate estimate_phi(const std::array<double, 2>& z, const Disk& disk, int truncation, const McOptions& options);

/// Trapezoid-rule residual of the level-2 mean-value identity
/// Phi(z) = (1/2pi) int pi_2(Psi(eps e^{i theta})) (x) Phi(z + eps e^{i theta}) d theta,
/// with pi_2(Psi(w)) = 1 + sum_i w_i e_i + sum_i w_i^2/2 e_i (x) e_i.
/// Returns the largest coefficient mismatch over levels 0..2.
double mean_value_check(const std::array<double, 2>& z, double eps, const PolyTensor& phi, int nodes = 1024);

/// Path dump: one vertex per line, "t x1 ... xd".
void write_path(std::ostream& out, const PiecewisePath& path);
PiecewisePath read_path(std::istream& in);

extern template TruncatedTensor<Rational> signature_of_points(std::span<const std::vector<Rational>>, int);
extern template TruncatedTensor<double> signature_of_points(std::span<const std::vector<double>>, int);

}  // namespace essig::mc
