#include "essig/mc.hpp"

#include "essig/errors.hpp"
#include "essig/random.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

namespace essig::mc {

void PiecewisePath::push_back(double t, std::span<const double> x) {
    if (static_cast<int>(x.size()) != dimension) throw UsageError("path vertex has wrong dimension");
    if (!times.empty() && !(t > times.back())) throw UsageError("path timestamps must be strictly increasing");
    times.push_back(t);
    coords.insert(coords.end(), x.begin(), x.end());
}

namespace {

constexpr long long kStepCap = 1'000'000'000LL;

/// Flat double-precision signature with an in-place Chen step; the MC hot loop.
class SignatureAccumulator {
public:
    SignatureAccumulator(int dimension, int truncation) : d_(dimension), depth_(truncation) {
        std::size_t total = 0;
        for (int k = 0; k <= depth_; ++k) {
            offset_.push_back(total);
            total += level_size(d_, k);
        }
        offset_.push_back(total);
        sig_.assign(total, 0.0);
        seg_.assign(total, 0.0);
        reset();
    }

    void reset() {
        std::ranges::fill(sig_, 0.0);
        sig_[0] = 1.0;
    }

    void extend(const double* v) {
        seg_[0] = 1.0;
        for (int n = 1; n <= depth_; ++n) {
            const double* prev = &seg_[offset_[n - 1]];
            double* cur = &seg_[offset_[n]];
            const std::size_t prev_size = offset_[n] - offset_[n - 1];
            const double inv_n = 1.0 / n;
            for (std::size_t i = 0; i < prev_size; ++i) {
                const double head = prev[i] * inv_n;
                for (int j = 0; j < d_; ++j) cur[i * d_ + j] = head * v[j];
            }
        }
        for (int n = depth_; n >= 1; --n) {
            double* out = &sig_[offset_[n]];
            for (int k = 0; k < n; ++k) {
                const double* left = &sig_[offset_[k]];
                const std::size_t left_size = offset_[k + 1] - offset_[k];
                const double* right = &seg_[offset_[n - k]];
                const std::size_t stride = offset_[n - k + 1] - offset_[n - k];
                for (std::size_t iu = 0; iu < left_size; ++iu) {
                    const double a = left[iu];
                    double* row = out + iu * stride;
                    for (std::size_t iv = 0; iv < stride; ++iv) row[iv] += a * right[iv];
                }
            }
        }
    }

    std::span<const double> flat() const { return sig_; }
    std::span<const double> level(int k) const {
        return std::span<const double>(sig_).subspan(offset_[k], offset_[k + 1] - offset_[k]);
    }

private:
    int d_;
    int depth_;
    std::vector<std::size_t> offset_;
    std::vector<double> sig_;
    std::vector<double> seg_;
};

/// Runs one discretised Brownian path from z to the circle, calling
/// on_step(t, point) after every accepted vertex. Returns false if z is
/// already on or outside the circle (no steps taken).
template <class OnStep>
bool walk_to_exit(const std::array<double, 2>& z, const Disk& disk, double dt, std::mt19937_64& rng,
                  OnStep&& on_step) {
    const double r2 = disk.radius * disk.radius;
    std::array<double, 2> x = z;
    auto dist2 = [&](const std::array<double, 2>& p) {
        const double a = p[0] - disk.center[0];
        const double b = p[1] - disk.center[1];
        return a * a + b * b;
    };
    if (dist2(x) >= r2 * (1.0 - 1e-15)) return false;

    std::normal_distribution<double> gauss(0.0, std::sqrt(dt));
    double t = 0.0;
    for (long long step = 0; step < kStepCap; ++step) {
        const std::array<double, 2> delta{gauss(rng), gauss(rng)};
        const std::array<double, 2> next{x[0] + delta[0], x[1] + delta[1]};
        if (dist2(next) < r2) {
            t += dt;
            x = next;
            on_step(t, x);
            continue;
        }
        // Smaller positive root s of |x + s delta - c|^2 = r^2.
        const double a = delta[0] * delta[0] + delta[1] * delta[1];
        const double b = (x[0] - disk.center[0]) * delta[0] + (x[1] - disk.center[1]) * delta[1];
        const double c = dist2(x) - r2;
        double s = 0.0;
        if (c < 0.0 && a > 0.0) s = std::clamp((-b + std::sqrt(b * b - a * c)) / a, 0.0, 1.0);
        std::array<double, 2> hit{x[0] + s * delta[0], x[1] + s * delta[1]};
        // Snap radially to remove the last rounding error.
        const double dx = hit[0] - disk.center[0];
        const double dy = hit[1] - disk.center[1];
        const double norm = std::sqrt(dx * dx + dy * dy);
        hit = {disk.center[0] + disk.radius * dx / norm, disk.center[1] + disk.radius * dy / norm};
        on_step(s > 0.0 ? t + s * dt : t, hit);
        return true;
    }
    throw std::runtime_error("Brownian exit simulation exceeded the step cap; dt is too small");
}

}  // namespace

PiecewisePath sample_bm_exit(const std::array<double, 2>& z, const Disk& disk, double dt, std::mt19937_64& rng) {
    if (!(dt > 0.0)) throw UsageError("dt must be positive");
    if (!(disk.radius > 0.0)) throw UsageError("radius must be positive");
    const double dx = z[0] - disk.center[0];
    const double dy = z[1] - disk.center[1];
    if (dx * dx + dy * dy > disk.radius * disk.radius * (1.0 + 1e-12))
        throw DomainError("starting point lies outside the disk");

    PiecewisePath path;
    path.dimension = 2;
    path.push_back(0.0, z);
    const bool moved = walk_to_exit(z, disk, dt, rng, [&](double t, const std::array<double, 2>& p) {
        if (t > path.times.back()) {
            path.push_back(t, p);
        } else {
            // Zero-length cut: the previous vertex already sits on the circle.
            std::ranges::copy(p, path.coords.end() - 2);
        }
    });
    (void)moved;
    path.ends_on_boundary = true;
    return path;
}

template <Scalar T>
TruncatedTensor<T> signature_of_points(std::span<const std::vector<T>> points, int truncation) {
    if (points.empty()) throw UsageError("signature needs at least one point");
    const int d = static_cast<int>(points.front().size());
    auto sig = TruncatedTensor<T>::unit(d, truncation);
    std::vector<T> delta(static_cast<std::size_t>(d));
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (static_cast<int>(points[i].size()) != d) throw UsageError("path points have mixed dimensions");
        for (std::size_t j = 0; j < delta.size(); ++j) delta[j] = points[i][j] - points[i - 1][j];
        extend_by_segment<T>(sig, delta);
    }
    return sig;
}

TruncatedTensor<double> signature_of_path(const PiecewisePath& path, int truncation) {
    if (path.size() == 0) throw UsageError("signature needs at least one point");
    SignatureAccumulator acc(path.dimension, truncation);
    std::vector<double> delta(static_cast<std::size_t>(path.dimension));
    for (std::size_t i = 1; i < path.size(); ++i) {
        auto a = path.point(i - 1);
        auto b = path.point(i);
        for (std::size_t j = 0; j < delta.size(); ++j) delta[j] = b[j] - a[j];
        acc.extend(delta.data());
    }
    TruncatedTensor<double> out(path.dimension, truncation);
    for (int k = 0; k <= truncation; ++k) std::ranges::copy(acc.level(k), out.level(k).begin());
    return out;
}

namespace {

struct BatchResult {
    std::vector<double> sum;
    std::vector<double> sum_sq;
    std::size_t count = 0;
    double max_defect = 0.0;
};

BatchResult run_batch(const std::array<double, 2>& z, const Disk& disk, int truncation, double dt,
                      std::uint64_t seed, std::size_t batch, std::size_t count) {
    auto rng = make_stream(seed, batch);
    SignatureAccumulator acc(2, truncation);
    BatchResult out;
    out.sum.assign(acc.flat().size(), 0.0);
    out.sum_sq.assign(acc.flat().size(), 0.0);
    out.count = count;
    for (std::size_t p = 0; p < count; ++p) {
        acc.reset();
        std::array<double, 2> last = z;
        walk_to_exit(z, disk, dt, rng, [&](double, const std::array<double, 2>& x) {
            const double v[2] = {x[0] - last[0], x[1] - last[1]};
            acc.extend(v);
            last = x;
        });
        const auto flat = acc.flat();
        for (std::size_t i = 0; i < flat.size(); ++i) {
            out.sum[i] += flat[i];
            out.sum_sq[i] += flat[i] * flat[i];
        }
        if (truncation >= 2) {
            auto lvl2 = acc.level(2);
            const double trace = lvl2[0] + lvl2[3];
            const double e0 = last[0] - z[0];
            const double e1 = last[1] - z[1];
            out.max_defect = std::max(out.max_defect, std::abs(trace - 0.5 * (e0 * e0 + e1 * e1)));
        }
    }
    return out;
}

}  // namespace

McEstimate estimate_phi(const std::array<double, 2>& z, const Disk& disk, int truncation, const McOptions& options) {
    if (truncation < 0) throw UsageError("truncation must be non-negative");
    if (options.paths < 1) throw UsageError("need at least one path");
    if (!(options.dt > 0.0)) throw UsageError("dt must be positive");
    if (!(disk.radius > 0.0)) throw UsageError("radius must be positive");
    if (options.batch_size == 0) throw UsageError("batch size must be positive");
    const double dx = z[0] - disk.center[0];
    const double dy = z[1] - disk.center[1];
    if (dx * dx + dy * dy > disk.radius * disk.radius * (1.0 + 1e-12))
        throw DomainError("starting point lies outside the disk");

    const std::size_t batches = (options.paths + options.batch_size - 1) / options.batch_size;
    std::vector<BatchResult> results(batches);
    auto batch_count = [&](std::size_t b) {
        return std::min(options.batch_size, options.paths - b * options.batch_size);
    };

    const unsigned workers = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(batches)));
    if (workers == 1) {
        for (std::size_t b = 0; b < batches; ++b)
            results[b] = run_batch(z, disk, truncation, options.dt, options.seed, b, batch_count(b));
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t b = next++; b < batches; b = next++)
                    results[b] = run_batch(z, disk, truncation, options.dt, options.seed, b, batch_count(b));
            });
    }

    // Merge in batch order so the sums do not depend on scheduling.
    const std::size_t total = results.front().sum.size();
    std::vector<double> sum(total, 0.0), sum_sq(total, 0.0);
    McEstimate est{TruncatedTensor<double>(2, truncation), TruncatedTensor<double>(2, truncation), 0, options.seed,
                   options.dt, 0.0};
    for (const auto& r : results) {
        for (std::size_t i = 0; i < total; ++i) {
            sum[i] += r.sum[i];
            sum_sq[i] += r.sum_sq[i];
        }
        est.count += r.count;
        est.max_quadratic_defect = std::max(est.max_quadratic_defect, r.max_defect);
    }
    const auto n = static_cast<double>(est.count);
    std::size_t flat = 0;
    for (int k = 0; k <= truncation; ++k) {
        auto mean = est.mean.level(k);
        auto se = est.standard_error.level(k);
        for (std::size_t i = 0; i < mean.size(); ++i, ++flat) {
            mean[i] = sum[flat] / n;
            if (est.count < 2) continue;
            const double var = std::max(0.0, (sum_sq[flat] - sum[flat] * sum[flat] / n) / (n - 1.0));
            se[i] = std::sqrt(var / n);
        }
    }
    return est;
}

double mean_value_check(const std::array<double, 2>& z, double eps, const PolyTensor& phi, int nodes) {
    if (phi.truncation() < 2) throw UsageError("mean-value check needs truncation >= 2");
    if (nodes < 1) throw UsageError("quadrature needs at least one node");
    if (eps < 0.0) throw UsageError("radius eps must be non-negative");

    PolyTensor phi2(2);
    for (int k = 0; k <= 2; ++k) std::ranges::copy(phi.level(k), phi2.level(k).begin());

    auto average = TruncatedTensor<double>::zero(2, 2);
    for (int k = 0; k < nodes; ++k) {
        const double theta = 2.0 * std::numbers::pi * k / nodes;
        const double w1 = eps * std::cos(theta);
        const double w2 = eps * std::sin(theta);
        auto psi = TruncatedTensor<double>::unit(2, 2);
        psi[Word({1})] = w1;
        psi[Word({2})] = w2;
        psi[Word({1, 1})] = 0.5 * w1 * w1;
        psi[Word({2, 2})] = 0.5 * w2 * w2;
        average += mul(psi, evaluate_phi(phi2, z[0] + w1, z[1] + w2));
    }
    average *= 1.0 / nodes;

    const auto centre = evaluate_phi(phi2, z[0], z[1]);
    double worst = 0.0;
    for (int k = 0; k <= 2; ++k) {
        auto a = average.level(k);
        auto b = centre.level(k);
        for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

void write_path(std::ostream& out, const PiecewisePath& path) {
    std::ostringstream line;
    line << std::setprecision(17);
    for (std::size_t i = 0; i < path.size(); ++i) {
        line.str("");
        line << path.times[i];
        for (double c : path.point(i)) line << ' ' << c;
        out << line.str() << '\n';
    }
}

PiecewisePath read_path(std::istream& in) {
    PiecewisePath path;
    path.dimension = 0;
    std::string text;
    int line_no = 0;
    while (std::getline(in, text)) {
        ++line_no;
        auto first = text.find_first_not_of(" \t\r");
        if (first == std::string::npos || text[first] == '#') continue;
        std::istringstream fields(text);
        std::vector<double> row;
        double v;
        while (fields >> v) row.push_back(v);
        if (!fields.eof()) throw ParseError("path file line " + std::to_string(line_no) + ": not a number");
        if (row.size() < 2) throw ParseError("path file line " + std::to_string(line_no) + ": expected 't x1 ...'");
        if (path.dimension == 0) path.dimension = static_cast<int>(row.size()) - 1;
        if (static_cast<int>(row.size()) - 1 != path.dimension)
            throw ParseError("path file line " + std::to_string(line_no) + ": inconsistent dimension");
        try {
            path.push_back(row[0], std::span<const double>(row).subspan(1));
        } catch (const UsageError& e) {
            throw ParseError("path file line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (path.size() == 0) throw ParseError("path file contains no points");
    return path;
}

template TruncatedTensor<Rational> signature_of_points(std::span<const std::vector<Rational>>, int);
template TruncatedTensor<double> signature_of_points(std::span<const std::vector<double>>, int);

}  // namespace essig::mc
