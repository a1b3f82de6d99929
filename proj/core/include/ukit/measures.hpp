#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ukit/exponent.hpp"

namespace ukit {

// Finitely many point masses. Points strictly increasing, weights positive.
struct Atoms {
    std::vector<double> points;
    std::vector<double> weights;
};

// Piecewise-constant density: values[k] is the density on the cell
// [origin + k*step, origin + (k+1)*step).
struct GridDensity {
    double origin = 0.0;
    double step = 1.0;
    std::vector<double> values;
};

// Quantile function sampled at increasing levels in (0, 1), interpolated
// linearly between levels. Below the first level the quantile equals the first
// value, above the last level it equals the last value. The first value may be
// -inf and the last +inf to declare an unbounded tail.
struct QuantileTable {
    std::vector<double> levels;
    std::vector<double> values;
};

struct Gaussian {
    double mean = 0.0;
    double std = 1.0;
};

enum class MeasureKind { atoms, grid, quantile, gaussian };

class Measure1D {
public:
    using Variant = std::variant<Atoms, GridDensity, QuantileTable, Gaussian>;

    // Validates the invariants of the representation and throws
    // RepresentationError on violation.
    explicit Measure1D(Variant v, std::string note = {});

    static Measure1D atoms(std::vector<double> points, std::vector<double> weights);
    static Measure1D dirac(double x);
    static Measure1D grid(double origin, double step, std::vector<double> values);
    // Uniform density on [a, b] split into `cells` equal cells.
    static Measure1D uniform(double a, double b, std::size_t cells = 1);
    static Measure1D quantile_table(std::vector<double> levels, std::vector<double> values);
    static Measure1D gaussian(double mean, double std);

    const Variant& variant() const noexcept { return v_; }
    MeasureKind kind() const noexcept { return static_cast<MeasureKind>(v_.index()); }
    std::string_view kind_name() const noexcept;

    const Atoms& as_atoms() const;
    const GridDensity& as_grid() const;
    const QuantileTable& as_quantile() const;
    const Gaussian& as_gaussian() const;

    // Free-form provenance of approximations made while building this
    // measure, such as Gaussian truncation or rebinning; empty when exact.
    const std::string& note() const noexcept { return note_; }

private:
    Variant v_;
    std::string note_;
};

struct SpreadResult {
    double value = 0.0;
    double minimizer = 0.0;
};

// (int |x-y|^alpha dmu)^(1/alpha), or the essential supremum of |x-y| for the
// infinite exponent. Returns +inf for unbounded tails.
double deviation(const Measure1D& mu, double y, Exponent alpha);

// Minimal deviation over the reference point y.
SpreadResult spread(const Measure1D& mu, Exponent alpha);

// Law of X+Y for independent X ~ mu and Y ~ nu. Throws ConversionError when
// the pair has no supported common representation.
Measure1D convolve(const Measure1D& mu, const Measure1D& nu);

// Left-continuous generalized inverse of the distribution function.
double quantile(const Measure1D& mu, double t);

// Right-continuous distribution function F(x) = mu((-inf, x]).
double cdf(const Measure1D& mu, double x);

double mean(const Measure1D& mu);
// +inf when the second moment diverges.
double variance(const Measure1D& mu);

// Closed convex hull of the support; infinite ends for Gaussians and tables
// with unbounded tails.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};
Interval support_hull(const Measure1D& mu);

// Law of X + a.
Measure1D shift(const Measure1D& mu, double a);
// Law of lambda * X for lambda != 0; a negative lambda reflects.
Measure1D scale(const Measure1D& mu, double lambda);
// lambda * mu + (1 - lambda) * nu.
Measure1D mixture(const Measure1D& mu, const Measure1D& nu, double lambda);

// Histogram of mu on the lattice {k * step}. Exact in cell masses for atoms,
// grids and quantile tables; Gaussians are truncated at +-10 std and
// renormalized.
Measure1D to_grid(const Measure1D& mu, double step);

// The quantile function as a list of pieces on which it is affine:
// Q(t) runs linearly from q0 at t0 to q1 at t1. Pieces tile (0, 1) in order.
// Not available for Gaussians.
struct QuantilePiece {
    double t0, t1, q0, q1;
};
std::vector<QuantilePiece> quantile_pieces(const Measure1D& mu);

// Average of |u|^alpha over the segment from u0 to u1 (|u0|^alpha when the
// segment is degenerate), evaluated without catastrophic cancellation.
double mean_abs_power(double u0, double u1, double alpha);

// E|m + s Z|^alpha for standard normal Z.
double gaussian_abs_moment(double m, double s, double alpha);

}  // namespace ukit
