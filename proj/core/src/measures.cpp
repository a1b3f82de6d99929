#include "ukit/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <utility>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/hypergeometric_1F1.hpp>

#include "internal.hpp"
#include "ukit/errors.hpp"

namespace ukit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kGaussianTruncation = 10.0;
constexpr std::size_t kMaxCells = std::size_t{1} << 22;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string join_notes(const std::string& a, const std::string& b) {
    if (a.empty()) return b;
    if (b.empty() || a == b) return a;
    return a + "; " + b;
}

void validate(const Atoms& a) {
    if (a.points.empty()) throw RepresentationError("atoms: empty support");
    if (a.points.size() != a.weights.size())
        throw RepresentationError("atoms: points and weights differ in length");
    double total = 0.0;
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        if (!std::isfinite(a.points[i])) throw RepresentationError("atoms: non-finite point");
        if (i > 0 && !(a.points[i] > a.points[i - 1]))
            throw RepresentationError("atoms: points must be strictly increasing");
        if (!(a.weights[i] > 0.0) || !std::isfinite(a.weights[i]))
            throw RepresentationError("atoms: weights must be positive");
        total += a.weights[i];
    }
    if (std::abs(total - 1.0) > 1e-12) {
        std::ostringstream os;
        os << "atoms: weights sum to " << total << ", expected 1 within 1e-12";
        throw RepresentationError(os.str());
    }
}

void validate(const GridDensity& g) {
    if (!(g.step > 0.0) || !std::isfinite(g.step))
        throw RepresentationError("grid: step must be positive");
    if (!std::isfinite(g.origin)) throw RepresentationError("grid: non-finite origin");
    if (g.values.empty()) throw RepresentationError("grid: no cells");
    double total = 0.0;
    for (double v : g.values) {
        if (!(v >= 0.0) || !std::isfinite(v))
            throw RepresentationError("grid: density values must be nonnegative");
        total += v;
    }
    if (std::abs(g.step * total - 1.0) > 1e-10) {
        std::ostringstream os;
        os << "grid: step * sum(values) = " << g.step * total << ", expected 1 within 1e-10";
        throw RepresentationError(os.str());
    }
}

void validate(const QuantileTable& q) {
    if (q.levels.empty()) throw RepresentationError("quantile table: no levels");
    if (q.levels.size() != q.values.size())
        throw RepresentationError("quantile table: levels and values differ in length");
    const std::size_t n = q.levels.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (!(q.levels[i] > 0.0 && q.levels[i] < 1.0))
            throw RepresentationError("quantile table: levels must lie in (0, 1)");
        if (i > 0 && !(q.levels[i] > q.levels[i - 1]))
            throw RepresentationError("quantile table: levels must be increasing");
        if (std::isnan(q.values[i])) throw RepresentationError("quantile table: NaN value");
        if (i > 0 && q.values[i] < q.values[i - 1])
            throw RepresentationError("quantile table: values must be nondecreasing");
        bool end = (i == 0 && q.values[i] == -kInf) || (i == n - 1 && q.values[i] == kInf);
        if (std::isinf(q.values[i]) && !end)
            throw RepresentationError(
                "quantile table: only the first value may be -inf and the last +inf");
    }
}

void validate(const Gaussian& g) {
    if (!std::isfinite(g.mean)) throw RepresentationError("gaussian: non-finite mean");
    if (!(g.std > 0.0) || !std::isfinite(g.std))
        throw RepresentationError("gaussian: std must be positive");
}

bool heavy_tailed(const QuantileTable& q) {
    return std::isinf(q.values.front()) || std::isinf(q.values.back());
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// Antiderivative-free integral of |x - y|^alpha over [a, b].
double cell_abs_power(double a, double b, double y, double alpha) {
    return (b - a) * mean_abs_power(a - y, b - y, alpha);
}

Atoms merge_atoms(std::vector<std::pair<double, double>> pw) {
    std::sort(pw.begin(), pw.end());
    Atoms out;
    for (const auto& [x, w] : pw) {
        if (!out.points.empty() && x == out.points.back()) {
            out.weights.back() += w;
        } else {
            out.points.push_back(x);
            out.weights.push_back(w);
        }
    }
    double total = std::accumulate(out.weights.begin(), out.weights.end(), 0.0);
    for (double& w : out.weights) w /= total;
    return out;
}

// Deposits the uniform distribution of `mass` over [a, b] (a point mass when
// a == b) into the cells of a lattice with the given origin and step.
void deposit(std::vector<double>& cells, double origin, double step, double a, double b,
             double mass) {
    const auto n = static_cast<long>(cells.size());
    auto index = [&](double x) {
        long k = static_cast<long>(std::floor((x - origin) / step));
        return std::clamp(k, 0L, n - 1);
    };
    if (!(b > a)) {
        cells[index(a)] += mass;
        return;
    }
    long k0 = index(a), k1 = index(b);
    if (k0 == k1) {
        cells[k0] += mass;
        return;
    }
    const double density = mass / (b - a);
    for (long k = k0; k <= k1; ++k) {
        double lo = std::max(a, origin + k * step);
        double hi = std::min(b, origin + (k + 1) * step);
        if (k == k0) lo = a;
        if (k == k1) hi = b;
        if (hi > lo) cells[k] += density * (hi - lo);
    }
}

GridDensity cells_to_density(std::vector<double> masses, double origin, double step) {
    // Trim empty cells on both ends.
    std::size_t first = 0, last = masses.size();
    while (first < last && masses[first] <= 0.0) ++first;
    while (last > first && masses[last - 1] <= 0.0) --last;
    GridDensity g;
    g.origin = origin + static_cast<double>(first) * step;
    g.step = step;
    g.values.assign(masses.begin() + static_cast<long>(first),
                    masses.begin() + static_cast<long>(last));
    double total = std::accumulate(g.values.begin(), g.values.end(), 0.0);
    for (double& v : g.values) v /= total * step;
    return g;
}

std::vector<double> discrete_convolution(const std::vector<double>& a,
                                         const std::vector<double>& b) {
    if (a.size() * b.size() > (std::size_t{1} << 24)) {
        return detail::fft_convolve(a, b);
    }
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0.0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    for (double& v : out) v = std::max(v, 0.0);
    return out;
}

// Refines a grid by splitting every cell into k equal cells; exact.
GridDensity refine(const GridDensity& g, int k) {
    if (k <= 1) return g;
    GridDensity out;
    out.origin = g.origin;
    out.step = g.step / k;
    out.values.reserve(g.values.size() * static_cast<std::size_t>(k));
    for (double v : g.values)
        for (int i = 0; i < k; ++i) out.values.push_back(v);
    return out;
}

GridDensity gaussian_cells(const std::vector<double>& centers, const std::vector<double>& weights,
                           double s, double step) {
    double lo = centers.front() - kGaussianTruncation * s;
    double hi = centers.back() + kGaussianTruncation * s;
    double origin = std::floor(lo / step) * step;
    auto n = static_cast<std::size_t>(std::ceil((hi - origin) / step)) + 1;
    if (n > kMaxCells) throw CapacityError("gaussian discretization exceeds the cell cap");
    std::vector<double> masses(n, 0.0);
    for (std::size_t i = 0; i < centers.size(); ++i) {
        const double c = centers[i];
        long k0 = static_cast<long>(std::floor((c - kGaussianTruncation * s - origin) / step));
        long k1 = static_cast<long>(std::ceil((c + kGaussianTruncation * s - origin) / step));
        k0 = std::max(k0, 0L);
        k1 = std::min(k1, static_cast<long>(n) - 1);
        double prev = normal_cdf((origin + k0 * step - c) / s);
        for (long k = k0; k <= k1; ++k) {
            double next = normal_cdf((origin + (k + 1) * step - c) / s);
            masses[k] += weights[i] * (next - prev);
            prev = next;
        }
    }
    return cells_to_density(std::move(masses), origin, step);
}

const std::string kTruncationNote = "gaussian truncated at +-10 std on a grid";

}  // namespace

double mean_abs_power(double u0, double u1, double alpha) {
    double a = std::abs(u0), b = std::abs(u1);
    if (u0 == u1) return std::pow(a, alpha);
    if ((u0 < 0.0) != (u1 < 0.0) && a > 0.0 && b > 0.0) {
        return (std::pow(a, alpha + 1.0) + std::pow(b, alpha + 1.0)) / ((alpha + 1.0) * (a + b));
    }
    if (a > b) std::swap(a, b);
    // (b^(α+1) - a^(α+1)) / ((α+1)(b-a)) = b^α (1 - r^(α+1)) / ((α+1)(1-r)), r = a/b.
    double e = (b - a) / b;
    double ratio = -std::expm1((alpha + 1.0) * std::log1p(-e)) / e;
    return std::pow(b, alpha) * ratio / (alpha + 1.0);
}

double gaussian_abs_moment(double m, double s, double alpha) {
    if (s == 0.0) return std::pow(std::abs(m), alpha);
    const double pi = std::acos(-1.0);
    double d = m / s;
    double base = std::pow(2.0, 0.5 * alpha) * std::tgamma(0.5 * (alpha + 1.0)) / std::sqrt(pi);
    if (d == 0.0) return std::pow(s, alpha) * base;
    if (std::abs(d) > 30.0) {
        // Far from the kink |m + sZ|^α is smooth on the bulk of the normal
        // law; Gauss-Hermite integration is exact enough and avoids the
        // cancellation in the hypergeometric series.
        return detail::gauss_hermite_expectation(
            [&](double z) { return std::pow(std::abs(m + s * z), alpha); });
    }
    // Kummer transform keeps the series terms positive.
    double f = std::exp(-0.5 * d * d) *
               boost::math::hypergeometric_1F1(0.5 * (alpha + 1.0), 0.5, 0.5 * d * d);
    return std::pow(s, alpha) * base * f;
}

Measure1D::Measure1D(Variant v, std::string note) : v_(std::move(v)), note_(std::move(note)) {
    std::visit([](const auto& x) { validate(x); }, v_);
}

Measure1D Measure1D::atoms(std::vector<double> points, std::vector<double> weights) {
    return Measure1D(Atoms{std::move(points), std::move(weights)});
}

Measure1D Measure1D::dirac(double x) { return atoms({x}, {1.0}); }

Measure1D Measure1D::grid(double origin, double step, std::vector<double> values) {
    return Measure1D(GridDensity{origin, step, std::move(values)});
}

Measure1D Measure1D::uniform(double a, double b, std::size_t cells) {
    if (!(b > a) || cells == 0) throw RepresentationError("uniform: need a < b and cells > 0");
    double step = (b - a) / static_cast<double>(cells);
    return grid(a, step, std::vector<double>(cells, 1.0 / (b - a)));
}

Measure1D Measure1D::quantile_table(std::vector<double> levels, std::vector<double> values) {
    return Measure1D(QuantileTable{std::move(levels), std::move(values)});
}

Measure1D Measure1D::gaussian(double mean, double std) { return Measure1D(Gaussian{mean, std}); }

std::string_view Measure1D::kind_name() const noexcept {
    switch (kind()) {
        case MeasureKind::atoms: return "atoms";
        case MeasureKind::grid: return "grid";
        case MeasureKind::quantile: return "quantile";
        case MeasureKind::gaussian: return "gaussian";
    }
    return "unknown";
}

const Atoms& Measure1D::as_atoms() const {
    if (auto p = std::get_if<Atoms>(&v_)) return *p;
    throw RepresentationError("measure is not an atoms measure");
}
const GridDensity& Measure1D::as_grid() const {
    if (auto p = std::get_if<GridDensity>(&v_)) return *p;
    throw RepresentationError("measure is not a grid density");
}
const QuantileTable& Measure1D::as_quantile() const {
    if (auto p = std::get_if<QuantileTable>(&v_)) return *p;
    throw RepresentationError("measure is not a quantile table");
}
const Gaussian& Measure1D::as_gaussian() const {
    if (auto p = std::get_if<Gaussian>(&v_)) return *p;
    throw RepresentationError("measure is not a gaussian");
}

std::vector<QuantilePiece> quantile_pieces(const Measure1D& mu) {
    std::vector<QuantilePiece> out;
    std::visit(
        overloaded{
            [&](const Atoms& a) {
                double t = 0.0;
                for (std::size_t i = 0; i < a.points.size(); ++i) {
                    double next = (i + 1 == a.points.size()) ? 1.0 : t + a.weights[i];
                    out.push_back({t, next, a.points[i], a.points[i]});
                    t = next;
                }
            },
            [&](const GridDensity& g) {
                double total = std::accumulate(g.values.begin(), g.values.end(), 0.0);
                double cum = 0.0;
                std::size_t last = g.values.size();
                while (last > 0 && g.values[last - 1] == 0.0) --last;
                for (std::size_t k = 0; k < last; ++k) {
                    if (g.values[k] == 0.0) continue;
                    double next = (k + 1 == last) ? 1.0 : (cum + g.values[k]) / total;
                    double a = g.origin + static_cast<double>(k) * g.step;
                    out.push_back({cum / total, next, a, a + g.step});
                    cum += g.values[k];
                }
            },
            [&](const QuantileTable& q) {
                const std::size_t n = q.levels.size();
                out.push_back({0.0, q.levels[0], q.values[0], q.values[0]});
                for (std::size_t i = 0; i + 1 < n; ++i)
                    out.push_back({q.levels[i], q.levels[i + 1], q.values[i], q.values[i + 1]});
                out.push_back({q.levels[n - 1], 1.0, q.values[n - 1], q.values[n - 1]});
            },
            [&](const Gaussian&) {
                throw ConversionError(
                    "gaussian quantile is not piecewise affine; convert with to_grid first");
            }},
        mu.variant());
    return out;
}

double quantile(const Measure1D& mu, double t) {
    if (!(t > 0.0 && t < 1.0)) throw DomainError("quantile level must lie in (0, 1)");
    if (auto g = std::get_if<Gaussian>(&mu.variant())) {
        return boost::math::quantile(boost::math::normal(g->mean, g->std), t);
    }
    auto pieces = quantile_pieces(mu);
    auto it = std::lower_bound(pieces.begin(), pieces.end(), t,
                               [](const QuantilePiece& p, double v) { return p.t1 < v; });
    if (it == pieces.end()) it = std::prev(pieces.end());
    const auto& p = *it;
    if (p.q0 == p.q1) return p.q0;
    double f = (t - p.t0) / (p.t1 - p.t0);
    return p.q0 + f * (p.q1 - p.q0);
}

double cdf(const Measure1D& mu, double x) {
    return std::visit(
        overloaded{
            [&](const Atoms& a) {
                double s = 0.0;
                for (std::size_t i = 0; i < a.points.size() && a.points[i] <= x; ++i)
                    s += a.weights[i];
                return std::min(s, 1.0);
            },
            [&](const GridDensity& g) {
                double s = 0.0;
                for (std::size_t k = 0; k < g.values.size(); ++k) {
                    double a = g.origin + static_cast<double>(k) * g.step;
                    if (x <= a) break;
                    s += g.values[k] * std::min(g.step, x - a);
                }
                return std::clamp(s, 0.0, 1.0);
            },
            [&](const QuantileTable&) {
                double s = 0.0;
                for (const auto& p : quantile_pieces(mu)) {
                    if (p.q1 <= x) {
                        s = p.t1;
                    } else if (p.q0 <= x) {
                        s = p.t0 + (p.t1 - p.t0) * (x - p.q0) / (p.q1 - p.q0);
                        break;
                    } else {
                        break;
                    }
                }
                return s;
            },
            [&](const Gaussian& g) { return normal_cdf((x - g.mean) / g.std); }},
        mu.variant());
}

double deviation(const Measure1D& mu, double y, Exponent alpha) {
    if (alpha.is_infinite()) {
        Interval h = support_hull(mu);
        return std::max(std::abs(h.lo - y), std::abs(h.hi - y));
    }
    const double a = alpha.value();
    double integral = std::visit(
        overloaded{
            [&](const Atoms& at) {
                double s = 0.0;
                for (std::size_t i = 0; i < at.points.size(); ++i)
                    s += at.weights[i] * std::pow(std::abs(at.points[i] - y), a);
                return s;
            },
            [&](const GridDensity& g) {
                double s = 0.0;
                for (std::size_t k = 0; k < g.values.size(); ++k) {
                    if (g.values[k] == 0.0) continue;
                    double lo = g.origin + static_cast<double>(k) * g.step;
                    s += g.values[k] * cell_abs_power(lo, lo + g.step, y, a);
                }
                return s;
            },
            [&](const QuantileTable& q) {
                if (heavy_tailed(q)) return kInf;
                double s = 0.0;
                for (const auto& p : quantile_pieces(mu))
                    s += (p.t1 - p.t0) * mean_abs_power(p.q0 - y, p.q1 - y, a);
                return s;
            },
            [&](const Gaussian& g) { return gaussian_abs_moment(g.mean - y, g.std, a); }},
        mu.variant());
    if (std::isinf(integral)) return kInf;
    return std::pow(integral, 1.0 / a);
}

Interval support_hull(const Measure1D& mu) {
    return std::visit(
        overloaded{[](const Atoms& a) { return Interval{a.points.front(), a.points.back()}; },
                   [](const GridDensity& g) {
                       std::size_t first = 0, last = g.values.size();
                       while (first < last && g.values[first] == 0.0) ++first;
                       while (last > first && g.values[last - 1] == 0.0) --last;
                       return Interval{g.origin + static_cast<double>(first) * g.step,
                                       g.origin + static_cast<double>(last) * g.step};
                   },
                   [](const QuantileTable& q) { return Interval{q.values.front(), q.values.back()}; },
                   [](const Gaussian&) { return Interval{-kInf, kInf}; }},
        mu.variant());
}

double mean(const Measure1D& mu) {
    return std::visit(
        overloaded{[](const Atoms& a) {
                       double s = 0.0;
                       for (std::size_t i = 0; i < a.points.size(); ++i)
                           s += a.points[i] * a.weights[i];
                       return s;
                   },
                   [](const GridDensity& g) {
                       double s = 0.0, total = 0.0;
                       for (std::size_t k = 0; k < g.values.size(); ++k) {
                           s += g.values[k] * (g.origin + (static_cast<double>(k) + 0.5) * g.step);
                           total += g.values[k];
                       }
                       return s / total;
                   },
                   [&](const QuantileTable& q) {
                       if (heavy_tailed(q)) return std::numeric_limits<double>::quiet_NaN();
                       double s = 0.0;
                       for (const auto& p : quantile_pieces(mu)) s += (p.t1 - p.t0) * 0.5 * (p.q0 + p.q1);
                       return s;
                   },
                   [](const Gaussian& g) { return g.mean; }},
        mu.variant());
}

double variance(const Measure1D& mu) {
    if (auto g = std::get_if<Gaussian>(&mu.variant())) return g->std * g->std;
    if (auto q = std::get_if<QuantileTable>(&mu.variant()); q && heavy_tailed(*q)) return kInf;
    double d = deviation(mu, mean(mu), 2.0);
    return d * d;
}

SpreadResult spread(const Measure1D& mu, Exponent alpha) {
    if (alpha.is_infinite()) {
        Interval h = support_hull(mu);
        if (std::isinf(h.lo) || std::isinf(h.hi)) {
            double center = mu.kind() == MeasureKind::gaussian ? mu.as_gaussian().mean
                                                               : quantile(mu, 0.5);
            return {kInf, center};
        }
        double mid = 0.5 * (h.lo + h.hi);
        return {0.5 * (h.hi - h.lo), mid};
    }
    if (auto g = std::get_if<Gaussian>(&mu.variant())) {
        return {deviation(mu, g->mean, alpha), g->mean};
    }
    if (auto q = std::get_if<QuantileTable>(&mu.variant()); q && heavy_tailed(*q)) {
        return {kInf, quantile(mu, 0.5)};
    }
    const double a = alpha.value();
    if (a == 1.0) {
        double m = quantile(mu, 0.5);
        return {deviation(mu, m, alpha), m};
    }
    if (a == 2.0) {
        double m = mean(mu);
        return {deviation(mu, m, alpha), m};
    }
    Interval h = support_hull(mu);
    if (h.lo == h.hi) return {0.0, h.lo};
    auto objective = [&](double y) { return deviation(mu, y, alpha); };
    double y = detail::golden_section_min(objective, h.lo, h.hi, 1e-10 * (h.hi - h.lo));
    return {objective(y), y};
}

Measure1D shift(const Measure1D& mu, double a) {
    return std::visit(
        overloaded{[&](Atoms at) {
                       for (double& x : at.points) x += a;
                       return Measure1D(std::move(at), mu.note());
                   },
                   [&](GridDensity g) {
                       g.origin += a;
                       return Measure1D(std::move(g), mu.note());
                   },
                   [&](QuantileTable q) {
                       for (double& x : q.values) x += a;
                       return Measure1D(std::move(q), mu.note());
                   },
                   [&](Gaussian g) {
                       g.mean += a;
                       return Measure1D(g, mu.note());
                   }},
        mu.variant());
}

Measure1D scale(const Measure1D& mu, double lambda) {
    if (lambda == 0.0 || !std::isfinite(lambda)) throw DomainError("scale factor must be nonzero");
    return std::visit(
        overloaded{[&](Atoms at) {
                       for (double& x : at.points) x *= lambda;
                       if (lambda < 0) {
                           std::reverse(at.points.begin(), at.points.end());
                           std::reverse(at.weights.begin(), at.weights.end());
                       }
                       return Measure1D(std::move(at), mu.note());
                   },
                   [&](GridDensity g) {
                       double end = g.origin + static_cast<double>(g.values.size()) * g.step;
                       g.origin = lambda > 0 ? lambda * g.origin : lambda * end;
                       g.step *= std::abs(lambda);
                       for (double& v : g.values) v /= std::abs(lambda);
                       if (lambda < 0) std::reverse(g.values.begin(), g.values.end());
                       return Measure1D(std::move(g), mu.note());
                   },
                   [&](QuantileTable q) {
                       for (double& x : q.values) x *= lambda;
                       if (lambda < 0) {
                           // Q_{-X}(t) = -Q_X(1 - t) away from jumps.
                           std::reverse(q.values.begin(), q.values.end());
                           std::reverse(q.levels.begin(), q.levels.end());
                           for (double& t : q.levels) t = 1.0 - t;
                       }
                       return Measure1D(std::move(q), mu.note());
                   },
                   [&](Gaussian g) {
                       g.mean *= lambda;
                       g.std *= std::abs(lambda);
                       return Measure1D(g, mu.note());
                   }},
        mu.variant());
}

Measure1D to_grid(const Measure1D& mu, double step) {
    if (!(step > 0.0)) throw DomainError("to_grid: step must be positive");
    if (auto g = std::get_if<Gaussian>(&mu.variant())) {
        return Measure1D(gaussian_cells({g->mean}, {1.0}, g->std, step),
                         join_notes(mu.note(), kTruncationNote));
    }
    if (auto q = std::get_if<QuantileTable>(&mu.variant()); q && heavy_tailed(*q)) {
        throw ConversionError("to_grid: quantile table has an unbounded tail");
    }
    Interval h = support_hull(mu);
    double origin = std::floor(h.lo / step) * step;
    auto n = static_cast<std::size_t>(std::floor((h.hi - origin) / step)) + 1;
    if (n > kMaxCells) throw CapacityError("to_grid: too many cells for the requested step");
    std::vector<double> masses(n, 0.0);
    for (const auto& p : quantile_pieces(mu)) deposit(masses, origin, step, p.q0, p.q1, p.t1 - p.t0);
    std::string note = mu.kind() == MeasureKind::grid ? mu.note()
                                                      : join_notes(mu.note(), "rebinned to a grid");
    return Measure1D(cells_to_density(std::move(masses), origin, step), note);
}

Measure1D mixture(const Measure1D& mu, const Measure1D& nu, double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw DomainError("mixture weight must lie in [0, 1]");
    if (lambda == 1.0) return mu;
    if (lambda == 0.0) return nu;
    if (mu.kind() == MeasureKind::atoms && nu.kind() == MeasureKind::atoms) {
        std::vector<std::pair<double, double>> pw;
        const auto& a = mu.as_atoms();
        const auto& b = nu.as_atoms();
        for (std::size_t i = 0; i < a.points.size(); ++i) pw.emplace_back(a.points[i], lambda * a.weights[i]);
        for (std::size_t i = 0; i < b.points.size(); ++i)
            pw.emplace_back(b.points[i], (1 - lambda) * b.weights[i]);
        return Measure1D(merge_atoms(std::move(pw)));
    }
    auto pick_step = [](const Measure1D& m) {
        switch (m.kind()) {
            case MeasureKind::grid: return m.as_grid().step;
            case MeasureKind::gaussian: return m.as_gaussian().std / 64.0;
            default: {
                Interval h = support_hull(m);
                return h.hi > h.lo ? (h.hi - h.lo) / 4096.0 : 1e-3;
            }
        }
    };
    double step = std::min(pick_step(mu), pick_step(nu));
    GridDensity a = to_grid(mu, step).as_grid();
    GridDensity b = to_grid(nu, step).as_grid();
    double origin = std::min(a.origin, b.origin);
    double end = std::max(a.origin + static_cast<double>(a.values.size()) * step,
                          b.origin + static_cast<double>(b.values.size()) * step);
    auto n = static_cast<std::size_t>(std::llround((end - origin) / step));
    std::vector<double> masses(n, 0.0);
    auto add = [&](const GridDensity& g, double w) {
        auto off = static_cast<std::size_t>(std::llround((g.origin - origin) / step));
        for (std::size_t k = 0; k < g.values.size(); ++k) masses[off + k] += w * g.values[k] * step;
    };
    add(a, lambda);
    add(b, 1 - lambda);
    bool exact = mu.kind() == MeasureKind::grid && nu.kind() == MeasureKind::grid &&
                 mu.as_grid().step == nu.as_grid().step;
    return Measure1D(cells_to_density(std::move(masses), origin, step),
                     exact ? join_notes(mu.note(), nu.note()) : "mixture rebinned to a grid");
}

Measure1D convolve(const Measure1D& mu, const Measure1D& nu) {
    const auto km = mu.kind(), kn = nu.kind();
    std::string notes = join_notes(mu.note(), nu.note());

    // A single point mass is an exact translation for every representation.
    if (km == MeasureKind::atoms && mu.as_atoms().points.size() == 1)
        return shift(nu, mu.as_atoms().points[0]);
    if (kn == MeasureKind::atoms && nu.as_atoms().points.size() == 1)
        return shift(mu, nu.as_atoms().points[0]);

    if (km == MeasureKind::quantile || kn == MeasureKind::quantile) {
        throw ConversionError(
            "convolve: quantile tables only convolve with a point mass; convert with to_grid "
            "first");
    }
    if (km == MeasureKind::gaussian && kn == MeasureKind::gaussian) {
        const auto& a = mu.as_gaussian();
        const auto& b = nu.as_gaussian();
        return Measure1D(Gaussian{a.mean + b.mean, std::hypot(a.std, b.std)}, notes);
    }
    if (km == MeasureKind::atoms && kn == MeasureKind::atoms) {
        const auto& a = mu.as_atoms();
        const auto& b = nu.as_atoms();
        if (a.points.size() * b.points.size() > kMaxCells)
            throw CapacityError("convolve: atom product exceeds the size cap");
        std::vector<std::pair<double, double>> pw;
        pw.reserve(a.points.size() * b.points.size());
        for (std::size_t i = 0; i < a.points.size(); ++i)
            for (std::size_t j = 0; j < b.points.size(); ++j)
                pw.emplace_back(a.points[i] + b.points[j], a.weights[i] * b.weights[j]);
        return Measure1D(merge_atoms(std::move(pw)), notes);
    }
    // Order the remaining cases so that `first` is atoms or grid.
    const Measure1D& first = (km == MeasureKind::gaussian) ? nu : mu;
    const Measure1D& second = (km == MeasureKind::gaussian) ? mu : nu;

    if (first.kind() == MeasureKind::atoms && second.kind() == MeasureKind::gaussian) {
        const auto& a = first.as_atoms();
        const auto& g = second.as_gaussian();
        std::vector<double> centers = a.points;
        for (double& c : centers) c += g.mean;
        double step = g.std / 32.0;
        double width = centers.back() - centers.front() + 2 * kGaussianTruncation * g.std;
        step = std::max(step, width / static_cast<double>(kMaxCells / 2));
        return Measure1D(gaussian_cells(centers, a.weights, g.std, step),
                         join_notes(notes, kTruncationNote));
    }
    if (first.kind() == MeasureKind::grid && second.kind() == MeasureKind::gaussian) {
        const auto& g = second.as_gaussian();
        GridDensity grid = refine(first.as_grid(),
                                  static_cast<int>(std::ceil(first.as_grid().step / (g.std / 16.0))));
        GridDensity kernel = gaussian_cells({0.0}, {1.0}, g.std, grid.step);
        kernel.origin += g.mean;
        auto masses = discrete_convolution(grid.values, kernel.values);
        return Measure1D(cells_to_density(std::move(masses),
                                          grid.origin + kernel.origin + 0.5 * grid.step, grid.step),
                         join_notes(notes, kTruncationNote));
    }

    // Remaining: grid * grid, grid * atoms.
    auto as_lattice_grid = [](const Measure1D& m, double step) -> std::pair<GridDensity, bool> {
        if (m.kind() == MeasureKind::grid) {
            const auto& g = m.as_grid();
            double ratio = g.step / step;
            long k = std::lround(ratio);
            if (std::abs(ratio - static_cast<double>(k)) < 1e-9 * ratio) return {refine(g, static_cast<int>(k)), true};
            return {to_grid(m, step).as_grid(), false};
        }
        return {to_grid(m, step).as_grid(), false};
    };

    if (km == MeasureKind::grid && kn == MeasureKind::grid) {
        double step = std::min(mu.as_grid().step, nu.as_grid().step);
        auto [a, ea] = as_lattice_grid(mu, step);
        auto [b, eb] = as_lattice_grid(nu, step);
        auto masses = discrete_convolution(a.values, b.values);
        for (double& m : masses) m *= step * step;
        return Measure1D(cells_to_density(std::move(masses), a.origin + b.origin + 0.5 * step, step),
                         (ea && eb) ? notes : join_notes(notes, "grids resampled to a common step"));
    }

    const Measure1D& grid_m = (km == MeasureKind::grid) ? mu : nu;
    const Atoms& atoms = (km == MeasureKind::atoms) ? mu.as_atoms() : nu.as_atoms();
    const GridDensity& g = grid_m.as_grid();
    // Exact when every atom sits on the grid lattice relative to the first.
    bool on_lattice = true;
    for (double x : atoms.points) {
        double r = (x - atoms.points.front()) / g.step;
        on_lattice &= std::abs(r - std::round(r)) < 1e-9;
    }
    double span = atoms.points.back() - atoms.points.front();
    auto n = static_cast<std::size_t>(std::ceil(span / g.step)) + g.values.size() + 2;
    if (n > kMaxCells) throw CapacityError("convolve: result grid exceeds the cell cap");
    double origin = g.origin + atoms.points.front();
    std::vector<double> masses(n, 0.0);
    for (std::size_t i = 0; i < atoms.points.size(); ++i) {
        double off = atoms.points[i] - atoms.points.front();
        for (std::size_t k = 0; k < g.values.size(); ++k) {
            if (g.values[k] == 0.0) continue;
            double lo = origin + off + static_cast<double>(k) * g.step;
            if (on_lattice) {
                auto idx = static_cast<std::size_t>(std::llround(off / g.step)) + k;
                masses[idx] += atoms.weights[i] * g.values[k] * g.step;
            } else {
                deposit(masses, origin, g.step, lo, lo + g.step, atoms.weights[i] * g.values[k] * g.step);
            }
        }
    }
    return Measure1D(cells_to_density(std::move(masses), origin, g.step),
                     on_lattice ? notes : join_notes(notes, "atom shifts rebinned to the grid"));
}

}  // namespace ukit
