#include "ukit/transport.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <queue>
#include <string>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "ukit/errors.hpp"

namespace ukit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLevelTie = 1e-13;

bool heavy(const Measure1D& m) {
    if (m.kind() != MeasureKind::quantile) return false;
    const auto& q = m.as_quantile();
    return std::isinf(q.values.front()) || std::isinf(q.values.back());
}

double piece_value(const QuantilePiece& p, double t) {
    if (p.q0 == p.q1 || p.t1 == p.t0) return p.q0;
    t = std::clamp(t, p.t0, p.t1);
    return p.q0 + (p.q1 - p.q0) * (t - p.t0) / (p.t1 - p.t0);
}

// Walks the common refinement of two piece lists, calling
// f(t_start, t_end, a_start, a_end, b_start, b_end) for every nonempty
// sub-interval with the one-sided quantile values at its ends.
template <class F>
void merged_walk(const std::vector<QuantilePiece>& A, const std::vector<QuantilePiece>& B, F&& f) {
    std::size_t i = 0, j = 0;
    double t = 0.0;
    while (i < A.size() && j < B.size()) {
        double end = std::min(A[i].t1, B[j].t1);
        // Levels that differ only by rounding are one breakpoint.
        const bool tie = std::abs(A[i].t1 - B[j].t1) <= kLevelTie;
        if (tie) end = std::max(A[i].t1, B[j].t1);
        if (i + 1 == A.size() && j + 1 == B.size()) end = 1.0;
        if (end > t) {
            f(t, end, piece_value(A[i], t), piece_value(A[i], end), piece_value(B[j], t),
              piece_value(B[j], end));
            t = end;
        }
        bool adv_a = (tie || A[i].t1 <= end) && i + 1 < A.size();
        bool adv_b = (tie || B[j].t1 <= end) && j + 1 < B.size();
        if (!adv_a && !adv_b) {
            if (end >= 1.0) break;
            // Floating-point ties at the final level.
            if (i + 1 < A.size()) ++i;
            else if (j + 1 < B.size()) ++j;
            else break;
            continue;
        }
        if (adv_a) ++i;
        if (adv_b) ++j;
    }
}

double gaussian_pair(const Gaussian& a, const Gaussian& b, Exponent alpha) {
    double dm = a.mean - b.mean, ds = a.std - b.std;
    if (alpha.is_infinite()) return ds == 0.0 ? std::abs(dm) : kInf;
    return std::pow(gaussian_abs_moment(dm, std::abs(ds), alpha.value()), 1.0 / alpha.value());
}

double gaussian_vs_pieces(const Gaussian& g, const std::vector<QuantilePiece>& pieces, double alpha) {
    using boost::math::quadrature::gauss_kronrod;
    const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * std::acos(-1.0));
    boost::math::normal nd(0.0, 1.0);
    auto z_of = [&](double t) {
        if (t <= 0.0) return -kInf;
        if (t >= 1.0) return kInf;
        return boost::math::quantile(nd, t);
    };
    double total = 0.0;
    for (const auto& p : pieces) {
        if (!(p.t1 > p.t0)) continue;
        double za = z_of(p.t0), zb = z_of(p.t1);
        auto integrand = [&](double z) {
            double t = boost::math::cdf(nd, z);
            double q = piece_value(p, std::clamp(t, p.t0, p.t1));
            return std::pow(std::abs(g.mean + g.std * z - q), alpha) * inv_sqrt_2pi *
                   std::exp(-0.5 * z * z);
        };
        std::vector<double> cuts{za};
        if (p.q0 == p.q1) {
            double kink = (p.q0 - g.mean) / g.std;
            if (kink > za && kink < zb) cuts.push_back(kink);
        }
        cuts.push_back(zb);
        for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
            total += gauss_kronrod<double, 31>::integrate(integrand, cuts[k], cuts[k + 1], 15, 1e-12);
        }
    }
    return std::pow(total, 1.0 / alpha);
}

std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace

double wasserstein(const Measure1D& mu, const Measure1D& nu, Exponent alpha) {
    if (heavy(mu) || heavy(nu)) return kInf;
    const bool gm = mu.kind() == MeasureKind::gaussian, gn = nu.kind() == MeasureKind::gaussian;
    if (gm && gn) return gaussian_pair(mu.as_gaussian(), nu.as_gaussian(), alpha);
    if (gm || gn) {
        if (alpha.is_infinite()) return kInf;
        const auto& g = gm ? mu.as_gaussian() : nu.as_gaussian();
        return gaussian_vs_pieces(g, quantile_pieces(gm ? nu : mu), alpha.value());
    }
    auto A = quantile_pieces(mu), B = quantile_pieces(nu);
    if (alpha.is_infinite()) {
        double sup = 0.0;
        merged_walk(A, B, [&](double, double, double a0, double a1, double b0, double b1) {
            sup = std::max({sup, std::abs(a0 - b0), std::abs(a1 - b1)});
        });
        return sup;
    }
    const double a = alpha.value();
    double total = 0.0;
    merged_walk(A, B, [&](double t0, double t1, double a0, double a1, double b0, double b1) {
        total += (t1 - t0) * mean_abs_power(a0 - b0, a1 - b1, a);
    });
    return std::pow(total, 1.0 / a);
}

double wasserstein_quadrature(const Measure1D& mu, const Measure1D& nu, double alpha) {
    if (!(alpha >= 1.0) || std::isinf(alpha)) throw DomainError("quadrature needs a finite alpha >= 1");
    if (heavy(mu) || heavy(nu)) return kInf;
    struct Source {
        const Measure1D* m;
        std::vector<QuantilePiece> pieces;
        // Q(t) with tc = 1 - t supplied separately to keep precision near 1.
        double operator()(double t, double tc) const {
            if (m->kind() == MeasureKind::gaussian) {
                const auto& g = m->as_gaussian();
                boost::math::normal nd(g.mean, g.std);
                if (tc < 0.5) return boost::math::quantile(boost::math::complement(nd, tc));
                return boost::math::quantile(nd, t);
            }
            auto it = std::lower_bound(pieces.begin(), pieces.end(), t,
                                       [](const QuantilePiece& p, double v) { return p.t1 < v; });
            if (it == pieces.end()) it = std::prev(pieces.end());
            return piece_value(*it, t);
        }
    };
    auto make = [](const Measure1D& m) {
        Source s{&m, {}};
        if (m.kind() != MeasureKind::gaussian) s.pieces = quantile_pieces(m);
        return s;
    };
    Source A = make(mu), B = make(nu);
    std::vector<double> cuts{0.0, 1.0};
    for (const auto* s : {&A, &B})
        for (const auto& p : s->pieces) cuts.push_back(p.t1);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    cuts.erase(std::remove_if(cuts.begin(), cuts.end(), [](double c) { return c > 1.0; }), cuts.end());

    boost::math::quadrature::tanh_sinh<double> ts;
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double lo = cuts[k], hi = cuts[k + 1];
        if (!(hi > lo)) continue;
        auto f = [&](double t, double xc) {
            // xc is the signed distance to the nearer endpoint.
            double tt = xc > 0 ? hi - xc : lo - xc;
            double tc = xc > 0 ? (1.0 - hi) + xc : 1.0 - tt;
            tt = std::clamp(tt, std::numeric_limits<double>::min(), 1.0);
            (void)t;
            return std::pow(std::abs(A(tt, tc) - B(tt, tc)), alpha);
        };
        total += ts.integrate(f, lo, hi, 1e-12);
    }
    return std::pow(total, 1.0 / alpha);
}

TransportPlan solve_transport_lp(const std::vector<double>& supply,
                                 const std::vector<double>& demand, const Eigen::MatrixXd& cost) {
    const int m = static_cast<int>(supply.size()), n = static_cast<int>(demand.size());
    if (m == 0 || n == 0) throw DimensionError("transport LP: empty marginals");
    if (cost.rows() != m || cost.cols() != n) throw DimensionError("transport LP: cost matrix shape");

    TransportPlan plan;
    plan.flow = Eigen::MatrixXd::Zero(m, n);
    Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> basic =
        Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(m, n, false);

    // Northwest-corner start: m + n - 1 basic cells forming a spanning tree.
    {
        std::vector<double> ra = supply, rb = demand;
        int i = 0, j = 0;
        while (true) {
            double x = std::min(ra[i], rb[j]);
            plan.flow(i, j) = x;
            basic(i, j) = true;
            ra[i] -= x;
            rb[j] -= x;
            if (i == m - 1 && j == n - 1) break;
            if (i == m - 1) ++j;
            else if (j == n - 1) ++i;
            else if (ra[i] <= rb[j]) ++i;
            else ++j;
        }
    }

    const double scale = std::max(1.0, cost.cwiseAbs().maxCoeff());
    const double tol = 1e-13 * scale;
    std::vector<double> u(m), v(n);
    const int nodes = m + n;
    std::vector<std::vector<int>> adj(nodes);

    auto rebuild_adjacency = [&]() {
        for (auto& a : adj) a.clear();
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j)
                if (basic(i, j)) {
                    adj[i].push_back(m + j);
                    adj[m + j].push_back(i);
                }
    };
    auto compute_potentials = [&]() {
        std::vector<char> seen(nodes, 0);
        std::queue<int> q;
        u[0] = 0.0;
        seen[0] = 1;
        q.push(0);
        while (!q.empty()) {
            int a = q.front();
            q.pop();
            for (int b : adj[a]) {
                if (seen[b]) continue;
                seen[b] = 1;
                if (a < m) v[b - m] = cost(a, b - m) - u[a];
                else u[b] = cost(b, a - m) - v[a - m];
                q.push(b);
            }
        }
    };

    const int max_pivots = 50 * m * n + 1000;
    for (;;) {
        rebuild_adjacency();
        compute_potentials();
        // Bland's rule: first cell with a negative reduced cost.
        int pi = -1, pj = -1;
        for (int i = 0; i < m && pi < 0; ++i)
            for (int j = 0; j < n; ++j)
                if (!basic(i, j) && cost(i, j) - u[i] - v[j] < -tol) {
                    pi = i;
                    pj = j;
                    break;
                }
        if (pi < 0) break;
        if (++plan.pivots > max_pivots)
            throw ConvergenceError("transport LP: pivot limit exceeded", 0.0);

        // Tree path from column node pj to row node pi.
        std::vector<int> parent(nodes, -1);
        std::vector<char> seen(nodes, 0);
        std::queue<int> q;
        q.push(m + pj);
        seen[m + pj] = 1;
        while (!q.empty() && !seen[pi]) {
            int a = q.front();
            q.pop();
            for (int b : adj[a]) {
                if (seen[b]) continue;
                seen[b] = 1;
                parent[b] = a;
                q.push(b);
            }
        }
        // Edges along the path, listed from the row end; they alternate -, +, ...
        std::vector<std::pair<int, int>> cycle;
        for (int node = pi; node != m + pj; node = parent[node]) {
            int other = parent[node];
            int r = node < m ? node : other, c = node < m ? other - m : node - m;
            cycle.emplace_back(r, c);
        }
        double theta = kInf;
        int leave = -1;
        for (std::size_t k = 0; k < cycle.size(); k += 2) {
            auto [r, c] = cycle[k];
            double f = plan.flow(r, c);
            if (f < theta || (f == theta && leave >= 0 &&
                              r * n + c < cycle[leave].first * n + cycle[leave].second)) {
                theta = f;
                leave = static_cast<int>(k);
            }
        }
        plan.flow(pi, pj) += theta;
        for (std::size_t k = 0; k < cycle.size(); ++k) {
            auto [r, c] = cycle[k];
            plan.flow(r, c) += (k % 2 == 0) ? -theta : theta;
        }
        basic(pi, pj) = true;
        auto [lr, lc] = cycle[leave];
        basic(lr, lc) = false;
        plan.flow(lr, lc) = 0.0;
    }
    plan.flow = plan.flow.cwiseMax(0.0);
    plan.cost = (plan.flow.array() * cost.array()).sum();
    plan.u = u;
    plan.v = v;
    return plan;
}

namespace {

TransportPlan atoms_lp(const Measure1D& mu, const Measure1D& nu, double alpha) {
    if (mu.kind() != MeasureKind::atoms || nu.kind() != MeasureKind::atoms)
        throw RepresentationError("LP oracle requires atoms measures");
    if (!(alpha >= 1.0) || std::isinf(alpha)) throw DomainError("LP oracle requires finite alpha >= 1");
    const auto& a = mu.as_atoms();
    const auto& b = nu.as_atoms();
    if (a.points.size() > kLpAtomCap || b.points.size() > kLpAtomCap)
        throw CapacityError("LP oracle is capped at 64 atoms per measure");
    Eigen::MatrixXd c(a.points.size(), b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i)
        for (std::size_t j = 0; j < b.points.size(); ++j)
            c(i, j) = std::pow(std::abs(a.points[i] - b.points[j]), alpha);
    return solve_transport_lp(a.weights, b.weights, c);
}

}  // namespace

double wasserstein_lp_oracle(const Measure1D& mu, const Measure1D& nu, double alpha) {
    return std::pow(std::max(atoms_lp(mu, nu, alpha).cost, 0.0), 1.0 / alpha);
}

DualPotentials optimal_potentials(const Measure1D& mu, const Measure1D& nu, double alpha) {
    auto plan = atoms_lp(mu, nu, alpha);
    DualPotentials p;
    p.phi = plan.v;
    p.psi.resize(plan.u.size());
    for (std::size_t i = 0; i < plan.u.size(); ++i) p.psi[i] = -plan.u[i];
    return p;
}

double dual_certificate(const Measure1D& mu, const Measure1D& nu, double alpha,
                        const std::vector<double>& phi, const std::vector<double>& psi) {
    const auto& a = mu.as_atoms();
    const auto& b = nu.as_atoms();
    if (phi.size() != b.points.size() || psi.size() != a.points.size())
        throw DimensionError("dual certificate: potential lengths must match the supports");
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        for (std::size_t j = 0; j < b.points.size(); ++j) {
            double c = std::pow(std::abs(a.points[i] - b.points[j]), alpha);
            double lhs = phi[j] - psi[i];
            if (lhs > c + 1e-12 * (1.0 + std::abs(c))) {
                throw CertificateError("potentials not competitive at x=" + fmt_double(a.points[i]) +
                                       ", y=" + fmt_double(b.points[j]) + ": phi(y)-psi(x)=" +
                                       fmt_double(lhs) + " > |x-y|^alpha=" + fmt_double(c));
            }
        }
    }
    double value = 0.0;
    for (std::size_t j = 0; j < b.points.size(); ++j) value += phi[j] * b.weights[j];
    for (std::size_t i = 0; i < a.points.size(); ++i) value -= psi[i] * a.weights[i];
    return value;
}

double gaussian_w2(const Measure1D& mu, const Measure1D& nu) {
    const auto& a = mu.as_gaussian();
    const auto& b = nu.as_gaussian();
    return std::hypot(a.mean - b.mean, a.std - b.std);
}

MomentBracket moment_bounds_w2(const Measure1D& mu, const Measure1D& nu) {
    double va = variance(mu), vb = variance(nu);
    if (std::isinf(va) || std::isinf(vb)) {
        // One infinite second moment forces W2 = inf; two leave it undetermined.
        double lower = (std::isinf(va) && std::isinf(vb)) ? 0.0 : kInf;
        return {lower, kInf, false};
    }
    double dm = mean(mu) - mean(nu);
    double sa = std::sqrt(va), sb = std::sqrt(vb);
    return {(sa - sb) * (sa - sb) + dm * dm, (sa + sb) * (sa + sb) + dm * dm, true};
}

std::vector<CouplingCell> monotone_coupling(const Measure1D& mu, const Measure1D& nu) {
    auto pieces_of = [](const Measure1D& m) {
        if (m.kind() != MeasureKind::gaussian) return quantile_pieces(m);
        // Sampled pieces at 1/1024 resolution; values filled by exact quantiles.
        std::vector<QuantilePiece> out;
        for (int k = 0; k < 1024; ++k) out.push_back({k / 1024.0, (k + 1) / 1024.0, 0.0, 0.0});
        return out;
    };
    auto A = pieces_of(mu), B = pieces_of(nu);
    const bool ga = mu.kind() == MeasureKind::gaussian, gb = nu.kind() == MeasureKind::gaussian;
    std::vector<CouplingCell> cells;
    merged_walk(A, B, [&](double t0, double t1, double a0, double a1, double b0, double b1) {
        double mid = 0.5 * (t0 + t1);
        double x = ga ? quantile(mu, mid) : 0.5 * (a0 + a1);
        double y = gb ? quantile(nu, mid) : 0.5 * (b0 + b1);
        if (!cells.empty() && cells.back().x == x && cells.back().y == y) {
            cells.back().mass += t1 - t0;
        } else {
            cells.push_back({x, y, t1 - t0});
        }
    });
    return cells;
}

}  // namespace ukit
