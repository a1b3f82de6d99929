#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "internal.hpp"
#include "ukit/errors.hpp"
#include "ukit/spectral.hpp"

namespace ukit {

namespace {

// Hermite functions h_0..h_n evaluated at the given nodes; row k holds h_k.
Eigen::MatrixXd hermite_functions(int n, const std::vector<double>& x) {
    const auto m = static_cast<Eigen::Index>(x.size());
    Eigen::MatrixXd h(n + 1, m);
    const double c0 = std::pow(std::acos(-1.0), -0.25);
    for (Eigen::Index j = 0; j < m; ++j) {
        h(0, j) = c0 * std::exp(-0.5 * x[j] * x[j]);
        if (n > 0) h(1, j) = std::sqrt(2.0) * x[j] * h(0, j);
        for (int k = 2; k <= n; ++k)
            h(k, j) = std::sqrt(2.0 / k) * x[j] * h(k - 1, j) - std::sqrt((k - 1.0) / k) * h(k - 2, j);
    }
    return h;
}

// <h_m| |x|^a |h_n> for m, n <= n_max.
Eigen::MatrixXd moment_matrix(double a, int n_max) {
    const int nodes = n_max + (n_max % 2 == 0 ? 4 : 3);
    const auto rule = detail::generalized_hermite_function_rule(a, nodes);
    Eigen::MatrixXd h = hermite_functions(n_max, rule.nodes);
    Eigen::Map<const Eigen::VectorXd> w(rule.weights.data(), static_cast<Eigen::Index>(rule.weights.size()));
    Eigen::MatrixXd hw = h * w.asDiagonal();
    return hw * h.transpose();
}

struct SectorMatrices {
    Eigen::MatrixXd q, p;
};

SectorMatrices sector(const Eigen::MatrixXd& qa, const Eigen::MatrixXd& qb, int parity, int n) {
    std::vector<int> idx;
    for (int k = parity; k <= n; k += 2) idx.push_back(k);
    const auto m = static_cast<Eigen::Index>(idx.size());
    SectorMatrices s{Eigen::MatrixXd(m, m), Eigen::MatrixXd(m, m)};
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < m; ++j) {
            s.q(i, j) = qa(idx[i], idx[j]);
            // Hermite functions are Fourier eigenfunctions with eigenvalue (-i)^k.
            int d = (idx[i] - idx[j]) / 2;
            s.p(i, j) = (d % 2 == 0 ? 1.0 : -1.0) * qb(idx[i], idx[j]);
        }
    return s;
}

double lowest(const SectorMatrices& s, double a, double b, double log_dilation) {
    Eigen::MatrixXd h = std::exp(a * log_dilation) * s.q + std::exp(-b * log_dilation) * s.p;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues()[0];
}

struct SectorEstimate {
    double value = 0.0, raw = 0.0, dilation = 1.0;
    bool extrapolated = false;
};

SectorEstimate solve_sector(const Eigen::MatrixXd& qa, const Eigen::MatrixXd& qb, double a, double b,
                            int parity, int n) {
    SectorEstimate est;
    const int coarse = std::max(n / 4, 1 + parity);
    SectorMatrices sc = sector(qa, qb, parity, coarse);
    double ld = detail::golden_section_min([&](double l) { return lowest(sc, a, b, l); }, std::log(0.2),
                                           std::log(5.0), 1e-7);
    est.dilation = std::exp(ld);
    est.raw = lowest(sector(qa, qb, parity, n), a, b, ld);
    est.value = est.raw;
    if (n < 32) return est;
    // Richardson step in the basis size, taken only when the last three
    // differences decay geometrically at a consistent rate (algebraic
    // convergence); exponentially convergent sequences are left alone.
    double e[4];
    for (int k = 0; k < 3; ++k) e[k] = lowest(sector(qa, qb, parity, n >> (3 - k)), a, b, ld);
    e[3] = est.raw;
    double d1 = e[0] - e[1], d2 = e[1] - e[2], d3 = e[2] - e[3];
    if (d1 > 0.0 && d2 > 0.0 && d3 > 1e-11 * std::abs(e[3])) {
        double r1 = d1 / d2, r2 = d2 / d3;
        if (r1 > 1.1 && r2 > 1.1 && std::abs(std::log(r1 / r2)) < 0.25 * std::log(r2)) {
            est.value = e[3] - d3 / (r2 - 1.0);
            est.extrapolated = true;
        }
    }
    return est;
}

}  // namespace

OscillatorResult ground_energies_oscillator(double alpha, double beta, int n_max) {
    if (!(alpha >= 1.0) || !(beta >= 1.0) || !std::isfinite(alpha) || !std::isfinite(beta))
        throw DomainError("oscillator basis needs finite exponents >= 1");
    if (n_max < 1 || n_max > 400) throw DomainError("n_max must lie in [1, 400]");
    OscillatorResult out;
    const double top = std::max(alpha, beta);
    int n = n_max;
    if (top > 4.0) {
        // Matrix entries grow like (2n)^(top/2); keep them below 1e9.
        int cap = static_cast<int>(std::floor(0.5 * std::pow(1e9, 2.0 / top)));
        if (cap < n) {
            n = std::max(cap, 1);
            out.note = "basis capped at n=" + std::to_string(n) + " to bound quadrature roundoff";
        }
    }
    if (top > 20.0) {
        out.accuracy_warning = true;
        if (!out.note.empty()) out.note += "; ";
        out.note += "quadrature degenerates for exponents above 20";
    }
    out.basis_used = n;
    const Eigen::MatrixXd qa = moment_matrix(alpha, n);
    const Eigen::MatrixXd qb = alpha == beta ? qa : moment_matrix(beta, n);
    SectorEstimate even = solve_sector(qa, qb, alpha, beta, 0, n);
    out.g = even.value;
    out.g_raw = even.raw;
    out.dilation_even = even.dilation;
    if (n >= 1) {
        SectorEstimate odd = solve_sector(qa, qb, alpha, beta, 1, n);
        out.g_prime = odd.value;
        out.g_prime_raw = odd.raw;
        out.dilation_odd = odd.dilation;
        out.extrapolated = even.extrapolated || odd.extrapolated;
    }
    return out;
}

}  // namespace ukit
