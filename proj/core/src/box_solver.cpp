#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "internal.hpp"
#include "spectral_internal.hpp"
#include "ukit/errors.hpp"

namespace ukit::detail {

namespace {

// C_0^lam(x), ..., C_{n-1}^lam(x).
std::vector<double> gegenbauer(double lam, int n, double x) {
    std::vector<double> c(n, 0.0);
    c[0] = 1.0;
    if (n > 1) c[1] = 2.0 * lam * x;
    for (int k = 1; k + 1 < n; ++k)
        c[k + 1] = (2.0 * x * (k + lam) * c[k] - (k + 2.0 * lam - 1.0) * c[k - 1]) / (k + 1.0);
    return c;
}

}  // namespace

BoxSolution box_galerkin(double beta, int n_basis, const std::vector<double>& nodes) {
    if (n_basis < 2) throw DomainError("box basis needs at least two functions");
    const double pi = std::acos(-1.0);
    const double lam = 0.5 * (beta + 1.0);

    // Diagonal stiffness from the Fourier transform of the weighted Gegenbauer
    // functions and the Weber-Schafheitlin integral.
    Eigen::VectorXd stiff(n_basis);
    for (int n = 0; n < n_basis; ++n) {
        double logk = std::log(pi) + (1.0 - lam) * std::log(2.0) + std::lgamma(n + 2.0 * lam) -
                      std::lgamma(n + 1.0) - std::lgamma(lam);
        stiff[n] = std::exp(2.0 * logk) / (2.0 * pi * (n + lam));
    }

    const QuadratureRule rule = symmetric_jacobi_rule(beta, n_basis + 2);
    Eigen::MatrixXd mass = Eigen::MatrixXd::Zero(n_basis, n_basis);
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        auto c = gegenbauer(lam, n_basis, rule.nodes[q]);
        for (int i = 0; i < n_basis; ++i)
            for (int j = 0; j < n_basis; ++j) mass(i, j) += rule.weights[q] * c[i] * c[j];
    }

    BoxSolution out;
    for (int parity = 0; parity < 2; ++parity) {
        std::vector<int> idx;
        for (int n = parity; n < n_basis; n += 2) idx.push_back(n);
        const auto m = static_cast<Eigen::Index>(idx.size());
        Eigen::VectorXd scale(m);
        for (Eigen::Index i = 0; i < m; ++i) scale[i] = 1.0 / std::sqrt(mass(idx[i], idx[i]));
        Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, m), B(m, m);
        for (Eigen::Index i = 0; i < m; ++i) {
            A(i, i) = stiff[idx[i]] * scale[i] * scale[i];
            for (Eigen::Index j = 0; j < m; ++j) B(i, j) = mass(idx[i], idx[j]) * scale[i] * scale[j];
        }
        Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(A, B);
        if (es.info() != Eigen::Success) throw ConvergenceError("box Galerkin eigensolve failed", 0.0);
        double g = es.eigenvalues()[0];
        Eigen::VectorXd c = es.eigenvectors().col(0);
        double res = (A * c - g * (B * c)).norm() / std::sqrt(c.dot(B * c));
        c = c.cwiseProduct(scale);

        std::vector<double> psi(nodes.size(), 0.0);
        for (std::size_t k = 0; k < nodes.size(); ++k) {
            double x = nodes[k];
            if (std::abs(x) >= 1.0) continue;
            auto gv = gegenbauer(lam, n_basis, x);
            double s = 0.0;
            for (Eigen::Index i = 0; i < m; ++i) s += c[i] * gv[idx[i]];
            psi[k] = std::pow(1.0 - x * x, 0.5 * beta) * s;
        }
        if (parity == 0) {
            out.g_even = g;
            out.residual_even = res;
            out.psi_even = std::move(psi);
        } else {
            out.g_odd = g;
            out.residual_odd = res;
            out.psi_odd = std::move(psi);
        }
    }
    return out;
}

}  // namespace ukit::detail
