#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>

#include <Eigen/Dense>
#include <fftw3.h>

#include "fftw_lock.hpp"
#include "internal.hpp"
#include "ukit/errors.hpp"

namespace ukit::detail {

namespace {

QuadratureRule golub_welsch(const Eigen::VectorXd& offdiag_sq, double mu0) {
    const auto n = offdiag_sq.size() + 1;
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd sub = offdiag_sq.cwiseSqrt();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success) throw ConvergenceError("Golub-Welsch eigensolve failed", 0.0);
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        rule.nodes[k] = es.eigenvalues()[k];
        double v0 = es.eigenvectors()(0, k);
        rule.weights[k] = mu0 * v0 * v0;
    }
    return rule;
}

}  // namespace

QuadratureRule generalized_hermite_rule(double a, int n) {
    Eigen::VectorXd b(n - 1);
    for (int k = 1; k < n; ++k) b[k - 1] = (k % 2 == 0) ? 0.5 * k : 0.5 * (k + a);
    return golub_welsch(b, std::tgamma(0.5 * (a + 1.0)));
}

QuadratureRule generalized_hermite_function_rule(double a, int n) {
    QuadratureRule rule = generalized_hermite_rule(a, n);
    std::vector<double> b(n, 0.0);
    for (int k = 1; k < n; ++k) b[k] = (k % 2 == 0) ? 0.5 * k : 0.5 * (k + a);
    const double mu0 = std::tgamma(0.5 * (a + 1.0));
    for (int i = 0; i < n; ++i) {
        const double x = rule.nodes[i];
        double prev = 0.0, cur = std::exp(-0.5 * x * x) / std::sqrt(mu0);
        double s = cur * cur;
        for (int j = 0; j + 1 < n; ++j) {
            double next = (x * cur - (j > 0 ? std::sqrt(b[j]) * prev : 0.0)) / std::sqrt(b[j + 1]);
            prev = cur;
            cur = next;
            s += cur * cur;
        }
        rule.weights[i] = 1.0 / s;
    }
    return rule;
}

QuadratureRule symmetric_jacobi_rule(double b, int n) {
    const double lam = b + 0.5;
    Eigen::VectorXd c(n - 1);
    for (int k = 1; k < n; ++k) {
        c[k - 1] = k * (k + 2.0 * lam - 1.0) / (4.0 * (k + lam) * (k + lam - 1.0));
    }
    const double pi = std::acos(-1.0);
    double mu0 = std::sqrt(pi) * std::exp(std::lgamma(b + 1.0) - std::lgamma(b + 1.5));
    return golub_welsch(c, mu0);
}

double gauss_hermite_expectation(const std::function<double(double)>& f) {
    static const QuadratureRule rule = generalized_hermite_rule(0.0, 96);
    const double pi = std::acos(-1.0);
    double s = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k)
        s += rule.weights[k] * f(std::sqrt(2.0) * rule.nodes[k]);
    return s / std::sqrt(pi);
}

std::vector<double> fft_convolve(const std::vector<double>& a, const std::vector<double>& b) {
    const std::size_t out_len = a.size() + b.size() - 1;
    std::size_t n = 1;
    while (n < out_len) n <<= 1;
    const std::size_t nc = n / 2 + 1;
    std::vector<double> ra(n, 0.0), rb(n, 0.0), out(n, 0.0);
    std::copy(a.begin(), a.end(), ra.begin());
    std::copy(b.begin(), b.end(), rb.begin());
    std::vector<std::complex<double>> ca(nc), cb(nc);
    fftw_plan pa, pb, pc;
    {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        pa = fftw_plan_dft_r2c_1d(static_cast<int>(n), ra.data(),
                                  reinterpret_cast<fftw_complex*>(ca.data()), FFTW_ESTIMATE);
        pb = fftw_plan_dft_r2c_1d(static_cast<int>(n), rb.data(),
                                  reinterpret_cast<fftw_complex*>(cb.data()), FFTW_ESTIMATE);
        pc = fftw_plan_dft_c2r_1d(static_cast<int>(n), reinterpret_cast<fftw_complex*>(ca.data()),
                                  out.data(), FFTW_ESTIMATE);
    }
    fftw_execute(pa);
    fftw_execute(pb);
    for (std::size_t k = 0; k < nc; ++k) ca[k] *= cb[k] / static_cast<double>(n);
    fftw_execute(pc);
    {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        fftw_destroy_plan(pa);
        fftw_destroy_plan(pb);
        fftw_destroy_plan(pc);
    }
    out.resize(out_len);
    for (double& v : out) v = std::max(v, 0.0);
    return out;
}

double zeta_negative(double s) {
    const double pi = std::acos(-1.0);
    const double a = -s;
    return 2.0 * std::pow(2.0 * pi, -a - 1.0) * std::cos(0.5 * pi * (a + 1.0)) *
           std::tgamma(a + 1.0) * std::riemann_zeta(a + 1.0);
}

}  // namespace ukit::detail
