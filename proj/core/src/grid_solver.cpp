#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>

#include <Eigen/Dense>

#include "fftw_lock.hpp"
#include "internal.hpp"
#include "spectral_internal.hpp"
#include "ukit/errors.hpp"

namespace ukit::detail {

namespace {

bool is_even_integer(double a) { return std::floor(a) == a && std::fmod(a, 2.0) == 0.0; }

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

void axpy(double c, const std::vector<double>& x, std::vector<double>& y) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += c * x[i];
}

void scal(double c, std::vector<double>& x) {
    for (double& v : x) v *= c;
}

constexpr int kKinkOrder = 3;

// Symmetric stencil weights w_0..w_K added to |x|^a at the nodes 0, +-h, ..
// +-K h. They reproduce the generalized Euler-Maclaurin (Navot) correction
// -2 sum_k zeta(-a-2k) h^(a+2k) g^(2k)(0) / (2k)! through k = K, with the
// derivatives of the integrand g replaced by central differences.
std::vector<double> kink_stencil(double a, double h) {
    const int n = kKinkOrder + 1;
    Eigen::MatrixXd m(n, n);
    Eigen::VectorXd rhs(n);
    for (int k = 0; k < n; ++k) {
        for (int j = 0; j < n; ++j) m(k, j) = (j == 0 ? 1.0 : 2.0) * std::pow(double(j), 2.0 * k);
        rhs[k] = -2.0 * zeta_negative(-a - 2.0 * k) * std::pow(h, a);
    }
    Eigen::VectorXd w = m.fullPivLu().solve(rhs);
    return {w.data(), w.data() + n};
}

}  // namespace

GridHamiltonian::GridHamiltonian(Exponent alpha, Exponent beta, std::size_t n, double half_width)
    : n_(n), L_(half_width), box_x_(alpha.is_infinite()), box_p_(beta.is_infinite()) {
    if (box_x_ && box_p_) throw DomainError("both exponents infinite");
    if (n < 4 || (n & (n - 1)) != 0) throw DomainError("grid size must be a power of two");
    const double pi = std::acos(-1.0);
    const double h = 2.0 * L_ / static_cast<double>(n_);
    const double dp = pi / L_;
    V_.resize(n_);
    for (std::size_t j = 0; j < n_; ++j) {
        double x = -L_ + h * static_cast<double>(j);
        V_[j] = box_x_ ? 0.0 : std::pow(std::abs(x), alpha.value());
    }
    T_.resize(n_ / 2 + 1);
    for (std::size_t k = 0; k < T_.size(); ++k) {
        double p = dp * static_cast<double>(k);
        T_[k] = box_p_ ? 0.0 : std::pow(p, beta.value());
    }
    if (!box_x_ && !is_even_integer(alpha.value())) {
        auto w = kink_stencil(alpha.value(), h);
        for (int m = 0; m <= kKinkOrder; ++m) {
            V_[n_ / 2 + m] += w[m];
            if (m > 0) V_[n_ / 2 - m] += w[m];
        }
    }
    if (!box_p_ && !is_even_integer(beta.value())) {
        auto w = kink_stencil(beta.value(), dp);
        for (int m = 0; m <= kKinkOrder; ++m) T_[m] += w[m];
    }

    buf_.assign(n_, 0.0);
    spec_.assign(n_ / 2 + 1, {0.0, 0.0});
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    fwd_ = fftw_plan_dft_r2c_1d(static_cast<int>(n_), buf_.data(),
                                reinterpret_cast<fftw_complex*>(spec_.data()), FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_c2r_1d(static_cast<int>(n_), reinterpret_cast<fftw_complex*>(spec_.data()),
                                buf_.data(), FFTW_ESTIMATE);
}

GridHamiltonian::~GridHamiltonian() {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    if (fwd_) fftw_destroy_plan(fwd_);
    if (bwd_) fftw_destroy_plan(bwd_);
}

double GridHamiltonian::momentum_cutoff() const noexcept {
    return std::acos(-1.0) * static_cast<double>(n_) / (2.0 * L_);
}

void GridHamiltonian::forward(const double* in) const {
    std::copy(in, in + n_, buf_.begin());
    fftw_execute_dft_r2c(fwd_, buf_.data(), reinterpret_cast<fftw_complex*>(spec_.data()));
}

void GridHamiltonian::backward(double* out) const {
    fftw_execute_dft_c2r(bwd_, reinterpret_cast<fftw_complex*>(spec_.data()), buf_.data());
    const double inv = 1.0 / static_cast<double>(n_);
    for (std::size_t j = 0; j < n_; ++j) out[j] = buf_[j] * inv;
}

bool GridHamiltonian::apply(const double* in, double* out) const {
    const double h = 2.0 * L_ / static_cast<double>(n_);
    const double dp = std::acos(-1.0) / L_;
    bool outside = false;
    std::vector<double> tmp(in, in + n_);
    if (box_x_) {
        for (std::size_t j = 0; j < n_; ++j) {
            double x = -L_ + h * static_cast<double>(j);
            if (std::abs(x) > 1.0 + 1e-12 && tmp[j] != 0.0) {
                outside = true;
                tmp[j] = 0.0;
            } else if (std::abs(x) > 1.0 + 1e-12) {
                tmp[j] = 0.0;
            }
        }
    }
    forward(tmp.data());
    for (std::size_t k = 0; k < spec_.size(); ++k) {
        if (box_p_ && dp * static_cast<double>(k) > 1.0 + 1e-12) {
            if (std::abs(spec_[k]) > 1e-14 * std::sqrt(static_cast<double>(n_))) outside = true;
            spec_[k] = 0.0;
        } else {
            spec_[k] *= T_[k];
        }
    }
    backward(out);
    if (box_x_) {
        for (std::size_t j = 0; j < n_; ++j) {
            double x = -L_ + h * static_cast<double>(j);
            if (std::abs(x) > 1.0 + 1e-12) out[j] = 0.0;
        }
    } else {
        for (std::size_t j = 0; j < n_; ++j) out[j] += V_[j] * tmp[j];
    }
    if (box_p_) {
        // Compress the potential to the momentum box as well.
        std::vector<double> vpsi(n_);
        std::vector<double> filtered(n_);
        forward(in);
        for (std::size_t k = 0; k < spec_.size(); ++k)
            if (dp * static_cast<double>(k) > 1.0 + 1e-12) spec_[k] = 0.0;
        backward(filtered.data());
        for (std::size_t j = 0; j < n_; ++j) vpsi[j] = V_[j] * filtered[j];
        forward(vpsi.data());
        for (std::size_t k = 0; k < spec_.size(); ++k)
            if (dp * static_cast<double>(k) > 1.0 + 1e-12) spec_[k] = 0.0;
        backward(out);
    }
    return outside;
}

void GridHamiltonian::precondition(const double* in, double* out, double shift) const {
    std::vector<double> d(n_), tmp(n_);
    for (std::size_t j = 0; j < n_; ++j) {
        d[j] = 1.0 / std::sqrt(std::abs(V_[j]) + shift);
        tmp[j] = d[j] * in[j];
    }
    forward(tmp.data());
    for (std::size_t k = 0; k < spec_.size(); ++k) spec_[k] /= (std::abs(T_[k]) + shift);
    backward(out);
    for (std::size_t j = 0; j < n_; ++j) out[j] *= d[j];
}

double GridHamiltonian::energy(const double* psi) const {
    double ev = 0.0;
    for (std::size_t j = 0; j < n_; ++j) ev += V_[j] * psi[j] * psi[j];
    forward(psi);
    double et = 0.0;
    const std::size_t last = n_ / 2;
    for (std::size_t k = 0; k <= last; ++k) {
        double mult = (k == 0 || k == last) ? 1.0 : 2.0;
        et += mult * T_[k] * std::norm(spec_[k]);
    }
    return ev + et / static_cast<double>(n_);
}

void project_parity(std::vector<double>& v, int parity) {
    const std::size_t n = v.size();
    for (std::size_t j = 1; j < n / 2; ++j) {
        double a = v[j], b = v[n - j];
        v[j] = 0.5 * (a + parity * b);
        v[n - j] = parity * v[j];
    }
    if (parity < 0) {
        v[0] = 0.0;
        v[n / 2] = 0.0;
    }
}

namespace {

constexpr std::size_t kDenseLimit = 1024;

// Lowest eigenvector of the parity sector by a dense eigensolve.
std::vector<double> dense_sector_vector(const GridHamiltonian& h, int parity) {
    const std::size_t n = h.size();
    std::vector<std::vector<double>> basis;
    if (parity > 0) {
        std::vector<double> e(n, 0.0);
        e[0] = 1.0;
        basis.push_back(e);
        e[0] = 0.0;
        e[n / 2] = 1.0;
        basis.push_back(e);
    }
    for (std::size_t j = 1; j < n / 2; ++j) {
        std::vector<double> e(n, 0.0);
        e[j] = std::sqrt(0.5);
        e[n - j] = parity * std::sqrt(0.5);
        basis.push_back(e);
    }
    const auto m = static_cast<Eigen::Index>(basis.size());
    Eigen::MatrixXd a(m, m);
    std::vector<double> hb(n);
    for (Eigen::Index c = 0; c < m; ++c) {
        h.apply(basis[c].data(), hb.data());
        for (Eigen::Index r = 0; r < m; ++r) a(r, c) = dot(basis[r], hb);
    }
    a = 0.5 * (a + a.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    if (es.info() != Eigen::Success) throw ConvergenceError("dense sector eigensolve failed", 0.0);
    std::vector<double> x(n, 0.0);
    for (Eigen::Index c = 0; c < m; ++c) axpy(es.eigenvectors()(c, 0), basis[c], x);
    return x;
}

}  // namespace

SectorSolution lobpcg_sector(const GridHamiltonian& h, int parity, std::vector<double> x,
                             int max_iterations, double tol) {
    const std::size_t n = h.size();
    auto H = [&](const std::vector<double>& in) {
        std::vector<double> out(n);
        h.apply(in.data(), out.data());
        project_parity(out, parity);
        return out;
    };
    if (n <= kDenseLimit) x = dense_sector_vector(h, parity);
    project_parity(x, parity);
    scal(1.0 / std::sqrt(dot(x, x)), x);
    std::vector<double> hx = H(x);
    double lambda = h.energy(x.data());
    const double shift = std::max(1.0, std::abs(lambda));

    std::vector<double> r(n), w(n), p;
    auto residuals = [&](double& raw) {
        for (std::size_t i = 0; i < n; ++i) r[i] = hx[i] - lambda * x[i];
        raw = std::sqrt(dot(r, r));
        h.precondition(r.data(), w.data(), shift);
        project_parity(w, parity);
        return std::sqrt(std::max(dot(r, w), 0.0)) / std::sqrt(std::max(std::abs(lambda), 1e-300));
    };

    SectorSolution best;
    best.preconditioned_residual = std::numeric_limits<double>::infinity();
    int it = 0;
    for (;; ++it) {
        double raw = 0.0;
        const double pres = residuals(raw);
        if (pres < best.preconditioned_residual) {
            best.energy = lambda;
            best.vec = x;
            best.residual = raw;
            best.preconditioned_residual = pres;
        }
        if (pres <= tol || it >= max_iterations) break;

        // Orthonormal trial basis {x, w, p} with explicitly computed images.
        std::vector<std::vector<double>> S{x}, HS{hx};
        auto add = [&](std::vector<double> v) {
            for (int pass = 0; pass < 2; ++pass)
                for (const auto& s : S) axpy(-dot(s, v), s, v);
            double nv = std::sqrt(dot(v, v));
            if (!(nv > 1e-300)) return;
            scal(1.0 / nv, v);
            for (const auto& s : S) axpy(-dot(s, v), s, v);
            nv = std::sqrt(dot(v, v));
            if (nv < 0.5) return;
            scal(1.0 / nv, v);
            HS.push_back(H(v));
            S.push_back(std::move(v));
        };
        add(w);
        const std::size_t base = S.size();
        if (!p.empty()) add(p);

        auto ritz = [&](std::size_t m) {
            Eigen::MatrixXd A(m, m);
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j <= i; ++j)
                    A(i, j) = A(j, i) = 0.5 * (dot(S[i], HS[j]) + dot(S[j], HS[i]));
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
            return Eigen::VectorXd(es.eigenvectors().col(0));
        };
        auto combine = [&](const Eigen::VectorXd& c, std::vector<double>& xn, std::vector<double>& pn) {
            xn.assign(n, 0.0);
            pn.assign(n, 0.0);
            for (Eigen::Index k = 0; k < c.size(); ++k) {
                axpy(c[k], S[k], xn);
                if (k > 0) axpy(c[k], S[k], pn);
            }
            double nx = std::sqrt(dot(xn, xn));
            scal(1.0 / nx, xn);
            scal(1.0 / nx, pn);
            return h.energy(xn.data());
        };
        std::vector<double> xn, pn;
        double ln = combine(ritz(S.size()), xn, pn);
        if (S.size() > base && ln > lambda + 1e-13 * std::abs(lambda)) {
            // The conjugate direction lost orthogonality; fall back to {x, w}.
            ln = combine(ritz(base), xn, pn);
        }
        if (S.size() == 1) break;
        x = std::move(xn);
        p = std::move(pn);
        hx = H(x);
        lambda = ln;
    }
    best.iterations = it;
    if (best.preconditioned_residual > tol) {
        throw ConvergenceError("grid eigensolver did not reach the residual tolerance within " +
                                   std::to_string(max_iterations) + " iterations",
                               best.preconditioned_residual);
    }
    return best;
}

namespace {

// Trial energy of x^k exp(-x^2 / (2 w^2)), minimized over the width w.
double gaussian_trial_energy(double a, double b, int k) {
    auto moment = [&](double e) {
        return std::exp(std::lgamma(0.5 * (e + 2 * k + 1)) - std::lgamma(0.5 * (2 * k + 1)));
    };
    const double ma = moment(a), mb = moment(b);
    auto f = [&](double lw) { return std::exp(a * lw) * ma + std::exp(-b * lw) * mb; };
    double lw = golden_section_min(f, -5.0, 5.0, 1e-8);
    return f(lw);
}

// Smallest extent with int_{turning point}^{extent} (x^a - E)^(1/b) dx >= target.
double tunneling_extent(double a, double b, double energy, double target) {
    double x = std::pow(energy, 1.0 / a);
    const double dx = std::max(x, 1.0) * 1e-3;
    double acc = 0.0;
    while (acc < target) {
        double mid = x + 0.5 * dx;
        acc += std::pow(std::max(std::pow(mid, a) - energy, 0.0), 1.0 / b) * dx;
        x += dx;
        if (x > 1e8) break;
    }
    return x;
}

}  // namespace

GridSizing choose_grid(double alpha, double beta, std::size_t max_points) {
    constexpr double kTunneling = 25.0, kTailTol = 1e-10, kMargin = 1.2, kCeiling = 1e8;
    const double pi = std::acos(-1.0);
    const double energy = gaussian_trial_energy(alpha, beta, 1);
    auto required = [&](double own, double other) {
        double ext = tunneling_extent(own, other, energy, kTunneling);
        if (!is_even_integer(other)) ext = std::max(ext, std::pow(kTailTol, -1.0 / (alpha + beta + 2.0)));
        return std::min(kMargin * ext, std::pow(kCeiling, 1.0 / own));
    };
    const double lmax = std::pow(kCeiling, 1.0 / alpha), pmax = std::pow(kCeiling, 1.0 / beta);
    double lreq = required(alpha, beta), preq = required(beta, alpha);
    GridSizing s;
    const double need = 2.0 * lreq * preq / pi;
    const double np = static_cast<double>(max_points);
    if (need > np) {
        double f = std::sqrt(np / need);
        s.points = max_points;
        s.half_width = lreq * f;
        s.under_resolved = true;
        return s;
    }
    double f = std::sqrt(np / need);
    double L = lreq * f, P = preq * f;
    if (L > lmax) {
        L = lmax;
        P = pi * np / (2.0 * L);
    }
    if (P > pmax) {
        P = pmax;
        L = pi * np / (2.0 * P);
    }
    if (L > lmax * (1 + 1e-12)) {
        // Both extents sit at the stiffness ceiling: use fewer points.
        std::size_t n = 64;
        while (static_cast<double>(n) < 2.0 * lmax * pmax / pi) n <<= 1;
        double g = std::sqrt(pi * static_cast<double>(n) / (2.0 * lmax * pmax));
        s.points = n;
        s.half_width = lmax * g;
        return s;
    }
    s.points = max_points;
    s.half_width = L;
    return s;
}

}  // namespace ukit::detail
