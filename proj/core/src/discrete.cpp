#include "ukit/discrete.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "ukit/errors.hpp"

namespace ukit::discrete {

namespace {

const double kPi = std::acos(-1.0);

void check_dim(int d) {
    if (d < 2) throw DomainError("dimension must be at least 2");
    if (d > kMaxDim) throw CapacityError("dimension exceeds " + std::to_string(kMaxDim));
}

std::complex<double> omega_pow(int d, long long e) {
    long long r = ((e % d) + d) % d;
    double t = 2.0 * kPi * static_cast<double>(r) / d;
    return {std::cos(t), std::sin(t)};
}

int mod(int a, int d) { return ((a % d) + d) % d; }

// W(q,p)* M W(q,p); entries omega^(p (b - a)) M(a + q, b + q).
CMatrix conj_adjoint_left(const CMatrix& m, int q, int p) {
    const int d = static_cast<int>(m.rows());
    CMatrix out(d, d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) out(a, b) = omega_pow(d, static_cast<long long>(p) * (b - a)) * m(mod(a + q, d), mod(b + q, d));
    return out;
}

// W(q,p) M W(q,p)*; entries omega^(p (a - b)) M(a - q, b - q).
CMatrix conj_adjoint_right(const CMatrix& m, int q, int p) {
    const int d = static_cast<int>(m.rows());
    CMatrix out(d, d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) out(a, b) = omega_pow(d, static_cast<long long>(p) * (a - b)) * m(mod(a - q, d), mod(b - q, d));
    return out;
}

double min_eigenvalue(const CMatrix& m) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

double max_eigenvalue(const CMatrix& m) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
}

CVector basis_vector(int d, Target t, int x) {
    if (t == Target::p) return momentum_vector(d, x);
    CVector e = CVector::Zero(d);
    e[x] = 1.0;
    return e;
}

double root(double v, Exponent alpha) {
    v = std::max(v, 0.0);
    if (alpha.is_infinite()) return v > 0.0 ? 1.0 : 0.0;
    return std::pow(v, 1.0 / alpha.value());
}

DiagramPoint point_of(const CVector& psi, const CVector& psi_q, const CVector& psi_p) {
    return {1.0 - std::norm(psi_q.dot(psi)), 1.0 - std::norm(psi_p.dot(psi))};
}

}  // namespace

FiniteState FiniteState::from_matrix(CMatrix rho) {
    if (rho.rows() != rho.cols()) throw DimensionError("density matrix must be square");
    const int d = static_cast<int>(rho.rows());
    check_dim(d);
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-12) throw DomainError("density matrix not Hermitian");
    if (std::abs(rho.trace() - 1.0) > 1e-12) throw DomainError("density matrix trace differs from 1");
    if (min_eigenvalue(rho) < -1e-12) throw DomainError("density matrix not positive semidefinite");
    return FiniteState{d, std::move(rho)};
}

FiniteState FiniteState::pure(const CVector& psi) {
    const double n = psi.norm();
    if (!(n > 0.0)) throw DomainError("zero state vector");
    CVector u = psi / n;
    return from_matrix(u * u.adjoint());
}

FinitePOVM FinitePOVM::from_effects(int dim, std::vector<CMatrix> effects) {
    check_dim(dim);
    if (effects.size() != static_cast<std::size_t>(dim) * dim)
        throw DimensionError("a phase-space POVM needs d^2 effects");
    CMatrix sum = CMatrix::Zero(dim, dim);
    for (const auto& e : effects) {
        if (e.rows() != dim || e.cols() != dim) throw DimensionError("effect has the wrong size");
        if ((e - e.adjoint()).cwiseAbs().maxCoeff() > 1e-10) throw DomainError("effect not Hermitian");
        if (min_eigenvalue(e) < -1e-10) throw DomainError("effect not positive semidefinite");
        sum += e;
    }
    if ((sum - CMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff() > 1e-10)
        throw DomainError("effects do not sum to the identity");
    return FinitePOVM{dim, std::move(effects)};
}

WeylPair weyl_pair(int d, int k) {
    check_dim(d);
    if (mod(k, d) == 0) throw DomainError("shift step k must be nonzero modulo d");
    WeylPair w;
    w.u = CMatrix::Zero(d, d);
    w.v = CMatrix::Zero(d, d);
    for (int j = 0; j < d; ++j) {
        w.u(j, j) = omega_pow(d, j);
        w.v(mod(j + k, d), j) = 1.0;
    }
    w.root = omega_pow(d, k);
    w.primitive = std::gcd(mod(k, d), d) == 1;
    w.commutation_residual = (w.u * w.v - w.root * w.v * w.u).cwiseAbs().maxCoeff();
    return w;
}

CMatrix weyl_operator(int d, int q, int p) {
    check_dim(d);
    CMatrix w = CMatrix::Zero(d, d);
    for (int b = 0; b < d; ++b) w(mod(b + q, d), b) = omega_pow(d, static_cast<long long>(p) * b);
    return w;
}

CVector momentum_vector(int d, int p) {
    CVector v(d);
    const double s = 1.0 / std::sqrt(static_cast<double>(d));
    for (int x = 0; x < d; ++x) v[x] = s * omega_pow(d, static_cast<long long>(p) * x);
    return v;
}

double discrete_wasserstein(const std::vector<double>& mu, const std::vector<double>& nu, Exponent alpha) {
    if (mu.size() != nu.size()) throw DimensionError("weight vectors differ in length");
    double tv = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) tv += std::abs(mu[i] - nu[i]);
    tv *= 0.5;
    if (tv < 1e-15) tv = 0.0;
    return root(tv, alpha);
}

double discrete_spread(const std::vector<double>& mu, Exponent) {
    if (mu.empty()) throw DimensionError("empty weight vector");
    return 1.0 - *std::max_element(mu.begin(), mu.end());
}

double Ellipse::residual(double dq, double dp) const {
    const double x = 1.0 - 2.0 * dq, y = 1.0 - 2.0 * dp;
    return x * x - 2.0 * k * x * y + y * y - (1.0 - k * k);
}

PreparationDiagram preparation_diagram(int d, int samples, std::uint64_t seed, int boundary_points) {
    check_dim(d);
    if (samples < 0 || boundary_points < 2) throw DomainError("sample counts must be positive");
    PreparationDiagram out;
    out.dim = d;
    const double k = 2.0 / d - 1.0;
    out.ellipse.k = k;
    out.ellipse.semi_major = 0.5 * std::sqrt(1.0 - k);
    out.ellipse.semi_minor = 0.5 * std::sqrt(1.0 + k);
    out.ellipse.angle = k <= 0.0 ? -0.25 * kPi : 0.25 * kPi;
    out.ellipse.intercept = 1.0 - 1.0 / d;

    const CVector psi_q = basis_vector(d, Target::q, 0);
    const CVector psi_p = momentum_vector(d, 0);
    CVector e2 = psi_p - psi_q.dot(psi_p) * psi_q;
    e2 /= e2.norm();
    for (int i = 0; i < boundary_points; ++i) {
        double t = kPi * i / boundary_points;
        CVector psi = std::cos(t) * psi_q + std::sin(t) * e2;
        out.boundary.push_back(point_of(psi, psi_q, psi_p));
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n01;
    for (int i = 0; i < samples; ++i) {
        std::complex<double> a(n01(rng), n01(rng)), b(n01(rng), n01(rng));
        CVector psi = a * psi_q + b * e2;
        psi /= psi.norm();
        out.samples.push_back(point_of(psi, psi_q, psi_p));
    }
    if (d >= 3) {
        out.corner = DiagramPoint{1.0, 1.0};
        // Boundary in (x, y) = (1 - 2 dq, 1 - 2 dp): (cos t, k cos t + s sin t).
        const double s = std::sqrt(1.0 - k * k);
        auto f = [&](double t) {
            double ex = std::cos(t), ey = k * std::cos(t) + s * std::sin(t);
            double dx = -std::sin(t), dy = -k * std::sin(t) + s * std::cos(t);
            return (ex + 1.0) * dy - (ey + 1.0) * dx;
        };
        const int scan = 4096;
        for (int i = 0; i < scan; ++i) {
            double lo = 2.0 * kPi * i / scan, hi = 2.0 * kPi * (i + 1) / scan;
            if (f(lo) * f(hi) > 0.0) continue;
            for (int it = 0; it < 100; ++it) {
                double mid = 0.5 * (lo + hi);
                if (f(lo) * f(mid) <= 0.0) hi = mid;
                else lo = mid;
            }
            double t = 0.5 * (lo + hi);
            out.corner_tangents.push_back({0.5 * (1.0 - std::cos(t)), 0.5 * (1.0 - (k * std::cos(t) + s * std::sin(t)))});
        }
    }
    return out;
}

bool below_preparation_boundary(int d, double dq, double dp, double tol) {
    const double k = 2.0 / d - 1.0;
    const double x = 1.0 - 2.0 * dq, y = 1.0 - 2.0 * dp;
    if (x > 1.0 + tol) return true;
    const double xc = std::min(x, 1.0);
    const double ymax = xc <= k ? 1.0 : k * xc + std::sqrt(std::max(0.0, (1.0 - k * k) * (1.0 - xc * xc)));
    return y > ymax + tol;
}

std::vector<CMatrix> marginal(const FinitePOVM& povm, Target target) {
    const int d = povm.dim;
    std::vector<CMatrix> m(d, CMatrix::Zero(d, d));
    for (int q = 0; q < d; ++q)
        for (int p = 0; p < d; ++p) m[target == Target::q ? q : p] += povm.at(q, p);
    return m;
}

FinitePOVM covariantize(const FinitePOVM& povm) {
    const int d = povm.dim;
    CMatrix m0 = CMatrix::Zero(d, d);
    for (int q = 0; q < d; ++q)
        for (int p = 0; p < d; ++p) m0 += conj_adjoint_left(povm.at(q, p), q, p);
    m0 /= static_cast<double>(d) * d;
    m0 = 0.5 * (m0 + m0.adjoint()).eval();
    std::vector<CMatrix> eff;
    eff.reserve(static_cast<std::size_t>(d) * d);
    for (int q = 0; q < d; ++q)
        for (int p = 0; p < d; ++p) eff.push_back(conj_adjoint_right(m0, q, p));
    return FinitePOVM{d, std::move(eff)};
}

double covariance_defect(const FinitePOVM& povm) {
    const int d = povm.dim;
    double worst = 0.0;
    for (int q = 0; q < d; ++q)
        for (int p = 0; p < d; ++p)
            worst = std::max(worst, (conj_adjoint_right(povm.at(0, 0), q, p) - povm.at(q, p)).cwiseAbs().maxCoeff());
    return worst;
}

double calibration_error_finite(const FinitePOVM& povm, Target target, Exponent alpha) {
    const auto m = marginal(povm, target);
    double worst = 0.0;
    for (int x = 0; x < povm.dim; ++x) {
        CVector e = basis_vector(povm.dim, target, x);
        worst = std::max(worst, 1.0 - e.dot(m[x] * e).real());
    }
    return root(worst, alpha);
}

double metric_error_finite(const FinitePOVM& povm, Target target, Exponent alpha) {
    const int d = povm.dim;
    if (d > kMaxSubsetDim) throw CapacityError("metric error enumerates 2^d subsets; d too large");
    const auto m = marginal(povm, target);
    std::vector<CMatrix> diff(d);
    for (int x = 0; x < d; ++x) {
        CVector e = basis_vector(d, target, x);
        diff[x] = m[x] - e * e.adjoint();
    }
    double worst = 0.0;
    CMatrix acc(d, d);
    for (std::uint32_t mask = 1; mask < (1u << d); ++mask) {
        acc.setZero();
        for (int x = 0; x < d; ++x)
            if (mask & (1u << x)) acc += diff[x];
        worst = std::max(worst, max_eigenvalue(acc));
    }
    return root(worst, alpha);
}

std::vector<double> outcome_distribution(const FinitePOVM& povm, Target target, const FiniteState& state) {
    if (state.dim != povm.dim) throw DimensionError("state and POVM dimensions differ");
    const auto m = marginal(povm, target);
    std::vector<double> w(povm.dim);
    for (int x = 0; x < povm.dim; ++x) w[x] = std::max(0.0, (state.rho * m[x]).trace().real());
    return w;
}

FinitePOVM ideal_q_povm(int d) {
    check_dim(d);
    std::vector<CMatrix> eff;
    for (int q = 0; q < d; ++q)
        for (int p = 0; p < d; ++p) {
            CMatrix e = CMatrix::Zero(d, d);
            e(q, q) = 1.0 / d;
            eff.push_back(e);
        }
    return FinitePOVM{d, std::move(eff)};
}

FinitePOVM uniform_povm(int d) {
    check_dim(d);
    std::vector<CMatrix> eff(static_cast<std::size_t>(d) * d, CMatrix::Identity(d, d) / (static_cast<double>(d) * d));
    return FinitePOVM{d, std::move(eff)};
}

FinitePOVM covariant_povm(const FiniteState& sigma) {
    const int d = sigma.dim;
    std::vector<CMatrix> eff;
    for (int q = 0; q < d; ++q)
        for (int p = 0; p < d; ++p) eff.push_back(conj_adjoint_right(sigma.rho, q, p) / static_cast<double>(d));
    return FinitePOVM{d, std::move(eff)};
}

FinitePOVM random_povm(int d, std::uint64_t seed) {
    check_dim(d);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n01;
    const int n = d * d;
    std::vector<CMatrix> a(n);
    CMatrix s = CMatrix::Zero(d, d);
    for (auto& m : a) {
        m = CMatrix(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) m(i, j) = {n01(rng), n01(rng)};
        s += m.adjoint() * m;
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(s);
    CMatrix s_inv_half = es.operatorInverseSqrt();
    std::vector<CMatrix> eff;
    for (auto& m : a) {
        CMatrix e = s_inv_half * m.adjoint() * m * s_inv_half;
        eff.push_back(0.5 * (e + e.adjoint()));
    }
    return FinitePOVM{d, std::move(eff)};
}

}  // namespace ukit::discrete
