#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "ukit/exponent.hpp"
#include "ukit/measures.hpp"

namespace ukit {

// Wasserstein alpha-distance on the real line, evaluated from the quantile
// functions: (int_0^1 |Q_mu - Q_nu|^alpha dt)^(1/alpha), or sup_t |Q_mu - Q_nu|
// for the infinite exponent. Exact for atoms, grids and quantile tables;
// Gaussian pairs use closed forms and mixed pairs adaptive Gauss-Kronrod
// quadrature. May return +inf.
double wasserstein(const Measure1D& mu, const Measure1D& nu, Exponent alpha);

// The same quantile integral by generic adaptive quadrature over t in (0, 1),
// using only pointwise quantile evaluations. Finite exponents only.
double wasserstein_quadrature(const Measure1D& mu, const Measure1D& nu, double alpha);

inline constexpr std::size_t kLpAtomCap = 64;

// Optimal solution of a balanced transportation problem.
struct TransportPlan {
    double cost = 0.0;
    Eigen::MatrixXd flow;   // rows: sources, columns: sinks
    std::vector<double> u;  // source potentials
    std::vector<double> v;  // sink potentials; u_i + v_j <= cost_ij
    int pivots = 0;
};

// Transportation simplex (MODI method with Bland's anti-cycling rule).
TransportPlan solve_transport_lp(const std::vector<double>& supply,
                                 const std::vector<double>& demand, const Eigen::MatrixXd& cost);

// Exact optimum of the finite coupling LP between two atom measures with cost
// |x - y|^alpha, returned as a distance. Independent of the quantile formula.
double wasserstein_lp_oracle(const Measure1D& mu, const Measure1D& nu, double alpha);

// Kantorovich potentials: phi lives on the support of nu, psi on that of mu,
// competitive when phi(y) - psi(x) <= |x - y|^alpha.
struct DualPotentials {
    std::vector<double> phi;
    std::vector<double> psi;
};

// Optimal potentials read off the LP duals.
DualPotentials optimal_potentials(const Measure1D& mu, const Measure1D& nu, double alpha);

// int phi dnu - int psi dmu for a competitive pair: a certified lower bound on
// wasserstein(mu, nu, alpha)^alpha. Throws CertificateError naming the first
// violating pair of support points.
double dual_certificate(const Measure1D& mu, const Measure1D& nu, double alpha,
                        const std::vector<double>& phi, const std::vector<double>& psi);

// sqrt((m1 - m2)^2 + (s1 - s2)^2) for two Gaussians.
double gaussian_w2(const Measure1D& mu, const Measure1D& nu);

struct MomentBracket {
    double lower = 0.0;
    double upper = 0.0;
    bool finite = true;  // false when a second moment diverges
};

// (s1 - s2)^2 + (m1 - m2)^2 <= W2^2 <= (s1 + s2)^2 + (m1 - m2)^2.
MomentBracket moment_bounds_w2(const Measure1D& mu, const Measure1D& nu);

// The monotone (quantile) coupling as a list of mass cells. For atom pairs
// every cell is an exact point of the optimal plan; continuous parts are
// sampled at the midpoints of the merged quantile pieces.
struct CouplingCell {
    double x = 0.0;
    double y = 0.0;
    double mass = 0.0;
};
std::vector<CouplingCell> monotone_coupling(const Measure1D& mu, const Measure1D& nu);

}  // namespace ukit
