#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ukit/exponent.hpp"

namespace ukit::discrete {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr int kMaxDim = 64;
// Largest dimension for which the metric error enumerates outcome subsets.
inline constexpr int kMaxSubsetDim = 16;

struct FiniteState {
    int dim = 0;
    CMatrix rho;

    // Validates Hermiticity, unit trace and positivity (eigenvalues >= -1e-12).
    static FiniteState from_matrix(CMatrix rho);
    static FiniteState pure(const CVector& psi);
};

// Outcome z = (q, p) in Z_d x Z_d is stored at index q * d + p.
struct FinitePOVM {
    int dim = 0;
    std::vector<CMatrix> effects;

    // Validates sum = identity within 1e-10 and positivity of each effect.
    static FinitePOVM from_effects(int dim, std::vector<CMatrix> effects);
    const CMatrix& at(int q, int p) const { return effects[static_cast<std::size_t>(q * dim + p)]; }
};

struct WeylPair {
    CMatrix u;                 // clock: diag(omega^j), omega = exp(2 pi i / d)
    CMatrix v;                 // shift: |j> -> |j + k>
    std::complex<double> root;  // omega^k, with U V = omega^k V U
    bool primitive = false;    // gcd(k, d) = 1, so omega^k generates all d-th roots
    double commutation_residual = 0.0;  // max |U V - omega^k V U|
};

// Throws DomainError if d < 2, d > kMaxDim or k = 0 mod d.
WeylPair weyl_pair(int d, int k = 1);

// W(q, p) = V^q U^p for the k = 1 pair.
CMatrix weyl_operator(int d, int q, int p);

// |p~> = d^(-1/2) sum_x omega^(p x) |x>.
CVector momentum_vector(int d, int p);

// (1/2 ||mu - nu||_1)^(1/alpha): the transport distance for the discrete
// metric. For the infinite exponent, 0 if mu = nu and 1 otherwise.
double discrete_wasserstein(const std::vector<double>& mu, const std::vector<double>& nu, Exponent alpha);

// 1 - max_x mu(x).
double discrete_spread(const std::vector<double>& mu, Exponent alpha);

struct Ellipse {
    double center_q = 0.5, center_p = 0.5;
    double semi_major = 0.0, semi_minor = 0.0;  // along (1,1) and (1,-1)
    double angle = 0.0;                         // of the major axis, radians
    double intercept = 0.0;                     // 1 - 1/d on both axes
    // (1 - 2 dq)^2 - 2 k (1 - 2 dq)(1 - 2 dp) + (1 - 2 dp)^2 = 1 - k^2, k = 2/d - 1
    double k = 0.0;
    double residual(double dq, double dp) const;
};

struct DiagramPoint {
    double dq = 0.0, dp = 0.0;
};

struct PreparationDiagram {
    int dim = 0;
    Ellipse ellipse;
    std::vector<DiagramPoint> boundary;  // from real superpositions of psi^Q and psi^P
    std::vector<DiagramPoint> samples;   // random pure states in their span
    std::optional<DiagramPoint> corner;  // (1, 1) for d >= 3
    // Tangent points on the ellipse of the two segments from the corner.
    std::vector<DiagramPoint> corner_tangents;
};

// Points (1 - <psi^Q|rho|psi^Q>, 1 - <psi^P|rho|psi^P>) for psi^Q = |0>,
// psi^P = d^(-1/2) sum_x |x>.
PreparationDiagram preparation_diagram(int d, int samples, std::uint64_t seed = 1, int boundary_points = 256);

// True if (dq, dp) lies strictly below the lower-left boundary of the
// monotone closure of the preparation region (beyond tol).
bool below_preparation_boundary(int d, double dq, double dp, double tol = 1e-9);

enum class Target { q, p };

// Marginal effects M^Q(x) = sum_p M(x, p) or M^P(p) = sum_x M(x, p).
std::vector<CMatrix> marginal(const FinitePOVM& povm, Target target);

// M_bar(z) = d^-2 sum_w W(w)* M(z + w) W(w). Output is covariant.
FinitePOVM covariantize(const FinitePOVM& povm);

// max_z || W(z) M(0) W(z)* - M(z) ||.
double covariance_defect(const FinitePOVM& povm);

// max_x (1 - <e_x|M^T(x)|e_x>)^(1/alpha) over the eigenbasis e_x of the target.
double calibration_error_finite(const FinitePOVM& povm, Target target, Exponent alpha);

// sup over states of the discrete-metric distance between the target
// marginal and the ideal observable: (max_X lambda_max(M^T(X) - E^T(X)))^(1/alpha),
// maximized over outcome subsets X. Throws CapacityError if d > kMaxSubsetDim.
double metric_error_finite(const FinitePOVM& povm, Target target, Exponent alpha);

// Outcome distribution of the target marginal in a state.
std::vector<double> outcome_distribution(const FinitePOVM& povm, Target target, const FiniteState& state);

FinitePOVM ideal_q_povm(int d);                 // |x><x| / d at every (x, p)
FinitePOVM uniform_povm(int d);                 // I / d^2 everywhere
FinitePOVM covariant_povm(const FiniteState& sigma);  // W(z) sigma W(z)* / d
// Random POVM with d^2 outcomes from Gaussian Kraus operators.
FinitePOVM random_povm(int d, std::uint64_t seed);

}  // namespace ukit::discrete
