#pragma once

#include <optional>
#include <string>

#include "ukit/exponent.hpp"
#include "ukit/spectral.hpp"

namespace ukit {

// c = alpha^(1/beta) beta^(1/alpha) (g / (alpha + beta))^(1/alpha + 1/beta);
// with one infinite exponent this reduces to g^(1/k), k the finite one.
double c_from_g(Exponent alpha, Exponent beta, double g);

// u^gamma alpha^(-alpha/(alpha+beta)) beta^(-beta/(alpha+beta)) (alpha+beta)
// with gamma = alpha beta / (alpha + beta). Inverse of c_from_g.
double uncertainty_product_lhs(double u, double alpha, double beta);

// Entropic lower bound on c:
//   pi e^(1 - 1/alpha - 1/beta) alpha^(-1/alpha) beta^(-1/beta)
//     / (4 Gamma(1 + 1/alpha) Gamma(1 + 1/beta)),
// extended to infinite exponents by continuity. Exact at (2, 2).
double hirschman_bound(Exponent alpha, Exponent beta);

// Upper bound on c_{alpha,inf} from the trial state (1 - p^2)^alpha:
// (Gamma(alpha/2 + 1) Gamma(alpha + 3/2) / Gamma((alpha + 3)/2))^(1/alpha).
double trial_upper_bound_inf(double alpha);

struct ExactAnchor {
    double c = 0.0;
    std::optional<double> c_prime;
    std::string provenance;  // "closed-form", "airy", "transcendental", "tabulated", "limit"
};

// Known values of c and c' in the solvable cases (1,2), (2,2), (k,inf) for
// k in {2,4,6,8,10}, and (inf,inf), in either order. Empty otherwise.
std::optional<ExactAnchor> exact_anchor(Exponent alpha, Exponent beta);

// First lambda > 0 with Ai'(-lambda) = 0 (about 1.01879): g for (1, 2).
double airy_prime_root();
// First lambda > 0 with Ai(-lambda) = 0 (about 2.33811): g' for (1, 2).
double airy_root();
// Ai and Ai' by their power series (accurate for |x| <= 4).
double airy_ai(double x);
double airy_ai_prime(double x);

// Roots used for (4, inf): tan x = -tanh x on (pi/2, pi) gives c, and
// tan x = tanh x on (pi, 3 pi / 2) gives c'.
double quartic_box_root(bool odd);

// 2 sqrt((u^gamma - c^gamma) / (c'^gamma - c^gamma)) clamped to [0, 2], with
// gamma = alpha beta / (alpha + beta) (gamma = alpha if beta is infinite).
// Throws DomainError if u < c.
double near_minimal_state_bound(double u, Exponent alpha, Exponent beta, double c, double c_prime);

struct ReebSupremum {
    double value = 0.0;   // max over x of f(x) f(1/x) / 2
    double argmax = 0.0;  // maximizing x
};

// f(x) = sqrt(1 + x^2) - x; the supremum of f(x) f(1/x) / 2 over x > 0,
// found numerically. Equals (sqrt(2) - 1)^2 / 2 at x = 1.
ReebSupremum reeb_gaussian_search();
double reeb_gaussian_sup();

struct ConstantsBundle {
    Exponent alpha = 2.0, beta = 2.0;
    double g = 0.0, g_prime = 0.0;
    double c = 0.0, c_prime = 0.0;
    double hirschman = 0.0;
    std::optional<double> trial_upper;  // only when one exponent is infinite
    std::optional<ExactAnchor> exact;
    GridInfo grid;
    bool parity_ordered = true;
};

// Solves for g, g' and assembles every constant for (alpha, beta). For
// (inf, inf) the constants are +inf and no solve is attempted.
ConstantsBundle compute_constants(Exponent alpha, Exponent beta, const SolverConfig& cfg = {});

// alpha,beta,g,g_prime,c,c_prime,hirschman,trial_upper,exact,provenance
std::string constants_csv_header();
std::string constants_csv_row(const ConstantsBundle& b);

}  // namespace ukit
