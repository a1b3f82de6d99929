#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ukit/exponent.hpp"

namespace ukit {

struct SolverConfig {
    // Number of grid nodes; a power of two, at least 256.
    std::size_t grid_points = 8192;
    // Position extent L of the grid [-L, L). When unset the solver sizes the
    // position and momentum extents from the exponents (see README).
    std::optional<double> half_width;
    int max_iterations = 5000;
    // Relative preconditioned residual at which an eigenvector is accepted.
    double residual_tol = 1e-9;
    // Oscillator-basis size used for the cross-check.
    int basis_size = 400;

    void validate() const;
};

// The default extent used when a grid is needed but no auto-sizing applies:
// max(12, 4 (alpha + beta)) with infinite exponents counted as 1.
double default_half_width(Exponent alpha, Exponent beta);

struct GridInfo {
    std::size_t points = 0;  // nodes actually used
    double half_width = 0.0;
    double momentum_cutoff = 0.0;  // pi N / (2 L)
    bool under_resolved = false;   // requested accuracy needs more points
    std::string method;            // "grid" or "box-galerkin"
    std::string representation;    // "position" or "momentum" for the eigenvectors
};

struct GroundStateResult {
    double g = 0.0;        // lowest even-sector eigenvalue
    double g_prime = 0.0;  // lowest odd-sector eigenvalue
    std::vector<double> x;  // grid nodes of the eigenvectors
    std::vector<double> psi_even;
    std::vector<double> psi_odd;
    // Raw residual norms ||H psi - g psi|| (even, odd) for unit psi.
    std::array<double, 2> residuals{};
    // Preconditioned residuals used as the stopping criterion (even, odd).
    std::array<double, 2> preconditioned_residuals{};
    std::array<int, 2> iterations{};
    // False if the odd-sector minimum came out below the even-sector one.
    bool parity_ordered = true;
    SolverConfig config_echo;
    GridInfo grid;
};

// Lowest even and odd eigenvalues of H = |Q|^alpha + |P|^beta.
// Finite exponents: preconditioned block eigensolver on a uniform grid with
// |Q|^alpha diagonal in position and |P|^beta diagonal in the discrete Fourier
// domain. One infinite exponent: Galerkin solve in a basis that satisfies the
// support constraint exactly. Throws DomainError when both are infinite and
// ConvergenceError when max_iterations is exhausted.
GroundStateResult ground_energies(Exponent alpha, Exponent beta, const SolverConfig& cfg = {});

struct OscillatorResult {
    double g = 0.0;
    double g_prime = 0.0;
    double g_raw = 0.0;        // Rayleigh-Ritz value at the largest basis
    double g_prime_raw = 0.0;
    int basis_used = 0;        // largest basis index actually used
    double dilation_even = 1.0;
    double dilation_odd = 1.0;
    bool extrapolated = false;
    bool accuracy_warning = false;
    std::string note;
};

// Rayleigh-Ritz in the harmonic-oscillator basis {h_0, ..., h_nmax} with
// quadrature matrix elements, an optimized dilation, and Richardson
// extrapolation in the basis size when convergence is algebraic.
OscillatorResult ground_energies_oscillator(double alpha, double beta, int n_max);

struct HamiltonianAction {
    std::vector<double> h_psi;
    // True when psi has weight outside the support constraint of an infinite
    // exponent; h_psi is then the compression of H to the constraint.
    bool infinite_energy = false;
};

// H psi on the grid defined by cfg (half_width defaults to
// default_half_width). Throws DimensionError if psi has the wrong length.
HamiltonianAction apply_hamiltonian(const std::vector<double>& psi, Exponent alpha, Exponent beta,
                                    const SolverConfig& cfg = {});

// Grid nodes x_j = -L + 2 L j / N used by apply_hamiltonian.
std::vector<double> grid_nodes(std::size_t n, double half_width);

}  // namespace ukit
