#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <fftw3.h>

#include "ukit/exponent.hpp"

namespace ukit::detail {

// H = V(x) + T(p) on the periodic grid x_j = -L + j h, h = 2L/N. For a finite
// exponent that is not an even integer, the entries at the origin and its
// three nearest neighbours on each side (in x, or in p on the momentum side)
// carry a generalized Euler-Maclaurin correction built from zeta(-alpha - 2k)
// h^alpha, which cancels the leading trapezoid errors at the kink of
// |x|^alpha. An infinite exponent turns the corresponding factor into a
// projection onto [-1, 1].
class GridHamiltonian {
public:
    GridHamiltonian(Exponent alpha, Exponent beta, std::size_t n, double half_width);
    ~GridHamiltonian();
    GridHamiltonian(const GridHamiltonian&) = delete;
    GridHamiltonian& operator=(const GridHamiltonian&) = delete;

    std::size_t size() const noexcept { return n_; }
    double half_width() const noexcept { return L_; }
    double momentum_cutoff() const noexcept;
    const std::vector<double>& potential() const noexcept { return V_; }
    const std::vector<double>& kinetic() const noexcept { return T_; }

    // out = H in. Returns true if the input had weight outside a box constraint.
    bool apply(const double* in, double* out) const;
    // out = D^-1/2 F^-1 (T + s)^-1 F D^-1/2 in with D = |V| + s.
    void precondition(const double* in, double* out, double shift) const;
    // Expectation <psi|H|psi> for real psi, summed as separate position and
    // momentum contributions.
    double energy(const double* psi) const;

private:
    void forward(const double* in) const;   // buf_ -> spec_
    void backward(double* out) const;       // spec_ -> out

    std::size_t n_;
    double L_;
    bool box_x_ = false, box_p_ = false;
    std::vector<double> V_, T_;  // T_ has n/2 + 1 entries
    mutable std::vector<double> buf_;
    mutable std::vector<std::complex<double>> spec_;
    fftw_plan fwd_ = nullptr, bwd_ = nullptr;
};

struct SectorSolution {
    double energy = 0.0;
    std::vector<double> vec;
    double residual = 0.0;
    double preconditioned_residual = 0.0;
    int iterations = 0;
};

// Lowest eigenpair of H restricted to the parity sector (+1 even, -1 odd)
// by locally optimal block preconditioned conjugate gradients (block size 1).
SectorSolution lobpcg_sector(const GridHamiltonian& h, int parity, std::vector<double> x0,
                             int max_iterations, double tol);

void project_parity(std::vector<double>& v, int parity);

struct BoxSolution {
    double g_even = 0.0, g_odd = 0.0;
    double residual_even = 0.0, residual_odd = 0.0;
    std::vector<double> psi_even, psi_odd;  // sampled at the requested nodes
};

// Lowest even and odd eigenvalues of |P|^beta for states supported in
// [-1, 1], in the basis (1 - x^2)^(beta/2) C_n^((beta+1)/2)(x).
BoxSolution box_galerkin(double beta, int n_basis, const std::vector<double>& nodes);

struct GridSizing {
    std::size_t points = 0;
    double half_width = 0.0;
    bool under_resolved = false;
};

GridSizing choose_grid(double alpha, double beta, std::size_t max_points);

}  // namespace ukit::detail
