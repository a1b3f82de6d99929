#include <algorithm>
#include <cmath>

#include "internal.hpp"
#include "spectral_internal.hpp"
#include "ukit/errors.hpp"
#include "ukit/spectral.hpp"

namespace ukit {

namespace {

constexpr int kBoxBasis = 24;

bool power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void normalize(std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    if (s > 0.0) {
        s = 1.0 / std::sqrt(s);
        for (double& x : v) x *= s;
    }
}

std::vector<double> trial_vector(const detail::GridHamiltonian& h, int parity) {
    const auto x = grid_nodes(h.size(), h.half_width());
    std::vector<double> best;
    double best_e = INFINITY;
    for (int k = -24; k <= 24; ++k) {
        const double w = std::exp(0.125 * k);
        std::vector<double> v(x.size());
        for (std::size_t j = 0; j < x.size(); ++j) {
            double g = std::exp(-0.5 * (x[j] / w) * (x[j] / w));
            v[j] = parity > 0 ? g : x[j] * g;
        }
        detail::project_parity(v, parity);
        normalize(v);
        double e = h.energy(v.data());
        if (e < best_e) {
            best_e = e;
            best = std::move(v);
        }
    }
    return best;
}

GroundStateResult box_case(Exponent alpha, Exponent beta, const SolverConfig& cfg) {
    const double k = alpha.is_infinite() ? beta.value() : alpha.value();
    GroundStateResult r;
    r.config_echo = cfg;
    r.x = grid_nodes(cfg.grid_points, 1.0);
    auto sol = detail::box_galerkin(k, kBoxBasis, r.x);
    r.g = sol.g_even;
    r.g_prime = sol.g_odd;
    r.psi_even = std::move(sol.psi_even);
    r.psi_odd = std::move(sol.psi_odd);
    normalize(r.psi_even);
    normalize(r.psi_odd);
    r.residuals = {sol.residual_even, sol.residual_odd};
    r.preconditioned_residuals = r.residuals;
    r.iterations = {1, 1};
    r.parity_ordered = r.g < r.g_prime;
    r.grid.points = cfg.grid_points;
    r.grid.half_width = 1.0;
    r.grid.momentum_cutoff = std::acos(-1.0) * static_cast<double>(cfg.grid_points) / 2.0;
    r.grid.method = "box-galerkin";
    r.grid.representation = alpha.is_infinite() ? "position" : "momentum";
    return r;
}

}  // namespace

void SolverConfig::validate() const {
    if (grid_points < 256 || !power_of_two(grid_points))
        throw DomainError("grid_points must be a power of two >= 256");
    if (half_width && !(std::isfinite(*half_width) && *half_width > 0.0))
        throw DomainError("half_width must be positive and finite");
    if (max_iterations < 1) throw DomainError("max_iterations must be positive");
    if (!(residual_tol > 0.0)) throw DomainError("residual_tol must be positive");
    if (basis_size < 1 || basis_size > 400) throw DomainError("basis_size must lie in [1, 400]");
}

double default_half_width(Exponent alpha, Exponent beta) {
    double a = alpha.is_infinite() ? 1.0 : alpha.value();
    double b = beta.is_infinite() ? 1.0 : beta.value();
    return std::max(12.0, 4.0 * (a + b));
}

std::vector<double> grid_nodes(std::size_t n, double half_width) {
    std::vector<double> x(n);
    const double h = 2.0 * half_width / static_cast<double>(n);
    for (std::size_t j = 0; j < n; ++j) x[j] = -half_width + h * static_cast<double>(j);
    return x;
}

GroundStateResult ground_energies(Exponent alpha, Exponent beta, const SolverConfig& cfg) {
    cfg.validate();
    if (alpha.is_infinite() && beta.is_infinite())
        throw DomainError("ground energy undefined with both exponents infinite");
    if (alpha.is_infinite() || beta.is_infinite()) return box_case(alpha, beta, cfg);

    detail::GridSizing size;
    if (cfg.half_width) {
        size.points = cfg.grid_points;
        size.half_width = *cfg.half_width;
    } else {
        size = detail::choose_grid(alpha.value(), beta.value(), cfg.grid_points);
    }
    detail::GridHamiltonian h(alpha, beta, size.points, size.half_width);

    GroundStateResult r;
    r.config_echo = cfg;
    r.x = grid_nodes(size.points, size.half_width);
    auto even = detail::lobpcg_sector(h, +1, trial_vector(h, +1), cfg.max_iterations, cfg.residual_tol);
    auto odd = detail::lobpcg_sector(h, -1, trial_vector(h, -1), cfg.max_iterations, cfg.residual_tol);
    r.g = even.energy;
    r.g_prime = odd.energy;
    r.psi_even = std::move(even.vec);
    r.psi_odd = std::move(odd.vec);
    r.residuals = {even.residual, odd.residual};
    r.preconditioned_residuals = {even.preconditioned_residual, odd.preconditioned_residual};
    r.iterations = {even.iterations, odd.iterations};
    r.parity_ordered = r.g < r.g_prime;
    r.grid.points = size.points;
    r.grid.half_width = size.half_width;
    r.grid.momentum_cutoff = h.momentum_cutoff();
    r.grid.under_resolved = size.under_resolved;
    r.grid.method = "grid";
    r.grid.representation = "position";
    return r;
}

HamiltonianAction apply_hamiltonian(const std::vector<double>& psi, Exponent alpha, Exponent beta,
                                    const SolverConfig& cfg) {
    cfg.validate();
    if (psi.size() != cfg.grid_points)
        throw DimensionError("psi has " + std::to_string(psi.size()) + " entries, grid has " +
                             std::to_string(cfg.grid_points));
    const double L = cfg.half_width.value_or(default_half_width(alpha, beta));
    detail::GridHamiltonian h(alpha, beta, cfg.grid_points, L);
    HamiltonianAction out;
    out.h_psi.resize(psi.size());
    out.infinite_energy = h.apply(psi.data(), out.h_psi.data());
    return out;
}

}  // namespace ukit
