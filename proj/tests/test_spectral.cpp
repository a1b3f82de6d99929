#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "ukit/constants.hpp"
#include "ukit/errors.hpp"
#include "ukit/spectral.hpp"

using namespace ukit;

namespace {

const double kPi = std::acos(-1.0);
const Exponent kInf = Exponent::infinity();

}  // namespace

TEST(SolverConfig, Validation) {
    SolverConfig c;
    EXPECT_NO_THROW(c.validate());
    c.grid_points = 1000;
    EXPECT_THROW(c.validate(), DomainError);
    c.grid_points = 128;
    EXPECT_THROW(c.validate(), DomainError);
    c = {};
    c.residual_tol = 0.0;
    EXPECT_THROW(c.validate(), DomainError);
    c = {};
    c.half_width = -1.0;
    EXPECT_THROW(c.validate(), DomainError);
}

TEST(DefaultHalfWidth, GrowsWithExponents) {
    EXPECT_EQ(default_half_width(1.0, 1.0), 12.0);
    EXPECT_EQ(default_half_width(4.0, 4.0), 32.0);
    EXPECT_EQ(default_half_width(kInf, 2.0), 12.0);
}

TEST(GridNodes, Layout) {
    auto x = grid_nodes(8, 2.0);
    ASSERT_EQ(x.size(), 8u);
    EXPECT_EQ(x[0], -2.0);
    EXPECT_EQ(x[4], 0.0);
    EXPECT_NEAR(x[1] - x[0], 0.5, 1e-15);
}

TEST(ApplyHamiltonian, GaussianIsHarmonicEigenvector) {
    SolverConfig cfg;
    cfg.grid_points = 512;
    cfg.half_width = 12.0;
    auto x = grid_nodes(512, 12.0);
    std::vector<double> psi(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) psi[i] = std::exp(-0.5 * x[i] * x[i]);
    auto h = apply_hamiltonian(psi, 2.0, 2.0, cfg);
    EXPECT_FALSE(h.infinite_energy);
    for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(h.h_psi[i], psi[i], 1e-10);
}

TEST(ApplyHamiltonian, FlagsWeightOutsideTheBox) {
    SolverConfig cfg;
    cfg.grid_points = 256;
    cfg.half_width = 4.0;
    auto x = grid_nodes(256, 4.0);
    std::vector<double> psi(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) psi[i] = std::exp(-x[i] * x[i]);
    EXPECT_TRUE(apply_hamiltonian(psi, kInf, 2.0, cfg).infinite_energy);
    EXPECT_THROW(apply_hamiltonian(std::vector<double>(100), 2.0, 2.0, cfg), DimensionError);
}

TEST(GroundEnergies, HarmonicOscillator) {
    auto r = ground_energies(2.0, 2.0);
    EXPECT_NEAR(r.g, 1.0, 1e-9);
    EXPECT_NEAR(r.g_prime, 3.0, 1e-9);
    EXPECT_TRUE(r.parity_ordered);
    EXPECT_EQ(r.grid.method, "grid");
    EXPECT_LT(r.preconditioned_residuals[0], 1e-9);
}

TEST(GroundEnergies, LinearPotentialGivesAiryZeros) {
    auto r = ground_energies(1.0, 2.0);
    EXPECT_NEAR(r.g, airy_prime_root(), 1e-8);
    EXPECT_NEAR(r.g_prime, airy_root(), 1e-8);
}

TEST(GroundEnergies, FourierSymmetry) {
    for (auto [a, b] : std::vector<std::pair<double, double>>{{1.0, 2.0}, {1.5, 4.0}, {3.0, 7.0}}) {
        auto r1 = ground_energies(a, b), r2 = ground_energies(b, a);
        EXPECT_NEAR(r1.g, r2.g, 1e-8 * r1.g) << a << "," << b;
        EXPECT_NEAR(r1.g_prime, r2.g_prime, 1e-8 * r1.g_prime) << a << "," << b;
    }
}

TEST(GroundEnergies, BoxIsParticleInABox) {
    auto r = ground_energies(kInf, 2.0);
    EXPECT_NEAR(r.g, kPi * kPi / 4.0, 1e-9);
    EXPECT_NEAR(r.g_prime, kPi * kPi, 1e-8);
    EXPECT_EQ(r.grid.method, "box-galerkin");
    EXPECT_EQ(r.grid.representation, "position");
    auto m = ground_energies(2.0, kInf);
    EXPECT_NEAR(m.g, r.g, 1e-12);
    EXPECT_EQ(m.grid.representation, "momentum");
}

TEST(GroundEnergies, EigenvectorsAreNormalizedWithParity) {
    auto r = ground_energies(1.5, 1.5);
    ASSERT_EQ(r.psi_even.size(), r.x.size());
    double ne = 0.0, overlap = 0.0;
    for (std::size_t i = 0; i < r.x.size(); ++i) {
        ne += r.psi_even[i] * r.psi_even[i];
        overlap += r.psi_even[i] * r.psi_odd[i];
    }
    EXPECT_NEAR(ne, 1.0, 1e-10);
    EXPECT_NEAR(overlap, 0.0, 1e-10);
    const std::size_t n = r.x.size();
    for (std::size_t i = 1; i < n; ++i) {
        EXPECT_NEAR(r.psi_even[i], r.psi_even[n - i], 1e-10);
        EXPECT_NEAR(r.psi_odd[i], -r.psi_odd[n - i], 1e-10);
    }
}

TEST(GroundEnergies, BothInfiniteIsADomainError) { EXPECT_THROW(ground_energies(kInf, kInf), DomainError); }

TEST(GroundEnergies, IterationBudgetExhaustionThrows) {
    SolverConfig cfg;
    cfg.max_iterations = 1;
    cfg.grid_points = 4096;
    cfg.half_width = 30.0;
    EXPECT_THROW(ground_energies(1.3, 5.0, cfg), ConvergenceError);
}

TEST(Oscillator, ExactForHarmonicCase) {
    auto r = ground_energies_oscillator(2.0, 2.0, 40);
    EXPECT_NEAR(r.g, 1.0, 1e-12);
    EXPECT_NEAR(r.g_prime, 3.0, 1e-12);
}

TEST(Oscillator, AgreesWithGrid) {
    for (auto [a, b] : std::vector<std::pair<double, double>>{{1.0, 1.0}, {1.0, 8.0}, {4.0, 4.0}}) {
        auto o = ground_energies_oscillator(a, b, 400);
        auto g = ground_energies(a, b);
        EXPECT_NEAR(o.g, g.g, 1e-6) << a << "," << b;
        EXPECT_NEAR(o.g_prime, g.g_prime, 1e-6) << a << "," << b;
    }
}

TEST(Oscillator, CapsHighExponents) {
    auto r = ground_energies_oscillator(8.0, 8.0, 400);
    EXPECT_EQ(r.basis_used, 88);
    EXPECT_FALSE(r.note.empty());
    EXPECT_TRUE(ground_energies_oscillator(1.0, 25.0, 20).accuracy_warning);
    EXPECT_THROW(ground_energies_oscillator(kPi, 0.5, 10), DomainError);
}
