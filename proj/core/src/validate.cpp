#include "ukit/validate.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <optional>

#include "ukit/constants.hpp"
#include "ukit/covariant.hpp"
#include "ukit/discrete.hpp"
#include "ukit/transport.hpp"

namespace ukit {

namespace {

const double kPi = std::acos(-1.0);

struct Spec {
    const char* name;
    const char* source;
    double expected, tolerance;
    Comparison cmp;
    std::function<double()> compute;
};

bool check(double v, double e, double tol, Comparison c) {
    switch (c) {
        case Comparison::near: return std::abs(v - e) <= tol;
        case Comparison::at_least: return v >= e - tol;
        case Comparison::at_most: return v <= e + tol;
        case Comparison::relative: return std::abs(v - e) <= tol * std::abs(e);
    }
    return false;
}

}  // namespace

const char* comparison_name(Comparison c) {
    switch (c) {
        case Comparison::near: return "abs";
        case Comparison::at_least: return "at_least";
        case Comparison::at_most: return "at_most";
        case Comparison::relative: return "rel";
    }
    return "?";
}

std::vector<AnchorResult> run_anchors(const SolverConfig& cfg) {
    const Exponent inf = Exponent::infinity();
    // Solves are shared between anchors.
    std::optional<GroundStateResult> h22, h12;
    std::optional<ConstantsBundle> b2i, b4i, b6i, b8i, b10i;
    auto gs22 = [&]() -> const GroundStateResult& { if (!h22) h22 = ground_energies(2.0, 2.0, cfg); return *h22; };
    auto gs12 = [&]() -> const GroundStateResult& { if (!h12) h12 = ground_energies(1.0, 2.0, cfg); return *h12; };
    auto box = [&](std::optional<ConstantsBundle>& slot, double a) -> const ConstantsBundle& {
        if (!slot) slot = compute_constants(a, inf, cfg);
        return *slot;
    };

    const double tabulated_c8 = 3.909, tabulated_c10 = 4.672;
    const double c12_airy = c_from_g(1.0, 2.0, airy_prime_root());
    const double stirling50 = 50.0 / std::exp(1.0) + std::log(4.0 * kPi * 50.0) / (2.0 * std::exp(1.0));

    std::vector<Spec> specs = {
        {"g(2,2)", "harmonic oscillator ground energy", 1.0, 1e-6, Comparison::near, [&] { return gs22().g; }},
        {"g'(2,2)", "harmonic oscillator first excited energy", 3.0, 1e-6, Comparison::near, [&] { return gs22().g_prime; }},
        {"g(1,2)", "first zero of Ai' (1.01879)", 1.01879, 1e-5, Comparison::near, [&] { return gs12().g; }},
        {"g(1,2) oscillator basis", "first zero of Ai' (1.01879)", 1.01879, 1e-5, Comparison::near,
         [&] { return ground_energies_oscillator(1.0, 2.0, 200).g; }},
        {"g(1,2) vs Airy", "airy_prime_root", airy_prime_root(), 1e-6, Comparison::near, [&] { return gs12().g; }},
        {"c(2,2)", "reference value 1/2", 0.5, 1e-6, Comparison::near, [&] { return c_from_g(2.0, 2.0, gs22().g); }},
        {"c'(2,2)", "reference value 3/2", 1.5, 1e-6, Comparison::near, [&] { return c_from_g(2.0, 2.0, gs22().g_prime); }},
        {"c(1,2)", "reference value 0.3958", 0.3958, 5e-4, Comparison::near, [&] { return c_from_g(1.0, 2.0, gs12().g); }},
        {"c(1,2) vs Airy", "c_from_g(1, 2, airy_prime_root)", c12_airy, 1e-6, Comparison::near,
         [&] { return c_from_g(1.0, 2.0, gs12().g); }},
        {"c(2,inf)", "reference value pi/2", 1.5708, 1e-4, Comparison::near, [&] { return box(b2i, 2.0).c; }},
        {"c'(2,inf)", "reference value pi", 3.1416, 1e-3, Comparison::near, [&] { return box(b2i, 2.0).c_prime; }},
        {"c(4,inf)", "reference value 2.365", 2.365, 2e-3, Comparison::near, [&] { return box(b4i, 4.0).c; }},
        {"c'(4,inf)", "reference value 3.927", 3.927, 2e-3, Comparison::near, [&] { return box(b4i, 4.0).c_prime; }},
        {"c(6,inf)", "reference value pi", 3.1416, 2e-3, Comparison::near, [&] { return box(b6i, 6.0).c; }},
        {"c(8,inf)", "reference value 3.909", tabulated_c8, 5e-3, Comparison::near, [&] { return box(b8i, 8.0).c; }},
        {"c(10,inf)", "reference value 4.672", tabulated_c10, 5e-3, Comparison::near, [&] { return box(b10i, 10.0).c; }},
        {"hirschman(2,2)", "exact at the Gaussian", 0.5, 1e-9, Comparison::near, [] { return hirschman_bound(2.0, 2.0); }},
        {"trial_upper(6) >= c(6,inf)", "trial-state upper bound", kPi, 1e-6, Comparison::at_least,
         [] { return trial_upper_bound_inf(6.0); }},
        {"trial_upper(50) asymptote", "alpha/e + ln(4 pi alpha)/(2e)", stirling50, 0.02, Comparison::relative,
         [] { return trial_upper_bound_inf(50.0); }},
        {"airy_prime_root", "-lambda = 1.0188", 1.0188, 5e-5, Comparison::near, [] { return airy_prime_root(); }},
        {"reeb_gaussian_sup", "(sqrt 2 - 1)^2 / 2", std::pow(std::sqrt(2.0) - 1.0, 2) / 2.0, 1e-9, Comparison::near,
         [] { return reeb_gaussian_sup(); }},
        {"reeb argmax", "x = 1", 1.0, 1e-6, Comparison::near, [] { return reeb_gaussian_search().argmax; }},
        {"minimal Gaussian D2 D2", "saturates c(2,2) = 1/2", 0.5, 1e-9, Comparison::near,
         [&] {
             ConstantsBundle b;
             b.alpha = 2.0;
             b.beta = 2.0;
             b.c = 0.5;
             b.c_prime = 1.5;
             auto s = std::sqrt(0.5);
             return verify_mur(CovariantModel::gaussian(s, s), 2.0, 2.0, b).product;
         }},
        {"near-minimal bound u=0.75", "2 sqrt((0.75 - 0.5) / (1.5 - 0.5))", 1.0, 1e-12, Comparison::near,
         [] { return near_minimal_state_bound(0.75, 2.0, 2.0, 0.5, 1.5); }},
        {"Weyl UV - w VU (d=3)", "UV = exp(2 pi i / 3) VU", 0.0, 1e-12, Comparison::at_most,
         [] { return discrete::weyl_pair(3, 1).commutation_residual; }},
        {"diagram touch point (d=3)", "axes touched at 1 - 1/d", 2.0 / 3.0, 1e-12, Comparison::near,
         [] { return discrete::preparation_diagram(3, 0).boundary.front().dp; }},
        {"W_alpha(dirac 1, dirac 4)", "|x - y| for every alpha", 3.0, 1e-12, Comparison::near,
         [] { return wasserstein(Measure1D::dirac(1.0), Measure1D::dirac(4.0), 1.7); }},
        {"W2 centred Gaussians", "|s1 - s2|", 1.5, 1e-9, Comparison::near,
         [] { return wasserstein(Measure1D::gaussian(0.0, 0.5), Measure1D::gaussian(0.0, 2.0), 2.0); }},
    };

    std::vector<AnchorResult> out;
    for (const auto& s : specs) {
        AnchorResult r;
        r.name = s.name;
        r.source = s.source;
        r.expected = s.expected;
        r.tolerance = s.tolerance;
        r.comparison = s.cmp;
        auto t0 = std::chrono::steady_clock::now();
        try {
            r.value = s.compute();
            r.passed = check(r.value, r.expected, r.tolerance, r.comparison);
        } catch (const std::exception& e) {
            r.value = NAN;
            r.error = e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace ukit
