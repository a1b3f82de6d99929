#pragma once

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

namespace ukit::detail {

// Minimizer of a unimodal function on [a, b], to within tol.
template <class F>
double golden_section_min(F&& f, double a, double b, double tol) {
    const double r = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - r * (b - a), d = a + r * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    return fc <= fd ? c : d;
}

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss rule for the weight |x|^a exp(-x^2) on the real line, n nodes.
// With a = 0 this is the classical Gauss-Hermite rule.
QuadratureRule generalized_hermite_rule(double a, int n);

// Same nodes as generalized_hermite_rule, with weights divided by the weight
// function: sum_k w_k f(x_k) approximates the integral of |x|^a f(x) for f of
// the form exp(-x^2) times a polynomial.
QuadratureRule generalized_hermite_function_rule(double a, int n);

// Gauss rule for the weight (1 - x^2)^b on [-1, 1], n nodes.
QuadratureRule symmetric_jacobi_rule(double b, int n);

// E f(Z) for standard normal Z by a 96-node Gauss-Hermite rule.
double gauss_hermite_expectation(const std::function<double(double)>& f);

// Linear convolution of two sequences via FFTW.
std::vector<double> fft_convolve(const std::vector<double>& a, const std::vector<double>& b);

// Riemann zeta at negative arguments through the functional equation.
double zeta_negative(double s);

}  // namespace ukit::detail
