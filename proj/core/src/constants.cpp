#include "ukit/constants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "internal.hpp"
#include "ukit/errors.hpp"
#include "ukit/format.hpp"

namespace ukit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kPi = std::acos(-1.0);

template <class F>
double bisect(F&& f, double lo, double hi, double tol) {
    double flo = f(lo);
    if (flo * f(hi) > 0.0) throw ConvergenceError("bisection bracket does not change sign", 0.0);
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Taylor coefficients of Ai about 0: a_{n+2} = a_{n-1} / ((n + 2)(n + 1)).
struct AirySeries {
    static constexpr int kTerms = 120;
    double a[kTerms];
    AirySeries() {
        a[0] = 1.0 / (std::pow(3.0, 2.0 / 3.0) * std::tgamma(2.0 / 3.0));
        a[1] = -1.0 / (std::pow(3.0, 1.0 / 3.0) * std::tgamma(1.0 / 3.0));
        a[2] = 0.0;
        for (int n = 1; n + 2 < kTerms; ++n) a[n + 2] = a[n - 1] / ((n + 2.0) * (n + 1.0));
    }
};

const AirySeries& airy_series() {
    static const AirySeries s;
    return s;
}

// Entropic constant B(alpha) = log(2 Gamma(1 + 1/alpha)) + (1/alpha) log(e alpha)
// exponentiated, i.e. 2 Gamma(1 + 1/alpha) (e alpha)^(1/alpha); 2 at infinity.
double entropy_factor(Exponent a) {
    if (a.is_infinite()) return 2.0;
    const double x = a.value();
    return 2.0 * std::tgamma(1.0 + 1.0 / x) * std::pow(std::exp(1.0) * x, 1.0 / x);
}

}  // namespace

double c_from_g(Exponent alpha, Exponent beta, double g) {
    if (!(g > 0.0)) throw DomainError("c_from_g needs g > 0");
    if (alpha.is_infinite() && beta.is_infinite()) return kInf;
    if (alpha.is_infinite()) return std::pow(g, 1.0 / beta.value());
    if (beta.is_infinite()) return std::pow(g, 1.0 / alpha.value());
    const double a = alpha.value(), b = beta.value();
    return std::pow(a, 1.0 / b) * std::pow(b, 1.0 / a) * std::pow(g / (a + b), 1.0 / a + 1.0 / b);
}

double uncertainty_product_lhs(double u, double alpha, double beta) {
    if (!(u > 0.0)) throw DomainError("uncertainty product must be positive");
    const double s = alpha + beta;
    return std::pow(u, alpha * beta / s) * std::pow(alpha, -alpha / s) * std::pow(beta, -beta / s) * s;
}

double hirschman_bound(Exponent alpha, Exponent beta) {
    return kPi * std::exp(1.0) / (entropy_factor(alpha) * entropy_factor(beta));
}

double trial_upper_bound_inf(double alpha) {
    if (!(alpha >= 1.0)) throw DomainError("trial bound needs alpha >= 1");
    double lg = std::lgamma(0.5 * alpha + 1.0) + std::lgamma(alpha + 1.5) - std::lgamma(0.5 * (alpha + 3.0));
    return std::exp(lg / alpha);
}

double airy_ai(double x) {
    const auto& s = airy_series();
    double sum = 0.0, p = 1.0;
    for (int n = 0; n < AirySeries::kTerms; ++n, p *= x) sum += s.a[n] * p;
    return sum;
}

double airy_ai_prime(double x) {
    const auto& s = airy_series();
    double sum = 0.0, p = 1.0;
    for (int n = 1; n < AirySeries::kTerms; ++n, p *= x) sum += n * s.a[n] * p;
    return sum;
}

double airy_prime_root() {
    return bisect([](double l) { return airy_ai_prime(-l); }, 0.5, 1.5, 1e-15);
}

double airy_root() {
    return bisect([](double l) { return airy_ai(-l); }, 2.0, 3.0, 1e-15);
}

double quartic_box_root(bool odd) {
    if (odd) {
        return bisect([](double x) { return std::sin(x) * std::cosh(x) - std::cos(x) * std::sinh(x); },
                      kPi + 1e-9, 1.5 * kPi - 1e-9, 1e-12);
    }
    return bisect([](double x) { return std::sin(x) * std::cosh(x) + std::cos(x) * std::sinh(x); },
                  0.5 * kPi + 1e-9, kPi - 1e-9, 1e-12);
}

std::optional<ExactAnchor> exact_anchor(Exponent alpha, Exponent beta) {
    if (alpha.is_infinite() && beta.is_infinite()) return ExactAnchor{kInf, kInf, "limit"};
    if (alpha.is_infinite()) std::swap(alpha, beta);
    const double a = alpha.value();
    if (beta.is_infinite()) {
        if (a == 2.0) return ExactAnchor{kPi / 2.0, kPi, "closed-form"};
        if (a == 4.0) return ExactAnchor{quartic_box_root(false), quartic_box_root(true), "transcendental"};
        if (a == 6.0) return ExactAnchor{kPi, 4.714, "tabulated"};
        if (a == 8.0) return ExactAnchor{3.909, 5.498, "tabulated"};
        if (a == 10.0) return ExactAnchor{4.672, 6.279, "tabulated"};
        return std::nullopt;
    }
    const double b = beta.value();
    if (a == 2.0 && b == 2.0) return ExactAnchor{0.5, 1.5, "closed-form"};
    if ((a == 1.0 && b == 2.0) || (a == 2.0 && b == 1.0)) {
        return ExactAnchor{c_from_g(1.0, 2.0, airy_prime_root()), c_from_g(1.0, 2.0, airy_root()), "airy"};
    }
    return std::nullopt;
}

double near_minimal_state_bound(double u, Exponent alpha, Exponent beta, double c, double c_prime) {
    if (u < c) throw DomainError("uncertainty product below the optimal constant");
    double gamma;
    if (alpha.is_infinite() && beta.is_infinite()) throw DomainError("no bound for (inf, inf)");
    if (alpha.is_infinite()) gamma = beta.value();
    else if (beta.is_infinite()) gamma = alpha.value();
    else gamma = alpha.value() * beta.value() / (alpha.value() + beta.value());
    const double cg = std::pow(c, gamma);
    const double ratio = (std::pow(u, gamma) - cg) / (std::pow(c_prime, gamma) - cg);
    return std::clamp(2.0 * std::sqrt(std::max(ratio, 0.0)), 0.0, 2.0);
}

ReebSupremum reeb_gaussian_search() {
    auto f = [](double x) { return std::sqrt(1.0 + x * x) - x; };
    auto neg = [&](double lx) {
        double x = std::exp(lx);
        return -f(x) * f(1.0 / x);
    };
    double lx = detail::golden_section_min(neg, -4.0, 3.0, 1e-10);
    ReebSupremum r;
    r.argmax = std::exp(lx);
    r.value = -0.5 * neg(lx);
    return r;
}

double reeb_gaussian_sup() { return reeb_gaussian_search().value; }

ConstantsBundle compute_constants(Exponent alpha, Exponent beta, const SolverConfig& cfg) {
    ConstantsBundle b;
    b.alpha = alpha;
    b.beta = beta;
    b.exact = exact_anchor(alpha, beta);
    b.hirschman = hirschman_bound(alpha, beta);
    if (alpha.is_infinite() && beta.is_infinite()) {
        b.g = b.g_prime = b.c = b.c_prime = kInf;
        b.trial_upper = kInf;
        return b;
    }
    auto r = ground_energies(alpha, beta, cfg);
    b.g = r.g;
    b.g_prime = r.g_prime;
    b.c = c_from_g(alpha, beta, r.g);
    b.c_prime = c_from_g(alpha, beta, r.g_prime);
    b.grid = r.grid;
    b.parity_ordered = r.parity_ordered;
    if (alpha.is_infinite()) b.trial_upper = trial_upper_bound_inf(beta.value());
    if (beta.is_infinite()) b.trial_upper = trial_upper_bound_inf(alpha.value());
    return b;
}

std::string constants_csv_header() {
    return "alpha,beta,g,g_prime,c,c_prime,hirschman,trial_upper,exact,provenance";
}

std::string constants_csv_row(const ConstantsBundle& b) {
    std::string row = b.alpha.to_string() + "," + b.beta.to_string() + "," + format_double(b.g) + "," +
                      format_double(b.g_prime) + "," + format_double(b.c) + "," +
                      format_double(b.c_prime) + "," + format_double(b.hirschman) + ",";
    if (b.trial_upper) row += format_double(*b.trial_upper);
    row += ",";
    if (b.exact) row += format_double(b.exact->c) + "," + b.exact->provenance;
    else row += ",solver";
    return row;
}

}  // namespace ukit
