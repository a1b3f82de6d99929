#include "ukit/covariant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ukit/errors.hpp"
#include "ukit/format.hpp"

namespace ukit {

namespace {

constexpr double kHalfHbar = 0.5;
constexpr double kStateTol = 1e-12;

}  // namespace

CovariantModel CovariantModel::gaussian(double s_q, double s_p, double m_q, double m_p) {
    if (!(s_q > 0.0 && s_p > 0.0)) throw DomainError("Gaussian widths must be positive");
    if (s_q * s_p < kHalfHbar * (1.0 - kStateTol))
        throw DomainError("s_q * s_p = " + format_double(s_q * s_p) + " < 1/2: not a valid state");
    SigmaTag tag{SigmaKind::gaussian, s_q, s_p, true};
    return CovariantModel(Measure1D::gaussian(m_q, s_q), Measure1D::gaussian(m_p, s_p), tag);
}

CovariantModel CovariantModel::grid_pair(Measure1D noise_q, Measure1D noise_p) {
    return CovariantModel(std::move(noise_q), std::move(noise_p), SigmaTag{SigmaKind::grid_pair, 0.0, 0.0, false});
}

CovariantModel CovariantModel::unchecked(Measure1D noise_q, Measure1D noise_p) {
    return CovariantModel(std::move(noise_q), std::move(noise_p), SigmaTag{SigmaKind::unchecked, 0.0, 0.0, false});
}

std::string CovariantModel::describe() const {
    switch (tag_.kind) {
        case SigmaKind::gaussian:
            return "gaussian(s_q=" + format_double(tag_.s_q) + ", s_p=" + format_double(tag_.s_p) + ")";
        case SigmaKind::grid_pair:
            return "grid pair (unverified sigma)";
        case SigmaKind::unchecked:
            return "unchecked";
    }
    return {};
}

std::pair<Measure1D, Measure1D> marginal_distribution(const CovariantModel& model, const Measure1D& rho_q,
                                                      const Measure1D& rho_p) {
    return {convolve(rho_q, model.noise_q()), convolve(rho_p, model.noise_p())};
}

double metric_error(const CovariantModel& model, Quadrature which, Exponent alpha) {
    return deviation(model.noise(which), 0.0, alpha);
}

Bracket calibration_error_bracket(const CovariantModel& model, Quadrature which, Exponent alpha, double eps) {
    if (!(eps > 0.0)) throw DomainError("calibration tolerance must be positive");
    const double d = metric_error(model, which, alpha);
    return {std::max(0.0, d - eps), d + eps};
}

ErrorReport verify_mur(const CovariantModel& model, Exponent alpha, Exponent beta, const ConstantsBundle& constants) {
    ErrorReport r;
    r.d_q = metric_error(model, Quadrature::q, alpha);
    r.d_p = metric_error(model, Quadrature::p, beta);
    r.bound = constants.c;
    if (std::isinf(r.d_q) || std::isinf(r.d_p)) {
        r.indefinite = true;
        r.product = std::numeric_limits<double>::infinity();
        r.saturation_gap = r.product;
        r.note = "infinite error: the tradeoff holds in the indefinite sense 0 * inf >= c";
        return r;
    }
    r.product = r.d_q * r.d_p;
    r.saturation_gap = r.product - r.bound;
    if (r.product < constants.c_prime && r.product >= r.bound) {
        r.near_minimal_norm_bound =
            near_minimal_state_bound(r.product, alpha, beta, constants.c, constants.c_prime);
    }
    if (model.sigma().kind != SigmaKind::gaussian) r.note = "unverified sigma";
    return r;
}

Measure1D standard_model_noise(const Measure1D& probe, double coupling_lambda) {
    if (!(coupling_lambda > 0.0)) throw DomainError("coupling constant must be positive");
    return scale(probe, -1.0 / coupling_lambda);
}

}  // namespace ukit
