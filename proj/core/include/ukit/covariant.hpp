#pragma once

#include <optional>
#include <string>
#include <utility>

#include "ukit/constants.hpp"
#include "ukit/exponent.hpp"
#include "ukit/measures.hpp"

namespace ukit {

enum class Quadrature { q, p };

enum class SigmaKind {
    gaussian,   // centered Gaussian state with position/momentum widths s_q, s_p
    grid_pair,  // arbitrary marginals; no state-validity test exists
    unchecked,  // validity deliberately not enforced (algebraic identities)
};

struct SigmaTag {
    SigmaKind kind = SigmaKind::gaussian;
    double s_q = 0.0, s_p = 0.0;  // Gaussian widths; zero otherwise
    bool verified = false;         // true only for Gaussian tags that passed s_q s_p >= 1/2
};

// A covariant phase-space observable, represented by the position and
// momentum marginals of its generating state (the noise distributions).
class CovariantModel {
public:
    // Throws DomainError if s_q s_p < 1/2 (hbar = 1), i.e. no such state.
    static CovariantModel gaussian(double s_q, double s_p, double m_q = 0.0, double m_p = 0.0);
    // Arbitrary noise marginals, flagged as an unverified state.
    static CovariantModel grid_pair(Measure1D noise_q, Measure1D noise_p);
    // No validity requirement at all.
    static CovariantModel unchecked(Measure1D noise_q, Measure1D noise_p);

    const Measure1D& noise(Quadrature which) const { return which == Quadrature::q ? noise_q_ : noise_p_; }
    const Measure1D& noise_q() const { return noise_q_; }
    const Measure1D& noise_p() const { return noise_p_; }
    const SigmaTag& sigma() const { return tag_; }
    std::string describe() const;

private:
    CovariantModel(Measure1D q, Measure1D p, SigmaTag tag)
        : noise_q_(std::move(q)), noise_p_(std::move(p)), tag_(tag) {}
    Measure1D noise_q_, noise_p_;
    SigmaTag tag_;
};

// Output distributions of the covariant observable in the state with position
// and momentum distributions rho_q, rho_p: (rho_q * noise_q, rho_p * noise_p).
std::pair<Measure1D, Measure1D> marginal_distribution(const CovariantModel& model, const Measure1D& rho_q,
                                                      const Measure1D& rho_p);

// Worst-case distance between the covariant marginal and the ideal
// observable, equal to the alpha-deviation of the noise from 0.
double metric_error(const CovariantModel& model, Quadrature which, Exponent alpha);

struct Bracket {
    double lower = 0.0;
    double upper = 0.0;
};

// eps-calibration error bracket [max(0, D - eps), D + eps], D = metric_error.
Bracket calibration_error_bracket(const CovariantModel& model, Quadrature which, Exponent alpha, double eps);

struct ErrorReport {
    double d_q = 0.0, d_p = 0.0;
    double product = 0.0;
    double bound = 0.0;           // c_{alpha beta} (hbar = 1)
    double saturation_gap = 0.0;  // product - bound
    std::optional<double> near_minimal_norm_bound;
    bool indefinite = false;      // an error is infinite
    std::string note;
};

// Metric errors for both quadratures against the tradeoff bound c. When the
// product lies below c', also reports the distance bound of the observable to
// the nearest minimal one. An infinite error produces an indefinite report.
ErrorReport verify_mur(const CovariantModel& model, Exponent alpha, Exponent beta, const ConstantsBundle& constants);

// Noise distribution of the standard measurement model: the probe position
// distribution reflected and scaled by 1 / lambda.
Measure1D standard_model_noise(const Measure1D& probe, double coupling_lambda);

}  // namespace ukit
