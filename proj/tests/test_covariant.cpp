#include <cmath>

#include <gtest/gtest.h>

#include "ukit/covariant.hpp"
#include "ukit/errors.hpp"

using namespace ukit;

namespace {

ConstantsBundle harmonic() {
    ConstantsBundle b;
    b.alpha = 2.0;
    b.beta = 2.0;
    b.c = 0.5;
    b.c_prime = 1.5;
    return b;
}

}  // namespace

TEST(GaussianModel, RejectsStatesBelowTheUncertaintyLimit) {
    EXPECT_THROW(CovariantModel::gaussian(0.5, 0.5), DomainError);
    EXPECT_NO_THROW(CovariantModel::gaussian(1.0, 0.5));
    EXPECT_TRUE(CovariantModel::gaussian(1.0, 0.5).sigma().verified);
}

TEST(GridPairModel, IsUnverified) {
    auto m = CovariantModel::grid_pair(Measure1D::uniform(-1, 1, 4), Measure1D::dirac(0.0));
    EXPECT_FALSE(m.sigma().verified);
    EXPECT_EQ(m.sigma().kind, SigmaKind::grid_pair);
}

TEST(MetricError, GaussianNoiseDeviation) {
    auto m = CovariantModel::gaussian(0.7, 2.0);
    EXPECT_NEAR(metric_error(m, Quadrature::q, 2.0), 0.7, 1e-12);
    EXPECT_NEAR(metric_error(m, Quadrature::p, 2.0), 2.0, 1e-12);
    // First absolute moment of N(0, s): s sqrt(2 / pi).
    EXPECT_NEAR(metric_error(m, Quadrature::q, 1.0), 0.7 * std::sqrt(2.0 / std::acos(-1.0)), 1e-10);
}

TEST(MetricError, OffsetNoiseAddsBias) {
    auto m = CovariantModel::unchecked(Measure1D::dirac(0.3), Measure1D::dirac(0.0));
    EXPECT_NEAR(metric_error(m, Quadrature::q, 2.0), 0.3, 1e-15);
    EXPECT_NEAR(metric_error(m, Quadrature::q, Exponent::infinity()), 0.3, 1e-15);
}

TEST(MarginalDistribution, IsConvolution) {
    auto m = CovariantModel::gaussian(1.0, 1.0);
    auto [q, p] = marginal_distribution(m, Measure1D::gaussian(2.0, 1.0), Measure1D::gaussian(-1.0, 2.0));
    EXPECT_NEAR(mean(q), 2.0, 1e-12);
    EXPECT_NEAR(variance(q), 2.0, 1e-12);
    EXPECT_NEAR(variance(p), 5.0, 1e-12);
}

TEST(CalibrationBracket, ContainsMetricError) {
    auto m = CovariantModel::gaussian(1.0, 1.0);
    auto b = calibration_error_bracket(m, Quadrature::q, 2.0, 0.1);
    EXPECT_NEAR(b.lower, 0.9, 1e-12);
    EXPECT_NEAR(b.upper, 1.1, 1e-12);
    EXPECT_EQ(calibration_error_bracket(m, Quadrature::q, 2.0, 5.0).lower, 0.0);
    EXPECT_THROW(calibration_error_bracket(m, Quadrature::q, 2.0, 0.0), DomainError);
}

TEST(VerifyMur, MinimalGaussianSaturates) {
    auto r = verify_mur(CovariantModel::gaussian(std::sqrt(0.5), std::sqrt(0.5)), 2.0, 2.0, harmonic());
    EXPECT_NEAR(r.product, 0.5, 1e-12);
    EXPECT_NEAR(r.saturation_gap, 0.0, 1e-12);
    ASSERT_TRUE(r.near_minimal_norm_bound);
    EXPECT_NEAR(*r.near_minimal_norm_bound, 0.0, 1e-6);
}

TEST(VerifyMur, ProductNeverBelowBoundOnValidStates) {
    for (int i = 0; i < 20; ++i)
        for (int j = 0; j < 20; ++j) {
            double sq = 0.1 * std::pow(1.3, i), sp = 0.1 * std::pow(1.3, j);
            if (sq * sp < 0.5) continue;
            auto r = verify_mur(CovariantModel::gaussian(sq, sp), 2.0, 2.0, harmonic());
            EXPECT_GE(r.product, 0.5 - 1e-9);
        }
}

TEST(VerifyMur, NoNormBoundAboveCPrime) {
    auto r = verify_mur(CovariantModel::gaussian(2.0, 2.0), 2.0, 2.0, harmonic());
    EXPECT_FALSE(r.near_minimal_norm_bound);
}

TEST(VerifyMur, InfiniteErrorIsIndefinite) {
    auto m = CovariantModel::unchecked(Measure1D::uniform(-1, 1), Measure1D::dirac(0.0));
    auto r = verify_mur(m, Exponent::infinity(), 2.0, harmonic());
    EXPECT_NEAR(r.d_q, 1.0, 1e-12);
    auto g = verify_mur(CovariantModel::gaussian(1.0, 1.0), Exponent::infinity(), 2.0, harmonic());
    EXPECT_TRUE(g.indefinite);
}

TEST(VerifyMur, NonGaussianIsFlagged) {
    auto m = CovariantModel::grid_pair(Measure1D::uniform(-1, 1), Measure1D::uniform(-1, 1));
    auto r = verify_mur(m, 2.0, 2.0, harmonic());
    EXPECT_NE(r.note.find("unverified"), std::string::npos);
}

TEST(StandardModel, ReflectsAndScalesProbe) {
    auto n = standard_model_noise(Measure1D::atoms({1.0, 3.0}, {0.5, 0.5}), 2.0);
    EXPECT_NEAR(mean(n), -1.0, 1e-15);
    EXPECT_NEAR(variance(n), 0.25, 1e-15);
    EXPECT_THROW(standard_model_noise(Measure1D::dirac(0.0), 0.0), DomainError);
}
