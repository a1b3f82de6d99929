#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "ukit/errors.hpp"
#include "ukit/measures.hpp"

using namespace ukit;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

// Midpoint rule with n nodes for int_a^b f.
template <class F>
double midpoint(F f, double a, double b, int n) {
    double h = (b - a) / n, s = 0.0;
    for (int i = 0; i < n; ++i) s += f(a + (i + 0.5) * h);
    return s * h;
}

Measure1D random_atoms(std::mt19937_64& rng, int max_atoms) {
    std::uniform_int_distribution<int> count(1, max_atoms);
    std::uniform_real_distribution<double> pos(-3.0, 3.0), w(0.05, 1.0);
    int n = count(rng);
    std::vector<double> pts, wts;
    while (static_cast<int>(pts.size()) < n) {
        double x = pos(rng);
        bool dup = false;
        for (double p : pts) dup |= std::abs(p - x) < 1e-9;
        if (!dup) pts.push_back(x);
    }
    std::sort(pts.begin(), pts.end());
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        wts.push_back(w(rng));
        total += wts.back();
    }
    for (double& x : wts) x /= total;
    return Measure1D::atoms(pts, wts);
}

}  // namespace

TEST(Exponent, ParsesInfinityAndRejectsSmallValues) {
    EXPECT_TRUE(Exponent::parse("inf").is_infinite());
    EXPECT_TRUE(Exponent::parse("Infinity").is_infinite());
    EXPECT_DOUBLE_EQ(Exponent::parse("1.5").value(), 1.5);
    EXPECT_THROW(Exponent(0.5), DomainError);
    EXPECT_THROW(Exponent::parse("abc"), DomainError);
    EXPECT_EQ(Exponent(2.0).to_string(), "2");
    EXPECT_EQ(Exponent::infinity().to_string(), "inf");
}

TEST(Measure1D, ValidatesInvariants) {
    EXPECT_THROW(Measure1D::atoms({0.0, 1.0}, {0.5, 0.4}), RepresentationError);
    EXPECT_THROW(Measure1D::atoms({1.0, 0.0}, {0.5, 0.5}), RepresentationError);
    EXPECT_THROW(Measure1D::atoms({0.0, 1.0}, {1.5, -0.5}), RepresentationError);
    EXPECT_THROW(Measure1D::grid(0.0, 0.5, {1.0, 1.0, 1.0}), RepresentationError);
    EXPECT_THROW(Measure1D::grid(0.0, -1.0, {-1.0}), RepresentationError);
    EXPECT_THROW(Measure1D::quantile_table({0.2, 0.1}, {0.0, 1.0}), RepresentationError);
    EXPECT_THROW(Measure1D::quantile_table({0.1, 0.2}, {1.0, 0.0}), RepresentationError);
    EXPECT_THROW(Measure1D::gaussian(0.0, 0.0), RepresentationError);
    EXPECT_NO_THROW(Measure1D::grid(0.0, 0.25, {1.0, 1.0, 1.0, 1.0}));
}

TEST(Deviation, PointMeasureGivesDistance) {
    auto d = Measure1D::dirac(1.25);
    for (double a : {1.0, 1.5, 2.0, 7.0}) EXPECT_NEAR(deviation(d, -0.5, a), 1.75, 1e-14);
    EXPECT_DOUBLE_EQ(deviation(d, -0.5, Exponent::infinity()), 1.75);
}

TEST(Deviation, UniformIntervalMatchesQuadratureOracle) {
    auto u = Measure1D::uniform(0.0, 1.0);
    EXPECT_DOUBLE_EQ(deviation(u, 0.5, Exponent::infinity()), 0.5);
    EXPECT_NEAR(deviation(u, 0.5, 2.0), 1.0 / std::sqrt(12.0), 1e-15);
    for (double a : {1.0, 1.7, 2.0, 3.0}) {
        for (double y : {0.5, 0.1, 1.7}) {
            double oracle = std::pow(
                midpoint([&](double x) { return std::pow(std::abs(x - y), a); }, 0.0, 1.0,
                         1000000),
                1.0 / a);
            EXPECT_NEAR(deviation(u, y, a), oracle, 1e-9) << "alpha=" << a << " y=" << y;
        }
    }
}

TEST(Deviation, GaussianAbsoluteMomentMatchesQuadrature) {
    const double pi = std::acos(-1.0);
    for (double m : {0.0, 0.3, -2.0, 6.0}) {
        for (double a : {1.0, 1.5, 2.0, 3.3}) {
            double oracle = midpoint(
                [&](double z) {
                    return std::pow(std::abs(m + 0.7 * z), a) * std::exp(-0.5 * z * z) /
                           std::sqrt(2 * pi);
                },
                -14.0, 14.0, 400000);
            EXPECT_NEAR(gaussian_abs_moment(m, 0.7, a) / oracle, 1.0, 1e-9)
                << "m=" << m << " alpha=" << a;
        }
    }
    EXPECT_NEAR(gaussian_abs_moment(0.0, 1.0, 2.0), 1.0, 1e-14);
    EXPECT_NEAR(gaussian_abs_moment(0.0, 1.0, 1.0), std::sqrt(2.0 / pi), 1e-14);
    EXPECT_TRUE(std::isinf(deviation(Measure1D::gaussian(0, 1), 0.0, Exponent::infinity())));
}

TEST(Deviation, HeavyTailedQuantileTableIsInfinite) {
    auto q = Measure1D::quantile_table({0.1, 0.5, 0.9}, {-kInf, 0.0, kInf});
    EXPECT_TRUE(std::isinf(deviation(q, 0.0, 2.0)));
    EXPECT_TRUE(std::isinf(spread(q, 1.0).value));
}

TEST(Spread, ClassicalMinimizers) {
    auto u = Measure1D::uniform(0.0, 1.0, 8);
    auto s1 = spread(u, 1.0);
    EXPECT_NEAR(s1.value, 0.25, 1e-12);
    EXPECT_NEAR(s1.minimizer, 0.5, 1e-12);

    auto d = spread(Measure1D::dirac(3.0), 2.5);
    EXPECT_NEAR(d.value, 0.0, 1e-14);
    EXPECT_NEAR(d.minimizer, 3.0, 1e-12);

    auto g = spread(Measure1D::gaussian(1.5, 0.3), 2.0);
    EXPECT_NEAR(g.value, 0.3, 1e-14);
    EXPECT_NEAR(g.minimizer, 1.5, 1e-14);

    auto inf = spread(Measure1D::atoms({-1.0, 0.0, 3.0}, {0.2, 0.5, 0.3}), Exponent::infinity());
    EXPECT_DOUBLE_EQ(inf.value, 2.0);
    EXPECT_DOUBLE_EQ(inf.minimizer, 1.0);
}

TEST(Spread, GeneralExponentMinimizesDeviation) {
    auto m = Measure1D::atoms({0.0, 1.0, 4.0}, {0.5, 0.3, 0.2});
    for (double a : {1.3, 3.0, 6.0}) {
        auto s = spread(m, a);
        EXPECT_NEAR(s.value, deviation(m, s.minimizer, a), 1e-12);
        for (double dy : {-1e-3, 1e-3}) EXPECT_LE(s.value, deviation(m, s.minimizer + dy, a));
    }
}

TEST(Convolve, DiracShifts) {
    auto g = Measure1D::grid(-1.0, 0.5, {0.4, 1.2, 0.4});
    auto c = convolve(Measure1D::dirac(2.0), g);
    ASSERT_EQ(c.kind(), MeasureKind::grid);
    EXPECT_DOUBLE_EQ(c.as_grid().origin, 1.0);
    EXPECT_EQ(c.as_grid().values, g.as_grid().values);

    auto q = Measure1D::quantile_table({0.25, 0.75}, {0.0, 1.0});
    auto cq = convolve(q, Measure1D::dirac(-1.0));
    EXPECT_NEAR(quantile(cq, 0.5), -0.5, 1e-15);
}

TEST(Convolve, GaussiansAddVariances) {
    auto c = convolve(Measure1D::gaussian(0.0, 0.6), Measure1D::gaussian(1.0, 0.8));
    ASSERT_EQ(c.kind(), MeasureKind::gaussian);
    EXPECT_NEAR(c.as_gaussian().std, 1.0, 1e-15);
    EXPECT_NEAR(c.as_gaussian().mean, 1.0, 1e-15);
}

TEST(Convolve, UniformGridsGiveTriangle) {
    const int n = 64;
    const double h = 1.0 / n;
    auto u = Measure1D::uniform(0.0, 1.0, n);
    auto c = convolve(u, u);
    ASSERT_EQ(c.kind(), MeasureKind::grid);
    const auto& g = c.as_grid();
    ASSERT_EQ(g.values.size(), static_cast<size_t>(2 * n - 1));
    EXPECT_NEAR(g.origin, 0.5 * h, 1e-15);
    // Oracle: samples of the triangular density 1 - |x - 1| at cell centers.
    for (size_t m = 0; m < g.values.size(); ++m) {
        double center = g.origin + (m + 0.5) * h;
        EXPECT_NEAR(g.values[m], 1.0 - std::abs(center - 1.0), 1e-12);
    }
    EXPECT_NEAR(mean(c), 1.0, 1e-12);
}

TEST(Convolve, AtomsExactAndQuantileRejected) {
    auto a = Measure1D::atoms({0.0, 1.0}, {0.5, 0.5});
    auto c = convolve(a, a);
    ASSERT_EQ(c.kind(), MeasureKind::atoms);
    EXPECT_EQ(c.as_atoms().points, (std::vector<double>{0.0, 1.0, 2.0}));
    EXPECT_NEAR(c.as_atoms().weights[1], 0.5, 1e-15);
    auto q = Measure1D::quantile_table({0.5}, {0.0});
    EXPECT_THROW(convolve(q, a), ConversionError);
}

TEST(Convolve, AtomsWithGaussianIsMixture) {
    auto a = Measure1D::atoms({-2.0, 2.0}, {0.25, 0.75});
    auto c = convolve(a, Measure1D::gaussian(0.0, 0.5));
    EXPECT_NEAR(mean(c), 1.0, 1e-6);
    EXPECT_NEAR(variance(c), 0.25 + 4.0 * 4.0 * 0.25 * 0.75, 1e-3);
    EXPECT_FALSE(c.note().empty());
}

TEST(Quantile, Examples) {
    EXPECT_DOUBLE_EQ(quantile(Measure1D::dirac(0.7), 0.5), 0.7);
    EXPECT_DOUBLE_EQ(quantile(Measure1D::atoms({0.0, 1.0}, {0.5, 0.5}), 0.25), 0.0);
    EXPECT_DOUBLE_EQ(quantile(Measure1D::atoms({0.0, 1.0}, {0.5, 0.5}), 0.5), 0.0);
    EXPECT_DOUBLE_EQ(quantile(Measure1D::atoms({0.0, 1.0}, {0.5, 0.5}), 0.50001), 1.0);
    // Oracle: bisection on the normal distribution function.
    double t = 0.841345, lo = -10, hi = 10;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        (0.5 * std::erfc(-mid / std::sqrt(2.0)) < t ? lo : hi) = mid;
    }
    double q = quantile(Measure1D::gaussian(0, 1), t);
    EXPECT_NEAR(q, 0.5 * (lo + hi), 1e-12);
    EXPECT_NEAR(q, 1.0, 1e-5);
    EXPECT_THROW(quantile(Measure1D::dirac(0), 0.0), DomainError);
    EXPECT_THROW(quantile(Measure1D::dirac(0), 1.0), DomainError);
}

TEST(Quantile, InvertsGridCdf) {
    auto g = Measure1D::grid(-1.0, 0.5, {0.2, 0.0, 1.0, 0.8});
    for (double t : {0.05, 0.1, 0.3, 0.77, 0.99}) EXPECT_NEAR(cdf(g, quantile(g, t)), t, 1e-14);
    // Left-continuity across the empty cell.
    EXPECT_DOUBLE_EQ(quantile(g, 0.1), -0.5);
}

TEST(ToGrid, MeanMovesByAtMostHalfACell) {
    // The end atoms of a quantile table land in histogram cells, so the mean
    // may move by up to half a cell (here both atoms move right by 0.005).
    auto q = Measure1D::quantile_table({0.1, 0.4, 0.9}, {-1.0, 0.0, 2.0});
    auto g = to_grid(q, 0.01);
    EXPECT_LE(std::abs(mean(g) - mean(q)), 0.005 + 1e-12);
    EXPECT_NEAR(cdf(g, 2.01), 1.0, 1e-12);
    auto ga = to_grid(Measure1D::gaussian(0.5, 0.2), 0.001);
    EXPECT_NEAR(mean(ga), 0.5, 1e-9);
    EXPECT_NEAR(variance(ga), 0.04, 1e-6);
}

TEST(MeasureProperties, DeviationMonotoneInExponent) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        auto m = random_atoms(rng, 8);
        double prev = 0.0;
        for (double a : {1.0, 1.25, 2.0, 3.0, 5.0, 9.0}) {
            double d = deviation(m, 0.3, a);
            EXPECT_GE(d, prev - 1e-12);
            prev = d;
        }
        EXPECT_GE(deviation(m, 0.3, Exponent::infinity()), prev - 1e-12);
    }
}

TEST(MeasureProperties, NoiseIncreasesSpreadSubadditively) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 60; ++trial) {
        auto mu = random_atoms(rng, 6), eta = random_atoms(rng, 6);
        auto c = convolve(eta, mu);
        for (Exponent a : {Exponent(1.0), Exponent(2.0), Exponent(3.5), Exponent::infinity()}) {
            double sc = spread(c, a).value, sm = spread(mu, a).value, se = spread(eta, a).value;
            EXPECT_GE(sc, sm - 1e-9);
            EXPECT_LE(sc, se + sm + 1e-9);
        }
    }
}

TEST(MeasureProperties, SpreadConcaveUnderMixtures) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 60; ++trial) {
        auto m1 = random_atoms(rng, 5), m2 = random_atoms(rng, 5);
        for (double lam : {0.2, 0.5, 0.9}) {
            auto mix = mixture(m1, m2, lam);
            for (Exponent a : {Exponent(1.0), Exponent(2.0), Exponent(4.0), Exponent::infinity()}) {
                EXPECT_GE(spread(mix, a).value,
                          lam * spread(m1, a).value + (1 - lam) * spread(m2, a).value - 1e-9);
            }
        }
    }
}

TEST(MeasureProperties, ScalingAndTranslation) {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 30; ++trial) {
        auto m = random_atoms(rng, 7);
        for (Exponent a : {Exponent(1.0), Exponent(1.5), Exponent(2.0), Exponent::infinity()}) {
            double s = spread(m, a).value;
            EXPECT_NEAR(spread(scale(m, 2.5), a).value, 2.5 * s, 1e-9);
            EXPECT_NEAR(spread(scale(m, -0.5), a).value, 0.5 * s, 1e-9);
            EXPECT_NEAR(spread(shift(m, 7.0), a).value, s, 1e-9);
        }
    }
    auto g = Measure1D::grid(0.0, 0.25, {0.4, 1.6, 1.2, 0.8});
    EXPECT_NEAR(spread(scale(g, -3.0), 2.0).value, 3.0 * spread(g, 2.0).value, 1e-12);
    auto q = Measure1D::quantile_table({0.2, 0.6}, {0.0, 1.0});
    EXPECT_NEAR(spread(scale(q, -2.0), 1.5).value, 2.0 * spread(q, 1.5).value, 1e-9);
}
