#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "spectra/complex_matrix.hpp"
#include "spectra/seed_stream.hpp"
#include "spectra/stats.hpp"

using namespace spectra;

TEST(KsDistance, ExactQuantilesAndMedian) {
    // samples at the midpoint quantiles of the target have distance 1/(2n)
    const int n = 100;
    std::vector<double> q;
    for (int i = 1; i <= n; ++i) q.push_back((i - 0.5) / n);
    EXPECT_NEAR(ks_distance(q, CdfTarget::uniform01()), 1.0 / (2 * n), 1e-12);

    std::vector<double> med{0.5};
    EXPECT_NEAR(ks_distance(med, CdfTarget::uniform01()), 0.5, 1e-12);

    std::vector<double> none;
    EXPECT_THROW(ks_distance(none, CdfTarget::uniform01()), Empty);
}

TEST(KsDistance, UniformSamplesPass) {
    SeedStream st(2025, 0);
    std::vector<double> u;
    for (int i = 0; i < 2000; ++i) u.push_back(st.next_uniform());
    EXPECT_LE(ks_distance(u, CdfTarget::uniform01()), 0.05);
}

TEST(QuarterCircleCdf, PinnedValues) {
    const double r = 1.7;
    EXPECT_DOUBLE_EQ(quarter_circle_cdf(0.0, r), 0.0);
    EXPECT_DOUBLE_EQ(quarter_circle_cdf(r, r), 1.0);
    EXPECT_DOUBLE_EQ(quarter_circle_cdf(-0.3, r), 0.0);
    EXPECT_DOUBLE_EQ(quarter_circle_cdf(r + 2.0, r), 1.0);
    EXPECT_NEAR(quarter_circle_cdf(r / std::sqrt(2.0), r), 0.5 + 1.0 / M_PI, 1e-12);
    EXPECT_THROW(quarter_circle_cdf(0.2, 0.0), BadR);
}

TEST(QuarterCircleCdf, QuadratureOracle) {
    // integrate the density 4/(pi R^2) sqrt(R^2 - t^2) with Simpson's rule
    // after t = R sin(theta) (which removes the edge singularity) and compare
    // along 1000 evaluation points
    const double r = 2.0;
    const int grid = 1000;
    const int simpson = 2000;
    for (int g = 0; g <= grid; ++g) {
        const double x = r * g / grid;
        const double upper = std::asin(std::min(1.0, x / r));
        double acc = 0.0;
        const double h = upper / simpson;
        for (int s = 0; s <= simpson; ++s) {
            const double th = s * h;
            const double c = std::cos(th);
            const double f = 4.0 / M_PI * c * c;
            const double w = (s == 0 || s == simpson) ? 1.0 : (s % 2 ? 4.0 : 2.0);
            acc += w * f;
        }
        acc *= h / 3.0;
        ASSERT_NEAR(quarter_circle_cdf(x, r), acc, 1e-8) << x;
    }
}

TEST(CircularRadialCdf, PinnedValues) {
    const double r = std::sqrt(0.5);
    EXPECT_DOUBLE_EQ(circular_radial_cdf(r, r), 1.0);
    EXPECT_DOUBLE_EQ(circular_radial_cdf(r / 2.0, r), 0.25);
    EXPECT_NEAR(circular_radial_cdf(0.5, r), 0.5, 1e-15);
    EXPECT_DOUBLE_EQ(circular_radial_cdf(10.0, r), 1.0);
    EXPECT_THROW(circular_radial_cdf(0.2, -1.0), BadR);
}

TEST(RayleighTransform, PinnedValues) {
    const int n = 64;
    const std::vector<double> s{0.0, std::sqrt(2.0 * std::log(2.0) / n)};
    const auto u = rayleigh_transform(s, n);
    EXPECT_DOUBLE_EQ(u[0], 1.0);
    EXPECT_NEAR(u[1], 0.5, 1e-12);
}

TEST(CdfTargets, MonotoneWithExactEndpoints) {
    const std::vector<CdfTarget> targets{
        CdfTarget::quarter_circle(1.3),
        CdfTarget::circular_radial(0.8),
        CdfTarget::rayleigh_transformed(64.0),
        CdfTarget::uniform01(),
    };
    for (const auto& t : targets) {
        double prev = -1.0;
        for (int i = 0; i <= 10000; ++i) {
            const double x = -0.5 + 3.0 * i / 10000.0;
            const double f = t(x);
            ASSERT_GE(f, 0.0);
            ASSERT_LE(f, 1.0);
            ASSERT_GE(f, prev - 1e-15);
            prev = f;
        }
    }
    EXPECT_DOUBLE_EQ(CdfTarget::quarter_circle(1.3)(0.0), 0.0);
    EXPECT_DOUBLE_EQ(CdfTarget::quarter_circle(1.3)(1.3), 1.0);
    EXPECT_DOUBLE_EQ(CdfTarget::circular_radial(0.8)(0.0), 0.0);
    EXPECT_DOUBLE_EQ(CdfTarget::circular_radial(0.8)(0.8), 1.0);
    EXPECT_DOUBLE_EQ(CdfTarget::uniform01()(0.0), 0.0);
    EXPECT_DOUBLE_EQ(CdfTarget::uniform01()(1.0), 1.0);
}

TEST(KsDistance, MonotoneReparameterizationInvariance) {
    // x -> x^2 applied to both the samples and the target leaves the
    // statistic unchanged
    SeedStream st(31, 0);
    const double r = 1.4142135623730951;
    std::vector<double> x, x2;
    for (int i = 0; i < 500; ++i) {
        const double v = r * std::pow(st.next_uniform(), 0.7); // arbitrary positive samples
        x.push_back(v);
        x2.push_back(v * v);
    }
    const double d1 = ks_distance(x, CdfTarget::quarter_circle(r));
    const double d2 =
        ks_distance(x2, [&](double y) { return quarter_circle_cdf(std::sqrt(std::max(y, 0.0)), r); });
    EXPECT_NEAR(d1, d2, 1e-12);
}

TEST(BlipMatch, ExactAtomsMatchPerfectly) {
    WeightedPointMeasure m;
    m.domain = Domain::ComplexPlane;
    const std::vector<cd> targets{{1.0, 0.0}, {-0.5, 0.8660254037844386}, {-0.5, -0.8660254037844386}};
    for (const auto& t : targets) m.push(t, 1.0 / 3.0);
    const auto res = blip_match(m, targets, 0.5, 512);
    EXPECT_EQ(res.max_distance, 0.0);
    EXPECT_EQ(res.count_deficit, 0);
    EXPECT_EQ(res.bulk_count, 0u);
}

TEST(BlipMatch, RepeatedTargetsAndBulkCounting) {
    WeightedPointMeasure m;
    m.domain = Domain::ComplexPlane;
    m.push({1.01, 0.0}, 0.5);
    m.push({0.98, 0.01}, 0.5);
    for (int i = 0; i < 10; ++i) m.push({1e-3 * i, 0.0}, 0.5);
    const std::vector<cd> targets{{1.0, 0.0}, {1.0, 0.0}};
    const auto res = blip_match(m, targets, 0.5, 512, 0.1);
    EXPECT_LE(res.max_distance, 0.03);
    EXPECT_EQ(res.count_deficit, 0);
    EXPECT_EQ(res.bulk_count, 10u); // everything within 512^{-0.4} = 0.0825
    EXPECT_THROW(blip_match(m, targets, 1.5, 512), OmegaTooLarge);
}

TEST(JointDensity, ZerosAndSymmetry) {
    const std::vector<double> rep{1.0, 1.0, 2.0};
    EXPECT_DOUBLE_EQ(joint_density_unnormalized(rep), 0.0);
    const std::vector<double> zero{0.0, 1.0, 2.0};
    EXPECT_DOUBLE_EQ(joint_density_unnormalized(zero), 0.0);

    SeedStream st(17, 0);
    for (int t = 0; t < 50; ++t) {
        double a = st.next_uniform() * 3, b = st.next_uniform() * 3, c = st.next_uniform() * 3;
        const std::vector<double> p1{a, b, c}, p2{c, a, b}, p3{b, a, c};
        EXPECT_DOUBLE_EQ(joint_density_unnormalized(p1), joint_density_unnormalized(p2));
        EXPECT_DOUBLE_EQ(joint_density_unnormalized(p1), joint_density_unnormalized(p3));
    }
}
