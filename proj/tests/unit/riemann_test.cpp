#include <gtest/gtest.h>

#include <cmath>

#include "qgeom/riemann.hpp"

using namespace qgeom;

namespace {

RealMatrix sphere(std::span<const double> x, double a)
{
    const double s = std::sin(x[0]);
    return RealMatrix{{a * a, 0.0}, {0.0, a * a * s * s}};
}

} // namespace

TEST(Stencil, Layout)
{
    EXPECT_EQ(stencil_size(2), 13u);
    EXPECT_EQ(stencil_size(3), 25u);
    std::vector<double> c{1.0, 2.0}, h{0.1, 0.2};
    auto nodes = stencil_nodes(c, h);
    ASSERT_EQ(nodes.size(), 13u);
    auto f = sample_metric([](std::span<const double> x) { return RealMatrix{{x[0], 0.0}, {0.0, x[1]}}; }, c, h);
    EXPECT_DOUBLE_EQ(f.at_axis(0, 2)(0, 0), 1.2);
    EXPECT_DOUBLE_EQ(f.at_axis(1, -1)(1, 1), 1.8);
    EXPECT_DOUBLE_EQ(f.at_corner(0, 1, -1, 1)(0, 0), 0.9);
    EXPECT_DOUBLE_EQ(f.at_corner(1, 0, 1, -1)(1, 1), 2.2);
}

TEST(Stencil, Example1SamplesMatchClosedForm)
{
    auto spec = builtin_family("example1");
    std::vector<double> c{1.0, 1.0};
    for (std::size_t n : {0u, 2u}) {
        auto f = sample_metric(spec, c, n, 1e-3, 0, 0, 4);
        ASSERT_EQ(f.values.size(), 13u);
        for (std::size_t k = 0; k < f.nodes.size(); ++k) {
            const double z = f.nodes[k][1];
            EXPECT_NEAR(f.values[k](0, 0), (n + 0.5) / std::sqrt(z), 1e-9);
            EXPECT_NEAR(f.values[k](1, 1), (n * n + n + 1) / (32 * z * z), 1e-9);
            EXPECT_NEAR(f.values[k](0, 1), 0.0, 1e-9);
        }
    }
}

TEST(Stencil, ConstantFamily)
{
    auto spec = parse_family("0.5*q^2 + 0.5*p^2 + W*id + Z*id", {"W", "Z"});
    std::vector<double> c{0.3, 0.4};
    auto f = sample_metric(spec, c, 0);
    for (const auto& v : f.values) EXPECT_EQ(v, f.values[0]);
}

TEST(Christoffel, EuclideanAndConformal)
{
    std::vector<double> c{0.2, 0.7}, h{1e-3, 1e-3};
    auto flat = christoffel(sample_metric([](std::span<const double>) { return RealMatrix::identity(2); }, c, h));
    for (double v : flat.values) EXPECT_EQ(v, 0.0);

    auto f = [](double z) { return 1.0 + z * z; };
    auto conf = christoffel(sample_metric(
        [&](std::span<const double> x) { return f(x[1]) * RealMatrix::identity(2); }, c, h));
    const double k = 0.5 * (2 * c[1]) / f(c[1]);
    EXPECT_NEAR(conf(1, 1, 1), k, 1e-7);
    EXPECT_NEAR(conf(0, 0, 1), k, 1e-7);
    EXPECT_NEAR(conf(1, 0, 0), -k, 1e-7);
    EXPECT_NEAR(conf(0, 0, 0), 0.0, 1e-7);
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) EXPECT_EQ(conf(a, i, j), conf(a, j, i));
}

TEST(ScalarCurvature, SphereAndStepHalving)
{
    const double a = 1.7;
    std::vector<double> c{0.9, 0.3};
    auto metric = [a](std::span<const double> x) { return sphere(x, a); };
    auto err = [&](double h) {
        std::vector<double> hs{h, h};
        return std::abs(scalar_curvature(sample_metric(metric, c, hs)).scalar - 2 / (a * a));
    };
    EXPECT_LT(err(1e-3), 1e-6);
    EXPECT_NEAR(err(2e-2) / err(1e-2), 4.0, 0.2);
    std::vector<double> hs{1e-2, 1e-2};
    auto cur = scalar_curvature(sample_metric(metric, c, hs));
    EXPECT_GT(cur.error_estimate, 0.0);
    EXPECT_LT(cur.error_estimate, 1e-3);
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t s = 0; s < 2; ++s)
            for (std::size_t m = 0; m < 2; ++m)
                for (std::size_t n = 0; n < 2; ++n) EXPECT_EQ(cur.riemann(r, s, m, n), -cur.riemann(r, s, n, m));
}

TEST(ScalarCurvature, Example1ConstantNegative)
{
    auto spec = builtin_family("example1");
    for (std::size_t n : {0u, 1u, 3u}) {
        const double expect = -4.0 / (n * n + n + 1);
        for (std::vector<double> c : {std::vector<double>{1.0, 1.0}, {0.0, 0.6}, {-1.5, 2.0}}) {
            auto cur = scalar_curvature(spec, c, n, 1e-3, 0, 4);
            EXPECT_NEAR(cur.scalar, expect, 1e-3) << n << " at " << c[0] << "," << c[1];
            EXPECT_LT(cur.error_estimate, 1e-3);
        }
    }
}

TEST(ScalarCurvature, FlatDisplacementFamily)
{
    auto spec = parse_family("0.5*q^2 + 0.5*p^2 + W*q + Y*p", {"W", "Y"});
    std::vector<double> c{0.2, -0.1};
    auto cur = scalar_curvature(spec, c, 0);
    EXPECT_NEAR(cur.scalar, 0.0, 1e-8);
}

TEST(ScalarCurvature, SingularMetric)
{
    std::vector<double> c{0.0, 0.0}, h{1e-3, 1e-3};
    auto f = sample_metric([](std::span<const double>) { return RealMatrix(2, 2); }, c, h);
    try {
        scalar_curvature(f);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::SingularMetric);
    }
}
