#include <gtest/gtest.h>

#include <random>

#include "qgeom/invariants.hpp"
#include "test_util.hpp"

using namespace qgeom;

namespace {

template <typename Fn>
ErrorKind kind_of(Fn&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::InvalidArgument;
}

Frame frame_at(const char* family, std::vector<double> lam, std::size_t levels, std::vector<CoeffExpr> phases = {})
{
    auto spec = builtin_family(family);
    auto a = std::make_shared<Assembler>(spec, default_trunc_dim(levels));
    FieldOptions opt{levels};
    opt.phases = std::move(phases);
    StateField f(a, lam, opt);
    return f.center_frame();
}

double nt_closed(double n)
{
    return 2 * (n + 1) * (1 / ((n + 0.5) * (n * n + 3 * n + 3)) + 1 / ((n + 1.5) * (n * n + n + 1)));
}

} // namespace

TEST(PairTensor, SymmetriesOfTorsionTensor)
{
    auto f = frame_at("example2", {1.0, 0.3, 1.0}, 8);
    const auto t = two_state(f, 0, 1).T;
    auto n = pair_tensor(t, t, InvariantKind::N, TensorLabel::T, TensorLabel::T);
    EXPECT_EQ(n.name(), "N_T");
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            for (std::size_t k = 0; k < 3; ++k)
                for (std::size_t l = 0; l < 3; ++l) {
                    EXPECT_NEAR(n(i, j, k, l), -n(j, i, k, l), 1e-14);
                    EXPECT_NEAR(n(i, j, k, l), -n(i, j, l, k), 1e-14);
                    EXPECT_NEAR(n(i, j, k, l), n(k, l, i, j), 1e-14);
                }
}

TEST(PairTensor, VanishingAreaTensors)
{
    auto f = frame_at("example1", {0.0, 1.0}, 8);
    const auto t = two_state(f, 0, 1).T;
    auto a = pair_tensor(t, t, InvariantKind::A);
    for (double v : a.values) EXPECT_NEAR(v, 0.0, 1e-14);
    ComplexMatrix s{{1.0, 2.0}, {2.0, -3.0}};
    for (double v : pair_tensor(s, s, InvariantKind::A).values) EXPECT_EQ(v, 0.0);
    EXPECT_EQ(kind_of([&] { pair_tensor(s, ComplexMatrix(3, 3), InvariantKind::N); }), ErrorKind::ShapeMismatch);
}

TEST(PairTensor, MixedReducesToDiagonal)
{
    auto m = qgeom::test::random_matrix(3, 3, 5);
    auto a = pair_tensor(m, m, InvariantKind::N, TensorLabel::G, TensorLabel::G);
    EXPECT_EQ(a.name(), "N_G");
    auto b = pair_tensor(m, m, InvariantKind::N, TensorLabel::M, TensorLabel::T);
    EXPECT_EQ(a.values, b.values);
    EXPECT_EQ(b.name(), "N_MT");
}

TEST(InvertMetric, SmallAndLarge)
{
    for (std::size_t d : {1u, 2u, 3u, 5u}) {
        auto r = qgeom::test::random_matrix(d, d, 40 + d);
        RealMatrix g = real_part(adjoint(r) * r) + RealMatrix::identity(d);
        auto inv = invert_metric(g);
        EXPECT_LT(max_abs(g * inv - RealMatrix::identity(d)), 1e-12) << d;
    }
    RealMatrix s{{1.0, 2.0}, {2.0, 4.0}};
    EXPECT_EQ(kind_of([&] { invert_metric(s); }), ErrorKind::SingularMetric);
}

TEST(Scalar, Example1Values)
{
    auto f = frame_at("example1", {0.7, 1.6}, 12);
    auto r01 = invariant_report(f, 0, 1);
    EXPECT_NEAR(r01.scalar(TensorLabel::T, TensorLabel::T).value, 8.0 / 3, 1e-8);
    auto r02 = invariant_report(f, 0, 2);
    EXPECT_NEAR(r02.scalar(TensorLabel::M, TensorLabel::M).value, 0.8, 1e-8);
    EXPECT_NEAR(r02.scalar(TensorLabel::T, TensorLabel::T).value, 0.0, 1e-12);
    EXPECT_EQ(r01.tensors.size(), 6u);
    EXPECT_EQ(r01.scalars.size(), 9u);
    ComplexMatrix zero(2, 2);
    EXPECT_EQ(scalar_invariant(pair_tensor(zero, zero, InvariantKind::N), r01.g_n, r01.g_m).value, 0.0);
    EXPECT_EQ(kind_of([&] { scalar_invariant(pair_tensor(zero, zero, InvariantKind::A), r01.g_n, r01.g_m); }),
              ErrorKind::InvalidArgument);
}

TEST(Scalar, Example1Trends)
{
    auto f = frame_at("example1", {0.0, 1.0}, 16);
    double prev = 1e9;
    for (std::size_t n = 0; n <= 6; ++n) {
        const double v = invariant_report(f, n, n + 1).scalar(TensorLabel::T, TensorLabel::T).value;
        EXPECT_NEAR(v, nt_closed(n), 1e-8);
        EXPECT_LT(v, prev);
        prev = v;
    }
    prev = 1e9;
    for (std::size_t n = 0; n <= 8; ++n) {
        const double v = invariant_report(f, n, n + 2).scalar(TensorLabel::M, TensorLabel::M).value;
        EXPECT_LT(v, prev);
        EXPECT_GT(v, 0.5);
        prev = v;
    }
}

TEST(Scalar, ParameterIndependentExample1)
{
    std::vector<double> ref;
    for (double w : {-1.0, 0.0, 1.5})
        for (double z : {0.5, 1.0, 2.0}) {
            auto f = frame_at("example1", {w, z}, 10);
            std::vector<double> vals;
            for (auto [n, m] : {std::pair{0, 1}, {1, 3}, {2, 0}})
                for (const auto& s : invariant_report(f, n, m).scalars) vals.push_back(s.value);
            if (ref.empty()) ref = vals;
            for (std::size_t k = 0; k < vals.size(); ++k) EXPECT_NEAR(vals[k], ref[k], 1e-8);
        }
}

TEST(Scalar, SymmetricInLevels)
{
    for (const char* fam : {"example1", "example2"}) {
        std::vector<double> lam = std::string(fam) == "example1" ? std::vector<double>{0.3, 1.2}
                                                                 : std::vector<double>{1.0, 0.3, 1.0};
        auto f = frame_at(fam, lam, 9);
        for (auto [n, m] : {std::pair{0, 1}, {1, 3}, {2, 0}, {0, 2}}) {
            auto r = invariant_report(f, n, m);
            EXPECT_LT(r.symmetry_residual, 1e-9) << fam << n << m;
        }
    }
}

TEST(Scalar, GaugeInvariant)
{
    std::vector<double> lam{1.0, 0.3, 1.0};
    auto names = builtin_family("example2").parameter_names;
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-2, 2);
    std::vector<CoeffExpr> ph;
    for (int n = 0; n < 8; ++n) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "%.4f*W*Y + %.4f*Z", u(rng), u(rng));
        ph.push_back(parse_coeff(buf, names));
    }
    auto f0 = frame_at("example2", lam, 8);
    auto f1 = frame_at("example2", lam, 8, ph);
    for (auto [n, m] : {std::pair{0, 1}, {2, 1}, {3, 1}}) {
        auto a = invariant_report(f0, n, m), b = invariant_report(f1, n, m);
        for (std::size_t k = 0; k < a.tensors.size(); ++k)
            for (std::size_t q = 0; q < a.tensors[k].values.size(); ++q)
                EXPECT_NEAR(a.tensors[k].values[q], b.tensors[k].values[q], 1e-8);
        for (std::size_t k = 0; k < a.scalars.size(); ++k) EXPECT_NEAR(a.scalars[k].value, b.scalars[k].value, 1e-8);
    }
}
