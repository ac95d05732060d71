#include <gtest/gtest.h>

#include <numbers>

#include "qgeom/spectrum.hpp"

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

EigenBundle bundle_of(const ComplexMatrix& h)
{
    auto es = hermitian_eigendecompose(h);
    EigenBundle b;
    b.energies = es.eigenvalues;
    b.states = es.eigenvectors;
    b.trunc_dim = h.rows();
    return b;
}

} // namespace

TEST(SolveAt, Example1Energies)
{
    auto spec = builtin_family("example1");
    const double lam[] = {1.0, 1.0};
    auto b = solve_at(spec, lam, 64, 8, GaugePolicy::largest_real_positive());
    for (int n = 0; n <= 5; ++n) EXPECT_NEAR(b.energies[n], n, 1e-9);
    EXPECT_EQ(b.gauge, "largest-real-positive");
}

TEST(SolveAt, Example1StatesRealUnderLargestRealPositive)
{
    auto spec = builtin_family("example1");
    const double lam[] = {0.7, 1.6};
    auto b = solve_at(spec, lam, 60, 10, GaugePolicy::largest_real_positive());
    for (std::size_t c = 0; c < b.levels(); ++c) {
        double imag2 = 0.0, best = 0.0;
        std::size_t at = 0;
        for (std::size_t r = 0; r < b.trunc_dim; ++r) {
            imag2 += std::norm(b.states(r, c).imag());
            if (std::abs(b.states(r, c)) > best * (1 + 1e-10)) {
                best = std::abs(b.states(r, c));
                at = r;
            }
        }
        EXPECT_LE(std::sqrt(imag2), 1e-10);
        EXPECT_EQ(b.states(at, c).imag(), 0.0);
        EXPECT_GT(b.states(at, c).real(), 0.0);
    }
}

TEST(SolveAt, OrthonormalAndPolicyIndependentEnergies)
{
    auto spec = builtin_family("example2");
    const double lam[] = {1.0, 0.3, 1.0};
    Assembler a(spec, 60);
    auto b1 = solve_at(a, lam, 10, GaugePolicy::largest_real_positive());
    auto ref = std::make_shared<EigenBundle>(b1);
    auto b2 = solve_at(a, lam, 10, GaugePolicy::reference_overlap(ref));
    EXPECT_EQ(b1.energies, b2.energies);
    EXPECT_LE(max_abs(adjoint(b2.states) * b2.states - ComplexMatrix::identity(10)), 1e-10);
    for (std::size_t c = 0; c < 10; ++c) EXPECT_NEAR(inner(ref->state(c), b2.state(c)).real(), 1.0, 1e-12);
}

TEST(SolveAt, Errors)
{
    auto flat = parse_family("Z*id", {"Z"});
    const double z[] = {1.0};
    EXPECT_EQ(kind_of([&] { solve_at(flat, z, 16, 4, GaugePolicy::largest_real_positive()); }), ErrorKind::DegenerateSpectrum);
    auto spec = builtin_family("example1");
    const double lam[] = {0.0, 1.0};
    EXPECT_EQ(kind_of([&] { solve_at(spec, lam, 16, 13, GaugePolicy::largest_real_positive()); }), ErrorKind::DimensionTooSmall);
    const double bad[] = {0.0, -1.0};
    EXPECT_EQ(kind_of([&] { solve_at(spec, bad, 16, 4, GaugePolicy::largest_real_positive()); }), ErrorKind::DomainViolation);
}

TEST(MatchStates, IdentityAndTransposition)
{
    auto spec = builtin_family("example1");
    const double lam[] = {0.3, 1.2};
    auto b = solve_at(spec, lam, 40, 6, GaugePolicy::largest_real_positive());
    auto id = match_states(b, b);
    for (std::size_t k = 0; k < id.size(); ++k) EXPECT_EQ(id[k], k);
    EigenBundle s = b;
    for (std::size_t r = 0; r < s.trunc_dim; ++r) std::swap(s.states(r, 1), s.states(r, 4));
    auto perm = match_states(b, s);
    EXPECT_EQ(perm[1], 4u);
    EXPECT_EQ(perm[4], 1u);
    EXPECT_EQ(perm[0], 0u);
}

TEST(MatchStates, AvoidedCrossingSmallStep)
{
    auto h = [](double t) {
        return ComplexMatrix{{t, 0.1}, {0.1, -t}};
    };
    for (double t : {-0.05, 0.0, 0.03}) {
        auto a = bundle_of(h(t));
        auto b = bundle_of(h(t + 1e-3));
        auto perm = match_states(a, b);
        EXPECT_EQ(perm[0], 0u);
        EXPECT_EQ(perm[1], 1u);
    }
}

TEST(MatchStates, Ambiguous)
{
    // every overlap of the number basis with a 4x4 Hadamard basis is exactly 1/2
    auto a = bundle_of(ComplexMatrix{{1.0, 0, 0, 0}, {0, 2.0, 0, 0}, {0, 0, 3.0, 0}, {0, 0, 0, 4.0}});
    EigenBundle b = a;
    b.states = 0.5 * ComplexMatrix{{1.0, 1.0, 1.0, 1.0}, {1.0, -1.0, 1.0, -1.0}, {1.0, 1.0, -1.0, -1.0}, {1.0, -1.0, -1.0, 1.0}};
    EXPECT_EQ(kind_of([&] { match_states(a, b); }), ErrorKind::AmbiguousMatch);
}

TEST(ConvergeTruncation, Example1)
{
    auto spec = builtin_family("example1");
    const double lam[] = {0.5, 1.5};
    auto r = converge_truncation(spec, lam, 5, 1e-8);
    EXPECT_LE(r.delta, 1e-8);
    EXPECT_GE(r.trunc_dim, default_trunc_dim(5));
}

TEST(ConvergeTruncation, DiagonalFamilyConvergesAtStart)
{
    // q^2 + p^2 is diagonal in the number basis even after truncation
    auto spec = parse_family("Z*q^2 + Z*p^2", {"Z"});
    const double z[] = {1.3};
    auto r = converge_truncation(spec, z, 4, 1e-12, 24);
    EXPECT_EQ(r.trunc_dim, 24u);
    EXPECT_EQ(r.delta, 0.0);
}

TEST(ConvergeTruncation, Unreachable)
{
    auto spec = builtin_family("example2");
    const double lam[] = {1.0, 0.3, 1.0};
    EXPECT_EQ(kind_of([&] { converge_truncation(spec, lam, 4, 0.0); }), ErrorKind::NoConvergence);
    EXPECT_EQ(kind_of([&] { converge_truncation(spec, lam, 4, 1e-300, 32, 128); }), ErrorKind::NoConvergence);
}

TEST(ApplyGauge, ZeroAndPi)
{
    auto spec = builtin_family("example1");
    const double lam[] = {0.2, 0.9};
    auto b = solve_at(spec, lam, 30, 4, GaugePolicy::largest_real_positive());
    std::vector<CoeffExpr> zero(4, expr::number(0.0));
    auto z = apply_gauge(b, zero, 1.0);
    EXPECT_TRUE(z.states == b.states);
    std::vector<CoeffExpr> pi(4, expr::number(std::numbers::pi));
    auto p = apply_gauge(b, pi, 1.0);
    EXPECT_LE(max_abs(p.states + b.states), 1e-15);
    EXPECT_EQ(p.energies, b.energies);
    EXPECT_NEAR(std::abs(inner(p.state(1), b.state(1))), 1.0, 1e-14);
    EXPECT_EQ(kind_of([&] { apply_gauge(b, std::vector<CoeffExpr>(3, expr::number(0.0)), 1.0); }), ErrorKind::ShapeMismatch);
    EXPECT_EQ(kind_of([&] { parse_coeff("n*X", spec.parameter_names); }), ErrorKind::UnknownSymbol);
}

TEST(StateField, AlignedStencilAndConnection)
{
    auto spec = builtin_family("example2");
    auto asmb = std::make_shared<Assembler>(spec, 60);
    std::vector<double> c{1.0, 0.3, 1.0};
    StateField f(asmb, c, FieldOptions{8});
    for (std::size_t n = 0; n < 8; ++n) {
        for (double v : f.connection(c, n)) EXPECT_NEAR(v, 0.0, 1e-12);
    }
    // closed form at a displaced point against central differences in the same gauge
    std::vector<double> x{1.02, 0.28, 1.03};
    auto a = f.connection(x, 1);
    const double h = 1e-5;
    for (std::size_t i = 0; i < 3; ++i) {
        auto xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        auto s = f.frame_at(x)->bundle.state(1);
        auto up = f.frame_at(xp)->bundle.state(1);
        auto dn = f.frame_at(xm)->bundle.state(1);
        Complex acc{};
        for (std::size_t r = 0; r < s.size(); ++r) acc += std::conj(s[r]) * (up[r] - dn[r]);
        EXPECT_NEAR(a[i], (kI * acc).real() / (2 * h), 1e-8);
    }
    EXPECT_TRUE(f.frame_at(x) == f.frame_at(x));
}

TEST(StateField, InjectedPhasesShiftConnection)
{
    auto spec = builtin_family("example1");
    auto asmb = std::make_shared<Assembler>(spec, 50);
    std::vector<double> c{0.4, 1.1};
    FieldOptions opt{6};
    for (int n = 0; n < 6; ++n) opt.phases.push_back(parse_coeff(std::to_string(n) + "*W + 0.3*Z^2", spec.parameter_names));
    StateField f(asmb, c, opt);
    auto a = f.connection(c, 2);
    EXPECT_NEAR(a[0], -2.0, 1e-10);
    EXPECT_NEAR(a[1], -0.6 * 1.1, 1e-10);
    EXPECT_EQ(f.gauge_tag(), "reference-overlap+phases");
}
