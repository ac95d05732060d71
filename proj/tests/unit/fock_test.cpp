#include <gtest/gtest.h>

#include "qgeom/fock.hpp"

using namespace qgeom;

TEST(Ladder, Dim3Entries)
{
    auto [a, ad] = ladder(3);
    EXPECT_EQ(a.matrix(0, 1), Complex(1.0));
    EXPECT_EQ(a.matrix(1, 2), Complex(std::sqrt(2.0)));
    int nonzero = 0;
    for (const auto& x : a.matrix.data()) nonzero += x != Complex{};
    EXPECT_EQ(nonzero, 2);
    EXPECT_TRUE(ad.matrix == adjoint(a.matrix));
}

TEST(Ladder, AnnihilatesVacuum)
{
    auto [a, ad] = ladder(6);
    ComplexVector vac(6);
    vac[0] = 1.0;
    for (const auto& x : a.matrix * vac) EXPECT_EQ(x, Complex{});
}

TEST(Ladder, TooSmall)
{
    try {
        ladder(1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DimensionTooSmall);
    }
    EXPECT_THROW(quadratures(0, 1.0), Error);
}

TEST(Quadratures, GroundVarianceAndHermiticity)
{
    for (double hbar : {1.0, 0.7}) {
        auto [q, p] = quadratures(10, hbar);
        EXPECT_NEAR((q.matrix * q.matrix)(0, 0).real(), hbar / 2, 1e-15);
        EXPECT_LE(hermiticity_residual(q.matrix), 1e-14);
        EXPECT_LE(hermiticity_residual(p.matrix), 1e-14);
    }
}

TEST(Quadratures, CanonicalCommutatorInteriorBlock)
{
    const double hbar = 1.3;
    for (std::size_t d : {8u, 16u, 32u, 64u}) {
        auto [q, p] = quadratures(d, hbar);
        ComplexMatrix c = commutator(q.matrix, p.matrix);
        double err = 0.0;
        for (std::size_t i = 0; i + 2 < d; ++i)
            for (std::size_t j = 0; j + 2 < d; ++j)
                err = std::max(err, std::abs(c(i, j) - (i == j ? Complex(0.0, hbar) : Complex{})));
        EXPECT_LE(err, 1e-12) << "d=" << d;
        // the truncation corrupts the last diagonal entry
        EXPECT_GT(std::abs(c(d - 1, d - 1) - Complex(0.0, hbar)), 0.5);
    }
}

TEST(Quadratures, LargestElement)
{
    const double hbar = 0.8;
    const std::size_t d = 20;
    auto [q, p] = quadratures(d, hbar);
    EXPECT_NEAR(max_abs(q.matrix), std::sqrt(hbar * (d - 1) / 2.0), 1e-14);
    for (std::size_t k = 1; k < d; ++k) EXPECT_NEAR(q.matrix(k - 1, k).real(), std::sqrt(hbar * k / 2.0), 1e-14);
}

TEST(Monomial, PowerEqualsProduct)
{
    auto [q, p] = quadratures(12, 1.0);
    auto q2 = build_monomial({OpFactor::q(2)}, 12, 1.0);
    EXPECT_TRUE(q2.matrix == q.matrix * q.matrix);
    EXPECT_EQ(q2.label, "q^2");
    auto qp = build_monomial({OpFactor::q(), OpFactor::p()}, 12, 1.0);
    EXPECT_TRUE(qp.matrix == q.matrix * p.matrix);
    EXPECT_GT(hermiticity_residual(qp.matrix), 0.1);
}

TEST(Monomial, SymIsHermitian)
{
    auto s = build_monomial({OpFactor::sym(OpFactor::q(), OpFactor::p())}, 30, 1.0);
    EXPECT_LE(hermiticity_residual(s.matrix), 1e-12 * max_abs(s.matrix));
    EXPECT_EQ(s.label, "sym(q*p)");
    EXPECT_EQ(degree(Monomial{OpFactor::sym(OpFactor::q(), OpFactor::p(2))}), 3);
}

TEST(Monomial, GeneralizedOscillatorHermitian)
{
    const std::size_t d = 48;
    const double w = 1.0, y = 0.3, z = 1.0;
    ComplexMatrix h = 0.5 * build_monomial({OpFactor::q(2)}, d, 1.0).matrix +
                      y * build_monomial({OpFactor::sym(OpFactor::q(), OpFactor::p())}, d, 1.0).matrix +
                      0.5 * z * build_monomial({OpFactor::p(2)}, d, 1.0).matrix +
                      w * build_monomial({OpFactor::q()}, d, 1.0).matrix;
    EXPECT_LE(hermiticity_residual(h), 1e-12 * max_abs(h));
}

TEST(Monomial, UnsupportedDescriptor)
{
    OpFactor bad{OpKind::Sym, 1, {OpFactor::q()}};
    try {
        build_monomial({bad}, 5, 1.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::UnsupportedDescriptor);
    }
    EXPECT_THROW(build_monomial({OpFactor::q(-1)}, 5, 1.0), Error);
    EXPECT_TRUE(build_monomial({OpFactor::id()}, 4, 1.0).matrix == ComplexMatrix::identity(4));
}
