#include <gtest/gtest.h>

#include "qgeom/linalg.hpp"
#include "test_util.hpp"

using namespace qgeom;
using qgeom::test::random_hermitian;
using qgeom::test::random_matrix;

namespace {

double orthonormality_residual(const ComplexMatrix& v)
{
    return max_abs(adjoint(v) * v - ComplexMatrix::identity(v.cols()));
}

double reconstruction_residual(const ComplexMatrix& h, const HermitianEigenSystem& es)
{
    ComplexMatrix vd = es.eigenvectors;
    for (std::size_t r = 0; r < vd.rows(); ++r)
        for (std::size_t c = 0; c < vd.cols(); ++c) vd(r, c) *= es.eigenvalues[c];
    return frobenius_norm(h * es.eigenvectors - vd);
}

} // namespace

TEST(Eigensolver, PauliX)
{
    ComplexMatrix sx{{0.0, 1.0}, {1.0, 0.0}};
    auto es = hermitian_eigendecompose(sx);
    ASSERT_EQ(es.eigenvalues.size(), 2u);
    EXPECT_NEAR(es.eigenvalues[0], -1.0, 1e-15);
    EXPECT_NEAR(es.eigenvalues[1], 1.0, 1e-15);
    EXPECT_LE(orthonormality_residual(es.eigenvectors), 1e-14);
}

TEST(Eigensolver, Identity)
{
    auto es = hermitian_eigendecompose(ComplexMatrix::identity(4));
    for (double e : es.eigenvalues) EXPECT_DOUBLE_EQ(e, 1.0);
    EXPECT_LE(orthonormality_residual(es.eigenvectors), 1e-14);
}

TEST(Eigensolver, Random32Reconstruction)
{
    ComplexMatrix h = random_hermitian(32, 7);
    auto es = hermitian_eigendecompose(h);
    EXPECT_LE(reconstruction_residual(h, es), 1e-10 * frobenius_norm(h));
    EXPECT_LE(orthonormality_residual(es.eigenvectors), 1e-10);
    for (std::size_t k = 0; k + 1 < es.eigenvalues.size(); ++k) EXPECT_LE(es.eigenvalues[k], es.eigenvalues[k + 1]);
}

TEST(Eigensolver, ResidualsUpTo256)
{
    for (std::size_t n : {1u, 2u, 3u, 5u, 17u, 64u, 128u, 256u}) {
        ComplexMatrix h = random_hermitian(n, 100 + n);
        auto es = hermitian_eigendecompose(h);
        EXPECT_LE(reconstruction_residual(h, es), 1e-10 * frobenius_norm(h)) << "n=" << n;
        EXPECT_LE(orthonormality_residual(es.eigenvectors), 1e-10) << "n=" << n;
    }
}

TEST(Eigensolver, RealTridiagonalAndSparse)
{
    // Oscillator-like real pentadiagonal matrix, the shape the Fock families produce.
    const std::size_t n = 60;
    ComplexMatrix h(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        h(k, k) = 0.5 + k;
        if (k + 1 < n) h(k, k + 1) = h(k + 1, k) = 0.3 * std::sqrt(k + 1.0);
        if (k + 2 < n) h(k, k + 2) = h(k + 2, k) = Complex(0.0, 0.1) * std::sqrt((k + 1.0) * (k + 2.0));
    }
    for (std::size_t k = 0; k + 2 < n; ++k) h(k + 2, k) = std::conj(h(k, k + 2));
    auto es = hermitian_eigendecompose(h);
    EXPECT_LE(reconstruction_residual(h, es), 1e-10 * frobenius_norm(h));
}

TEST(Eigensolver, DiagonalSortedExact)
{
    ComplexMatrix d(5, 5);
    const double vals[] = {3.25, -1.5, 7.0, 0.0, 2.0};
    for (int k = 0; k < 5; ++k) d(k, k) = vals[k];
    auto es = hermitian_eigendecompose(d);
    const double sorted[] = {-1.5, 0.0, 2.0, 3.25, 7.0};
    for (int k = 0; k < 5; ++k) EXPECT_NEAR(es.eigenvalues[k], sorted[k], 4 * std::numeric_limits<double>::epsilon() * 7.0);
}

TEST(Eigensolver, TiesKeepInputOrder)
{
    ComplexMatrix d(3, 3);
    d(0, 0) = 1.0;
    d(1, 1) = 1.0;
    d(2, 2) = 0.0;
    auto es = hermitian_eigendecompose(d);
    EXPECT_DOUBLE_EQ(std::abs(es.eigenvectors(2, 0)), 1.0);
    EXPECT_DOUBLE_EQ(std::abs(es.eigenvectors(0, 1)), 1.0);
    EXPECT_DOUBLE_EQ(std::abs(es.eigenvectors(1, 2)), 1.0);
}

TEST(Eigensolver, Deterministic)
{
    ComplexMatrix h = random_hermitian(40, 3);
    auto a = hermitian_eigendecompose(h);
    auto b = hermitian_eigendecompose(h);
    EXPECT_EQ(a.eigenvalues, b.eigenvalues);
    EXPECT_TRUE(a.eigenvectors == b.eigenvectors);
}

TEST(Eigensolver, Errors)
{
    ComplexMatrix nh{{1.0, 2.0}, {0.0, 1.0}};
    try {
        hermitian_eigendecompose(nh);
        FAIL() << "expected NotHermitian";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotHermitian);
    }
    try {
        hermitian_eigendecompose(ComplexMatrix(2, 3));
        FAIL() << "expected ShapeMismatch";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ShapeMismatch);
    }
    EXPECT_TRUE(hermitian_eigendecompose(ComplexMatrix()).eigenvalues.empty());
}

TEST(DenseOps, IdentityAndAdjointOfProduct)
{
    ComplexMatrix a = random_matrix(3, 3, 1);
    ComplexMatrix b = random_matrix(3, 3, 2);
    EXPECT_TRUE(a * ComplexMatrix::identity(3) == a);
    EXPECT_LE(max_abs(adjoint(a * b) - adjoint(b) * adjoint(a)), 1e-14);
    EXPECT_EQ(max_abs(commutator(a, a)), 0.0);
}

TEST(DenseOps, ShapeMismatch)
{
    ComplexMatrix a(2, 3), b(2, 3);
    EXPECT_THROW(a * b, Error);
    EXPECT_THROW(a + ComplexMatrix(3, 2), Error);
    EXPECT_NO_THROW(a * adjoint(b));
}

TEST(DenseOps, ScalarAndParts)
{
    ComplexMatrix a = random_matrix(2, 2, 5);
    ComplexMatrix s = Complex(0.0, 2.0) * a;
    EXPECT_EQ(s(1, 0), Complex(0.0, 2.0) * a(1, 0));
    ComplexMatrix back = to_complex(real_part(a)) + kI * to_complex(imag_part(a));
    EXPECT_TRUE(back == a);
}

TEST(Lu, SolveAndDeterminant)
{
    RealMatrix a{{4.0, 1.0, 0.5}, {1.0, 3.0, 0.0}, {0.5, 0.0, 2.0}};
    RealMatrix b{{1.0}, {2.0}, {3.0}};
    RealMatrix x = lu_solve(a, b);
    EXPECT_LE(max_abs(a * x - b), 1e-14);
    // 4(6) - 1(2) + 0.5(-1.5) = 21.25
    EXPECT_NEAR(determinant(a), 21.25, 1e-13);
    ComplexMatrix c = random_matrix(6, 6, 9);
    ComplexMatrix rhs = random_matrix(6, 2, 10);
    EXPECT_LE(max_abs(c * lu_solve(c, rhs) - rhs), 1e-12);
}
