// linalg.hpp: dense complex/real matrices, small LU helpers and a
// self-contained Hermitian eigensolver (Householder tridiagonalization + implicit QL)

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "qgeom/error.hpp"

namespace qgeom {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;
using RealVector = std::vector<double>;

inline constexpr Complex kI{0.0, 1.0};

template <typename T>
class Matrix {
public:
    using value_type = T;

    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, T fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill)
    {
    }
    Matrix(std::initializer_list<std::initializer_list<T>> init)
    {
        rows_ = init.size();
        cols_ = rows_ == 0 ? 0 : init.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) {
                throw Error(ErrorKind::ShapeMismatch, "ragged initializer list");
            }
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t k = 0; k < n; ++k) m(k, k) = T{1};
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool is_square() const noexcept { return rows_ == cols_; }

    T& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

    std::span<T> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
    std::span<const T> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }

    std::vector<T> column(std::size_t c) const
    {
        std::vector<T> out(rows_);
        for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
        return out;
    }
    void set_column(std::size_t c, std::span<const T> values)
    {
        for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = values[r];
    }

    std::span<T> data() noexcept { return data_; }
    std::span<const T> data() const noexcept { return data_; }

    bool operator==(const Matrix& other) const = default;

private:
    std::size_t rows_{0};
    std::size_t cols_{0};
    std::vector<T> data_;
};

using ComplexMatrix = Matrix<Complex>;
using RealMatrix = Matrix<double>;

namespace detail {

inline double conj_value(double x) noexcept { return x; }
inline Complex conj_value(const Complex& z) noexcept { return std::conj(z); }

template <typename T>
void require_same_shape(const Matrix<T>& a, const Matrix<T>& b, const char* op)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorKind::ShapeMismatch,
                    std::string(op) + ": " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                        " vs " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
}

} // namespace detail

// ------------------------------- dense ops ---------------------------------

template <typename T>
Matrix<T> operator+(const Matrix<T>& a, const Matrix<T>& b)
{
    detail::require_same_shape(a, b, "add");
    Matrix<T> out = a;
    auto o = out.data();
    auto bd = b.data();
    for (std::size_t k = 0; k < o.size(); ++k) o[k] += bd[k];
    return out;
}

template <typename T>
Matrix<T> operator-(const Matrix<T>& a, const Matrix<T>& b)
{
    detail::require_same_shape(a, b, "subtract");
    Matrix<T> out = a;
    auto o = out.data();
    auto bd = b.data();
    for (std::size_t k = 0; k < o.size(); ++k) o[k] -= bd[k];
    return out;
}

template <typename T, typename S>
    requires std::is_convertible_v<S, T>
Matrix<T> operator*(const S& s, const Matrix<T>& a)
{
    Matrix<T> out = a;
    for (auto& x : out.data()) x *= static_cast<T>(s);
    return out;
}

template <typename T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b)
{
    if (a.cols() != b.rows()) {
        throw Error(ErrorKind::ShapeMismatch, "product: inner dimensions " + std::to_string(a.cols()) +
                                                  " and " + std::to_string(b.rows()));
    }
    Matrix<T> out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto orow = out.row(i);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const T aik = a(i, k);
            if (aik == T{}) continue;
            auto brow = b.row(k);
            for (std::size_t j = 0; j < b.cols(); ++j) orow[j] += aik * brow[j];
        }
    }
    return out;
}

template <typename T>
std::vector<T> operator*(const Matrix<T>& a, std::span<const T> x)
{
    if (a.cols() != x.size()) throw Error(ErrorKind::ShapeMismatch, "matrix-vector product");
    std::vector<T> out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        T acc{};
        auto r = a.row(i);
        for (std::size_t k = 0; k < x.size(); ++k) acc += r[k] * x[k];
        out[i] = acc;
    }
    return out;
}

template <typename T>
std::vector<T> operator*(const Matrix<T>& a, const std::vector<T>& x)
{
    return a * std::span<const T>(x);
}

template <typename T>
Matrix<T> adjoint(const Matrix<T>& a)
{
    Matrix<T> out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = detail::conj_value(a(i, j));
    return out;
}

template <typename T>
Matrix<T> transpose(const Matrix<T>& a)
{
    Matrix<T> out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
    return out;
}

template <typename T>
Matrix<T> commutator(const Matrix<T>& a, const Matrix<T>& b)
{
    return a * b - b * a;
}

template <typename T>
Matrix<T> anticommutator(const Matrix<T>& a, const Matrix<T>& b)
{
    return a * b + b * a;
}

template <typename T>
double max_abs(const Matrix<T>& a)
{
    double m = 0.0;
    for (const auto& x : a.data()) m = std::max(m, static_cast<double>(std::abs(x)));
    return m;
}

template <typename T>
double frobenius_norm(const Matrix<T>& a)
{
    double s = 0.0;
    for (const auto& x : a.data()) s += std::norm(x);
    return std::sqrt(s);
}

template <typename T>
bool all_finite(const Matrix<T>& a)
{
    for (const auto& x : a.data()) {
        if constexpr (std::is_same_v<T, Complex>) {
            if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
        } else {
            if (!std::isfinite(x)) return false;
        }
    }
    return true;
}

// max |A - A†|
double hermiticity_residual(const ComplexMatrix& a);

RealMatrix real_part(const ComplexMatrix& a);
RealMatrix imag_part(const ComplexMatrix& a);
ComplexMatrix to_complex(const RealMatrix& a);

// ⟨u|v⟩ with the first argument conjugated.
Complex inner(std::span<const Complex> u, std::span<const Complex> v);
double norm(std::span<const Complex> v);

// ------------------------------ LU utilities --------------------------------

// Solves A X = B with partial pivoting. DomainViolation when a pivot vanishes exactly.
template <typename T>
Matrix<T> lu_solve(Matrix<T> a, Matrix<T> b)
{
    const std::size_t n = a.rows();
    if (!a.is_square() || b.rows() != n) throw Error(ErrorKind::ShapeMismatch, "lu_solve");
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(a(k, k));
        for (std::size_t r = k + 1; r < n; ++r) {
            if (std::abs(a(r, k)) > best) {
                best = std::abs(a(r, k));
                piv = r;
            }
        }
        if (best == 0.0) throw Error(ErrorKind::DomainViolation, "lu_solve: singular matrix");
        if (piv != k) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(piv, c));
            for (std::size_t c = 0; c < b.cols(); ++c) std::swap(b(k, c), b(piv, c));
        }
        const T inv = T{1} / a(k, k);
        for (std::size_t r = k + 1; r < n; ++r) {
            const T f = a(r, k) * inv;
            if (f == T{}) continue;
            for (std::size_t c = k; c < n; ++c) a(r, c) -= f * a(k, c);
            for (std::size_t c = 0; c < b.cols(); ++c) b(r, c) -= f * b(k, c);
        }
    }
    for (std::size_t kk = n; kk-- > 0;) {
        for (std::size_t c = 0; c < b.cols(); ++c) {
            T acc = b(kk, c);
            for (std::size_t j = kk + 1; j < n; ++j) acc -= a(kk, j) * b(j, c);
            b(kk, c) = acc / a(kk, kk);
        }
    }
    return b;
}

template <typename T>
T determinant(Matrix<T> a)
{
    const std::size_t n = a.rows();
    if (!a.is_square()) throw Error(ErrorKind::ShapeMismatch, "determinant of non-square matrix");
    T det{1};
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t r = k + 1; r < n; ++r)
            if (std::abs(a(r, k)) > std::abs(a(piv, k))) piv = r;
        if (a(piv, k) == T{}) return T{};
        if (piv != k) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(piv, c));
            det = -det;
        }
        det *= a(k, k);
        for (std::size_t r = k + 1; r < n; ++r) {
            const T f = a(r, k) / a(k, k);
            for (std::size_t c = k; c < n; ++c) a(r, c) -= f * a(k, c);
        }
    }
    return det;
}

// ------------------------------ eigensolver ---------------------------------

struct HermitianEigenSystem {
    RealVector eigenvalues;     // ascending
    ComplexMatrix eigenvectors; // columns are orthonormal eigenvectors
};

// Full spectrum of a Hermitian matrix. `hermiticity_tol` is relative to max|H|.
// Throws NotHermitian, NoConvergence, ShapeMismatch.
HermitianEigenSystem hermitian_eigendecompose(const ComplexMatrix& h, double hermiticity_tol = 1e-12);

// Real symmetric tridiagonal eigenproblem (implicit QL). `diag` and `offdiag`
// (offdiag[k] couples k and k+1) are consumed; eigenvectors accumulate into z,
// which must be square with diag.size() rows. Eigenvalues come back unsorted.
void tridiagonal_ql(RealVector& diag, RealVector offdiag, RealMatrix& z);

} // namespace qgeom
