// linalg.cpp: Hermitian eigensolver and small helpers

#include "qgeom/linalg.hpp"

#include <limits>
#include <numeric>

namespace qgeom {

double hermiticity_residual(const ComplexMatrix& a)
{
    if (!a.is_square()) throw Error(ErrorKind::ShapeMismatch, "hermiticity_residual: non-square matrix");
    double r = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i; j < a.cols(); ++j) r = std::max(r, std::abs(a(i, j) - std::conj(a(j, i))));
    return r;
}

RealMatrix real_part(const ComplexMatrix& a)
{
    RealMatrix out(a.rows(), a.cols());
    auto o = out.data();
    auto d = a.data();
    for (std::size_t k = 0; k < d.size(); ++k) o[k] = d[k].real();
    return out;
}

RealMatrix imag_part(const ComplexMatrix& a)
{
    RealMatrix out(a.rows(), a.cols());
    auto o = out.data();
    auto d = a.data();
    for (std::size_t k = 0; k < d.size(); ++k) o[k] = d[k].imag();
    return out;
}

ComplexMatrix to_complex(const RealMatrix& a)
{
    ComplexMatrix out(a.rows(), a.cols());
    auto o = out.data();
    auto d = a.data();
    for (std::size_t k = 0; k < d.size(); ++k) o[k] = d[k];
    return out;
}

Complex inner(std::span<const Complex> u, std::span<const Complex> v)
{
    if (u.size() != v.size()) throw Error(ErrorKind::ShapeMismatch, "inner: length mismatch");
    Complex acc{};
    for (std::size_t k = 0; k < u.size(); ++k) acc += std::conj(u[k]) * v[k];
    return acc;
}

double norm(std::span<const Complex> v)
{
    double s = 0.0;
    for (const auto& x : v) s += std::norm(x);
    return std::sqrt(s);
}

namespace {

// tql2 on a transposed eigenvector store: zt row j holds eigenvector j.
void ql_implicit(RealVector& d, RealVector& e, RealMatrix& zt)
{
    const std::size_t n = d.size();
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const int max_iter = 60;
    double f = 0.0;
    double tst1 = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
        tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
        std::size_t m = l;
        while (m < n - 1 && std::abs(e[m]) > eps * tst1) ++m;
        if (m > l) {
            int iter = 0;
            do {
                if (++iter > max_iter) {
                    throw Error(ErrorKind::NoConvergence,
                                "QL iteration did not converge for eigenvalue " + std::to_string(l));
                }
                double g = d[l];
                double p = (d[l + 1] - g) / (2.0 * e[l]);
                double r = std::hypot(p, 1.0);
                if (p < 0) r = -r;
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                const double dl1 = d[l + 1];
                double h = g - d[l];
                for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
                f += h;

                p = d[m];
                double c = 1.0, c2 = 1.0, c3 = 1.0;
                const double el1 = e[l + 1];
                double s = 0.0, s2 = 0.0;
                for (std::size_t i = m; i-- > l;) {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = std::hypot(p, e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    auto zi = zt.row(i);
                    auto zi1 = zt.row(i + 1);
                    for (std::size_t k = 0; k < zt.cols(); ++k) {
                        const double t = zi1[k];
                        zi1[k] = s * zi[k] + c * t;
                        zi[k] = c * zi[k] - s * t;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
            } while (std::abs(e[l]) > eps * tst1);
        }
        d[l] += f;
        e[l] = 0.0;
    }
}

} // namespace

void tridiagonal_ql(RealVector& diag, RealVector offdiag, RealMatrix& z)
{
    const std::size_t n = diag.size();
    if (z.rows() != n || z.cols() != n) throw Error(ErrorKind::ShapeMismatch, "tridiagonal_ql: z shape");
    if (n == 0) return;
    offdiag.resize(n, 0.0);
    offdiag[n - 1] = 0.0;
    RealMatrix zt = transpose(z);
    ql_implicit(diag, offdiag, zt);
    z = transpose(zt);
}

HermitianEigenSystem hermitian_eigendecompose(const ComplexMatrix& h, double hermiticity_tol)
{
    if (!h.is_square()) throw Error(ErrorKind::ShapeMismatch, "eigendecomposition of non-square matrix");
    if (!all_finite(h)) throw Error(ErrorKind::DomainViolation, "matrix has non-finite entries");
    const std::size_t n = h.rows();
    const double scale = max_abs(h);
    const double resid = hermiticity_residual(h);
    if (resid > hermiticity_tol * std::max(scale, std::numeric_limits<double>::min())) {
        throw Error(ErrorKind::NotHermitian, "max|H - H^dagger| = " + std::to_string(resid));
    }
    HermitianEigenSystem out;
    if (n == 0) return out;

    // Work on an explicitly Hermitian copy.
    ComplexMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = h(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex v = 0.5 * (h(i, j) + std::conj(h(j, i)));
            a(i, j) = v;
            a(j, i) = std::conj(v);
        }
    }
    ComplexMatrix q = ComplexMatrix::identity(n);

    ComplexVector v(n), p(n), w(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        const std::size_t m = n - k - 1;
        double sigma2 = 0.0;
        for (std::size_t i = 0; i < m; ++i) sigma2 += std::norm(a(k + 1 + i, k));
        const double sigma = std::sqrt(sigma2);
        double tail2 = sigma2 - std::norm(a(k + 1, k));
        if (tail2 <= 1e-300 * std::max(1.0, sigma2)) continue;

        const Complex x0 = a(k + 1, k);
        const double ax0 = std::abs(x0);
        const Complex phase = ax0 > 0 ? x0 / ax0 : Complex{1.0};
        const Complex alpha = -phase * sigma;
        for (std::size_t i = 0; i < m; ++i) v[i] = a(k + 1 + i, k);
        v[0] -= alpha;
        const double vn = std::sqrt(2.0 * sigma * (sigma + ax0));
        for (std::size_t i = 0; i < m; ++i) v[i] /= vn;

        // p = B v, beta = v† p, w = p - beta v
        for (std::size_t i = 0; i < m; ++i) {
            Complex acc{};
            auto row = a.row(k + 1 + i);
            for (std::size_t j = 0; j < m; ++j) acc += row[k + 1 + j] * v[j];
            p[i] = acc;
        }
        double beta = 0.0;
        for (std::size_t i = 0; i < m; ++i) beta += (std::conj(v[i]) * p[i]).real();
        for (std::size_t i = 0; i < m; ++i) w[i] = p[i] - beta * v[i];
        for (std::size_t i = 0; i < m; ++i) {
            auto row = a.row(k + 1 + i);
            const Complex vi = v[i], wi = w[i];
            for (std::size_t j = 0; j < m; ++j) {
                row[k + 1 + j] -= 2.0 * (vi * std::conj(w[j]) + wi * std::conj(v[j]));
            }
        }
        a(k + 1, k) = alpha;
        a(k, k + 1) = std::conj(alpha);
        for (std::size_t i = 1; i < m; ++i) {
            a(k + 1 + i, k) = 0.0;
            a(k, k + 1 + i) = 0.0;
        }
        // Q <- Q H
        for (std::size_t r = 0; r < n; ++r) {
            auto row = q.row(r);
            Complex s{};
            for (std::size_t j = 0; j < m; ++j) s += row[k + 1 + j] * v[j];
            s *= 2.0;
            for (std::size_t j = 0; j < m; ++j) row[k + 1 + j] -= s * std::conj(v[j]);
        }
    }

    // Diagonal unitary phases make the subdiagonal real and non-negative.
    RealVector diag(n), off(n, 0.0);
    ComplexVector phi(n, Complex{1.0});
    for (std::size_t k = 0; k < n; ++k) diag[k] = a(k, k).real();
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const Complex t = a(k + 1, k);
        const double at = std::abs(t);
        off[k] = at;
        phi[k + 1] = at > 0 ? phi[k] * (t / at) : phi[k];
    }

    RealMatrix zt = RealMatrix::identity(n);
    ql_implicit(diag, off, zt);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return diag[x] < diag[y]; });

    // V = Q diag(phi) Z
    for (std::size_t r = 0; r < n; ++r) {
        auto row = q.row(r);
        for (std::size_t j = 0; j < n; ++j) row[j] *= phi[j];
    }
    out.eigenvalues.resize(n);
    out.eigenvectors = ComplexMatrix(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        const std::size_t src = order[c];
        out.eigenvalues[c] = diag[src];
        auto zrow = zt.row(src);
        for (std::size_t r = 0; r < n; ++r) {
            auto qrow = q.row(r);
            Complex acc{};
            for (std::size_t j = 0; j < n; ++j) acc += qrow[j] * zrow[j];
            out.eigenvectors(r, c) = acc;
        }
    }
    return out;
}

} // namespace qgeom
