// invariants.cpp: N/A tensors, metric inversion, scalar contractions

#include "qgeom/invariants.hpp"

#include <cmath>

namespace qgeom {

const char* to_string(TensorLabel t) noexcept
{
    switch (t) {
    case TensorLabel::M: return "M";
    case TensorLabel::G: return "G";
    case TensorLabel::T: return "T";
    }
    return "?";
}

const char* to_string(InvariantKind k) noexcept { return k == InvariantKind::N ? "N" : "A"; }

std::string InvariantTensor::name() const
{
    std::string s = std::string(to_string(kind)) + "_" + to_string(xi);
    if (theta != xi) s += to_string(theta);
    return s;
}

InvariantTensor pair_tensor(const ComplexMatrix& xi, const ComplexMatrix& theta, InvariantKind kind,
                            TensorLabel xi_label, TensorLabel theta_label)
{
    if (!xi.is_square() || xi.rows() != theta.rows() || xi.cols() != theta.cols())
        throw Error(ErrorKind::ShapeMismatch, "invariant tensor needs two square tensors of equal size");
    const std::size_t d = xi.rows();
    InvariantTensor t{kind, xi_label, theta_label, d, std::vector<double>(d * d * d * d)};
    std::size_t k = 0;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const Complex a = xi(i, j);
            for (std::size_t p = 0; p < d; ++p)
                for (std::size_t q = 0; q < d; ++q) {
                    const Complex b = theta(p, q);
                    t.values[k++] = kind == InvariantKind::N ? a.real() * b.real() + a.imag() * b.imag()
                                                             : a.real() * b.imag() - a.imag() * b.real();
                }
        }
    return t;
}

RealMatrix invert_metric(const RealMatrix& g)
{
    if (!g.is_square()) throw Error(ErrorKind::ShapeMismatch, "metric is not square");
    const std::size_t d = g.rows();
    if (d == 0) return g;
    const double scale = std::pow(max_abs(g), static_cast<double>(d));
    const double det = determinant(g);
    if (!(std::abs(det) > 1e-12 * scale)) {
        throw Error(ErrorKind::SingularMetric, "metric determinant " + std::to_string(det) + " below threshold");
    }
    RealMatrix inv(d, d);
    if (d == 1) {
        inv(0, 0) = 1.0 / g(0, 0);
    } else if (d == 2) {
        inv(0, 0) = g(1, 1) / det;
        inv(1, 1) = g(0, 0) / det;
        inv(0, 1) = -g(0, 1) / det;
        inv(1, 0) = -g(1, 0) / det;
    } else if (d == 3) {
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) {
                // cofactor of (j, i)
                const std::size_t r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
                inv(i, j) = (g(r0, c0) * g(r1, c1) - g(r0, c1) * g(r1, c0)) / det;
            }
    } else {
        inv = lu_solve(g, RealMatrix::identity(d));
    }
    return inv;
}

ScalarInvariant scalar_invariant(const InvariantTensor& t, const RealMatrix& g_n, const RealMatrix& g_m,
                                 std::size_t n, std::size_t m)
{
    if (t.kind != InvariantKind::N) throw Error(ErrorKind::InvalidArgument, "only N-kind tensors contract to a scalar");
    const std::size_t d = t.dim;
    if (g_n.rows() != d || g_m.rows() != d) throw Error(ErrorKind::ShapeMismatch, "metric and tensor sizes differ");
    const RealMatrix a = invert_metric(g_n);
    const RealMatrix b = invert_metric(g_m);
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k)
                for (std::size_t l = 0; l < d; ++l) s += a(i, k) * b(j, l) * t(i, j, k, l);
    return {2.0 * s, n, m, t.xi, t.theta};
}

const ScalarInvariant& InvariantSet::scalar(TensorLabel xi, TensorLabel theta) const
{
    for (const auto& s : scalars)
        if (s.xi == xi && s.theta == theta) return s;
    throw Error(ErrorKind::InvalidArgument, "scalar invariant not in the report");
}

namespace {

const ComplexMatrix& pick(const TwoStateResult& r, TensorLabel t)
{
    switch (t) {
    case TensorLabel::M: return r.M;
    case TensorLabel::G: return r.G;
    case TensorLabel::T: return r.T;
    }
    return r.M;
}

constexpr TensorLabel kLabels[] = {TensorLabel::M, TensorLabel::G, TensorLabel::T};

} // namespace

InvariantSet invariant_report(const Frame& frame, std::size_t n, std::size_t m)
{
    InvariantSet out;
    out.n = n;
    out.m = m;
    out.two_state = two_state(frame, n, m);
    out.g_n = qgt(frame, n).g;
    out.g_m = qgt(frame, m).g;
    for (auto kind : {InvariantKind::N, InvariantKind::A})
        for (auto x : kLabels) out.tensors.push_back(pair_tensor(pick(out.two_state, x), pick(out.two_state, x), kind, x, x));
    for (auto x : kLabels)
        out.scalars.push_back(scalar_invariant(pair_tensor(pick(out.two_state, x), pick(out.two_state, x),
                                                           InvariantKind::N, x, x),
                                               out.g_n, out.g_m, n, m));
    for (auto x : kLabels)
        for (auto y : kLabels) {
            if (x == y) continue;
            out.scalars.push_back(scalar_invariant(
                pair_tensor(pick(out.two_state, x), pick(out.two_state, y), InvariantKind::N, x, y), out.g_n, out.g_m,
                n, m));
        }
    const auto back = two_state(frame, m, n);
    for (std::size_t k = 0; k < 3; ++k) {
        const auto& t = pick(back, kLabels[k]);
        out.swapped[k] = scalar_invariant(pair_tensor(t, t, InvariantKind::N), out.g_m, out.g_n, m, n).value;
        out.symmetry_residual = std::max(out.symmetry_residual, std::abs(out.swapped[k] - out.scalars[k].value));
    }
    return out;
}

} // namespace qgeom
