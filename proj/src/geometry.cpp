// geometry.cpp: spectral and stencil routes for the local geometry of one or two levels

#include "qgeom/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qgeom {

const char* to_string(QgtMethod m) noexcept
{
    switch (m) {
    case QgtMethod::Projector: return "projector";
    case QgtMethod::NbeinSum: return "nbein-sum";
    case QgtMethod::Zanardi: return "zanardi";
    }
    return "?";
}

const char* to_string(TorsionRoute r) noexcept
{
    switch (r) {
    case TorsionRoute::CovariantFd: return "covariant-fd";
    case TorsionRoute::NbeinSum: return "nbein-sum";
    case TorsionRoute::Hamiltonian: return "hamiltonian";
    }
    return "?";
}

QgtMethod parse_qgt_method(std::string_view s)
{
    for (auto m : {QgtMethod::Projector, QgtMethod::NbeinSum, QgtMethod::Zanardi})
        if (s == to_string(m)) return m;
    throw Error(ErrorKind::InvalidArgument, "unknown QGT method '" + std::string(s) + "'");
}

TorsionRoute parse_torsion_route(std::string_view s)
{
    for (auto r : {TorsionRoute::CovariantFd, TorsionRoute::NbeinSum, TorsionRoute::Hamiltonian})
        if (s == to_string(r)) return r;
    throw Error(ErrorKind::InvalidArgument, "unknown torsion route '" + std::string(s) + "'");
}

namespace {

void require_level(const EigenBundle& b, std::size_t k)
{
    if (k >= b.levels()) {
        throw Error(ErrorKind::InvalidArgument,
                    "level " + std::to_string(k) + " is not retained (" + std::to_string(b.levels()) + " levels)");
    }
}

void require_pair(const EigenBundle& b, std::size_t n, std::size_t m)
{
    require_level(b, n);
    require_level(b, m);
    if (n == m) throw Error(ErrorKind::InvalidArgument, "pair quantities need n != m");
}

double gap(const EigenBundle& b, std::size_t a, std::size_t c)
{
    const double d = b.energies[a] - b.energies[c];
    if (std::abs(d) <= b.gap_threshold) {
        throw Error(ErrorKind::DegeneratePair, "levels " + std::to_string(a) + " and " + std::to_string(c) +
                                                   " are degenerate (gap " + std::to_string(std::abs(d)) + ")");
    }
    return d;
}

// e^{(n)}_{i l} for every retained l ≠ n; column l, row i. Column n stays zero.
ComplexMatrix nbein_table(const Frame& frame, const std::vector<ComplexMatrix>& w, std::size_t n)
{
    const auto& b = frame.bundle;
    ComplexMatrix e(w.size(), b.levels());
    for (std::size_t l = 0; l < b.levels(); ++l) {
        if (l == n) continue;
        const double d = gap(b, n, l);
        for (std::size_t i = 0; i < w.size(); ++i) e(i, l) = kI * w[i](l, n) / d;
    }
    return e;
}

std::vector<double> shifted(std::span<const double> lambda, std::size_t i, double h)
{
    std::vector<double> p(lambda.begin(), lambda.end());
    p[i] += h;
    return p;
}

std::vector<double> steps_for(std::span<const double> lambda, double fd_rel)
{
    if (!(fd_rel > 0)) throw Error(ErrorKind::InvalidArgument, "finite-difference step must be positive");
    std::vector<double> h(lambda.size());
    for (std::size_t i = 0; i < h.size(); ++i) h[i] = fd_step(fd_rel, lambda[i]);
    return h;
}

void require_field_pair(const StateField& field, std::span<const double> lambda, std::size_t n, std::size_t m)
{
    if (lambda.size() != field.parameter_count()) {
        throw Error(ErrorKind::InvalidArgument, "parameter point has " + std::to_string(lambda.size()) +
                                                    " entries, family has " +
                                                    std::to_string(field.parameter_count()));
    }
    if (n == m) throw Error(ErrorKind::InvalidArgument, "pair quantities need n != m");
    for (auto k : {n, m})
        if (k >= field.levels()) throw Error(ErrorKind::InvalidArgument, "level " + std::to_string(k) + " is not retained");
}

RealVector gamma_at(const StateField& field, std::span<const double> lambda, std::size_t n, std::size_t m)
{
    RealVector a = field.connection(lambda, n);
    const RealVector b = field.connection(lambda, m);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

RealMatrix curl_of_gamma(const StateField& field, std::span<const double> lambda, std::size_t n, std::size_t m,
                         const std::vector<double>& h)
{
    const std::size_t np = lambda.size();
    std::vector<RealVector> dg(np); // dg[i][j] = ∂ᵢΓⱼ
    for (std::size_t i = 0; i < np; ++i) {
        const RealVector up = gamma_at(field, shifted(lambda, i, h[i]), n, m);
        const RealVector dn = gamma_at(field, shifted(lambda, i, -h[i]), n, m);
        dg[i].resize(np);
        for (std::size_t j = 0; j < np; ++j) dg[i][j] = (up[j] - dn[j]) / (2 * h[i]);
    }
    RealMatrix r(np, np);
    for (std::size_t i = 0; i < np; ++i)
        for (std::size_t j = i + 1; j < np; ++j) {
            r(i, j) = dg[i][j] - dg[j][i];
            r(j, i) = -r(i, j);
        }
    return r;
}

ComplexMatrix torsion_from_m(const ComplexMatrix& mm)
{
    const std::size_t np = mm.rows();
    ComplexMatrix t(np, np);
    for (std::size_t i = 0; i < np; ++i)
        for (std::size_t j = 0; j < np; ++j) t(i, j) = kI * (mm(i, j) - mm(j, i));
    return t;
}

} // namespace

std::vector<ComplexMatrix> couplings(const Frame& frame)
{
    const auto& v = frame.bundle.states;
    const ComplexMatrix vh = adjoint(v);
    std::vector<ComplexMatrix> out;
    out.reserve(frame.dh.size());
    for (const auto& d : frame.dh) out.push_back(vh * (d * v));
    return out;
}

NBein nbein_spectral(const Frame& frame, std::size_t n, std::size_t m)
{
    require_pair(frame.bundle, n, m);
    const double d = gap(frame.bundle, n, m);
    const ComplexVector vn = frame.bundle.state(n);
    const ComplexVector vm = frame.bundle.state(m);
    NBein e{n, m, ComplexVector(frame.dh.size())};
    for (std::size_t i = 0; i < frame.dh.size(); ++i) e.components[i] = kI * inner(vm, frame.dh[i] * vn) / d;
    return e;
}

QgtResult qgt(const Frame& frame, std::size_t n, QgtMethod method)
{
    const auto& b = frame.bundle;
    require_level(b, n);
    const std::size_t np = frame.dh.size();
    ComplexMatrix q(np, np);
    switch (method) {
    case QgtMethod::Projector: {
        for (std::size_t l = 0; l < b.levels(); ++l)
            if (l != n) gap(b, n, l);
        const auto x = projected_derivatives(frame, n);
        for (std::size_t i = 0; i < np; ++i)
            for (std::size_t j = 0; j < np; ++j) q(i, j) = inner(x[i], x[j]);
        break;
    }
    case QgtMethod::NbeinSum: {
        const auto e = nbein_table(frame, couplings(frame), n);
        for (std::size_t l = 0; l < b.levels(); ++l) {
            if (l == n) continue;
            for (std::size_t i = 0; i < np; ++i)
                for (std::size_t j = 0; j < np; ++j) q(i, j) += std::conj(e(i, l)) * e(j, l);
        }
        break;
    }
    case QgtMethod::Zanardi: {
        const auto w = couplings(frame);
        for (std::size_t l = 0; l < b.levels(); ++l) {
            if (l == n) continue;
            const double d = gap(b, n, l);
            for (std::size_t i = 0; i < np; ++i)
                for (std::size_t j = 0; j < np; ++j) q(i, j) += w[i](n, l) * w[j](l, n) / (d * d);
        }
        break;
    }
    }
    QgtResult r{q, RealMatrix(np, np), RealMatrix(np, np)};
    for (std::size_t i = 0; i < np; ++i)
        for (std::size_t j = 0; j < np; ++j) {
            r.g(i, j) = 0.5 * (q(i, j).real() + q(j, i).real());
            r.F(i, j) = -(q(i, j).imag() - q(j, i).imag());
        }
    return r;
}

TwoStateResult two_state(const Frame& frame, std::size_t n, std::size_t m)
{
    const auto& b = frame.bundle;
    require_pair(b, n, m);
    gap(b, n, m);
    const auto w = couplings(frame);
    const auto en = nbein_table(frame, w, n);
    const auto em = nbein_table(frame, w, m);
    const std::size_t np = w.size();
    TwoStateResult r{ComplexMatrix(np, np), ComplexMatrix(np, np), ComplexMatrix(np, np)};
    for (std::size_t l = 0; l < b.levels(); ++l) {
        if (l == n || l == m) continue;
        for (std::size_t i = 0; i < np; ++i)
            for (std::size_t j = 0; j < np; ++j) r.M(i, j) += std::conj(em(i, l)) * en(j, l);
    }
    for (std::size_t i = 0; i < np; ++i)
        for (std::size_t j = 0; j < np; ++j) r.G(i, j) = 0.5 * (r.M(i, j) + r.M(j, i));
    r.T = torsion_from_m(r.M);
    return r;
}

ComplexMatrix torsion_hamiltonian(const Frame& frame, std::size_t n, std::size_t m)
{
    const auto& b = frame.bundle;
    require_pair(b, n, m);
    gap(b, n, m);
    const auto w = couplings(frame);
    const std::size_t np = w.size();
    ComplexMatrix t(np, np);
    for (std::size_t l = 0; l < b.levels(); ++l) {
        if (l == n || l == m) continue;
        const double den = gap(b, m, l) * gap(b, n, l);
        for (std::size_t i = 0; i < np; ++i)
            for (std::size_t j = 0; j < np; ++j)
                t(i, j) += kI * (w[i](m, l) * w[j](l, n) - w[j](m, l) * w[i](l, n)) / den;
    }
    return t;
}

ThetaEta theta_eta_split(const NBein& e)
{
    ThetaEta out{RealVector(e.components.size()), RealVector(e.components.size())};
    for (std::size_t i = 0; i < e.components.size(); ++i) {
        out.theta[i] = e.components[i].real();
        out.eta[i] = e.components[i].imag();
    }
    return out;
}

NBein nbein_fd(const StateField& field, std::span<const double> lambda, std::size_t n, std::size_t m, double fd_rel)
{
    require_field_pair(field, lambda, n, m);
    const auto h = steps_for(lambda, fd_rel);
    const ComplexVector vm = field.frame_at(lambda)->bundle.state(m);
    NBein e{n, m, ComplexVector(lambda.size())};
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        const ComplexVector up = field.frame_at(shifted(lambda, i, h[i]))->bundle.state(n);
        const ComplexVector dn = field.frame_at(shifted(lambda, i, -h[i]))->bundle.state(n);
        e.components[i] = kI * (inner(vm, up) - inner(vm, dn)) / (2 * h[i]);
    }
    return e;
}

RealVector berry_connection_fd(const StateField& field, std::span<const double> lambda, std::size_t n, double fd_rel)
{
    if (n >= field.levels()) throw Error(ErrorKind::InvalidArgument, "level " + std::to_string(n) + " is not retained");
    if (lambda.size() != field.parameter_count())
        throw Error(ErrorKind::InvalidArgument, "parameter point has the wrong length");
    const auto h = steps_for(lambda, fd_rel);
    const ComplexVector vn = field.frame_at(lambda)->bundle.state(n);
    RealVector a(lambda.size());
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        const ComplexVector up = field.frame_at(shifted(lambda, i, h[i]))->bundle.state(n);
        const ComplexVector dn = field.frame_at(shifted(lambda, i, -h[i]))->bundle.state(n);
        a[i] = (kI * (inner(vn, up) - inner(vn, dn))).real() / (2 * h[i]);
    }
    return a;
}

RealMatrix r_curvature(const StateField& field, std::span<const double> lambda, std::size_t n, std::size_t m,
                       double fd_rel)
{
    require_field_pair(field, lambda, n, m);
    return curl_of_gamma(field, lambda, n, m, steps_for(lambda, fd_rel));
}

ConnectionPair gamma_connection(const StateField& field, std::span<const double> lambda, std::size_t n,
                                std::size_t m, double fd_rel)
{
    require_field_pair(field, lambda, n, m);
    ConnectionPair c;
    c.A_n = field.connection(lambda, n);
    c.A_m = field.connection(lambda, m);
    c.Gamma.resize(c.A_n.size());
    for (std::size_t i = 0; i < c.Gamma.size(); ++i) c.Gamma[i] = c.A_n[i] - c.A_m[i];
    c.R = curl_of_gamma(field, lambda, n, m, steps_for(lambda, fd_rel));
    return c;
}

ComplexMatrix torsion(const StateField& field, std::span<const double> lambda, std::size_t n, std::size_t m,
                      TorsionRoute route, double fd_rel)
{
    require_field_pair(field, lambda, n, m);
    const auto center = field.frame_at(lambda);
    if (route == TorsionRoute::NbeinSum) return two_state(*center, n, m).T;
    if (route == TorsionRoute::Hamiltonian) return torsion_hamiltonian(*center, n, m);

    // Dᵢeⱼ − Dⱼeᵢ with D = ∂ + iΓ, e taken spectrally at each stencil point.
    const std::size_t np = lambda.size();
    const auto h = steps_for(lambda, fd_rel);
    const ComplexVector e0 = nbein_spectral(*center, n, m).components;
    const RealVector g = gamma_at(field, lambda, n, m);
    std::vector<ComplexVector> de(np); // de[i][j] = ∂ᵢeⱼ
    for (std::size_t i = 0; i < np; ++i) {
        const auto up = nbein_spectral(*field.frame_at(shifted(lambda, i, h[i])), n, m).components;
        const auto dn = nbein_spectral(*field.frame_at(shifted(lambda, i, -h[i])), n, m).components;
        de[i].resize(np);
        for (std::size_t j = 0; j < np; ++j) de[i][j] = (up[j] - dn[j]) / (2 * h[i]);
    }
    ComplexMatrix t(np, np);
    for (std::size_t i = 0; i < np; ++i)
        for (std::size_t j = 0; j < np; ++j) {
            if (i == j) continue;
            t(i, j) = de[i][j] - de[j][i] + kI * g[i] * e0[j] - kI * g[j] * e0[i];
        }
    return t;
}

OverlapCheck first_order_overlap_check(const StateField& field, std::span<const double> lambda,
                                       std::span<const double> delta, std::size_t n, std::size_t m)
{
    require_field_pair(field, lambda, n, m);
    if (delta.size() != lambda.size()) throw Error(ErrorKind::ShapeMismatch, "displacement has the wrong length");
    const auto center = field.frame_at(lambda);
    std::vector<double> moved(lambda.begin(), lambda.end());
    for (std::size_t i = 0; i < moved.size(); ++i) moved[i] += delta[i];
    const auto e = nbein_spectral(*center, n, m);
    OverlapCheck out;
    out.exact = inner(center->bundle.state(m), field.frame_at(moved)->bundle.state(n));
    Complex s{};
    for (std::size_t i = 0; i < delta.size(); ++i) s += e.components[i] * delta[i];
    out.predicted = -kI * s;
    out.residual = std::abs(out.exact - out.predicted);
    return out;
}

BianchiResiduals bianchi_residuals(const StateField& field, std::span<const double> lambda, std::size_t n,
                                   std::size_t m, double fd_rel)
{
    require_field_pair(field, lambda, n, m);
    const std::size_t np = lambda.size();
    BianchiResiduals out;
    if (np < 3) return out;
    // One step set for every nesting level so the difference operators commute.
    const auto h = steps_for(lambda, fd_rel);
    const auto center = field.frame_at(lambda);
    const ComplexVector e = nbein_spectral(*center, n, m).components;
    const RealVector g = gamma_at(field, lambda, n, m);
    const RealMatrix r = curl_of_gamma(field, lambda, n, m, h);

    std::vector<RealMatrix> dr(np);
    std::vector<ComplexMatrix> dt(np);
    for (std::size_t i = 0; i < np; ++i) {
        const auto lp = shifted(lambda, i, h[i]);
        const auto lm = shifted(lambda, i, -h[i]);
        dr[i] = (1.0 / (2 * h[i])) * (curl_of_gamma(field, lp, n, m, h) - curl_of_gamma(field, lm, n, m, h));
        dt[i] = Complex(1.0 / (2 * h[i])) *
                (two_state(*field.frame_at(lp), n, m).T - two_state(*field.frame_at(lm), n, m).T);
    }
    const ComplexMatrix t = two_state(*center, n, m).T;
    for (std::size_t i = 0; i < np; ++i)
        for (std::size_t j = i + 1; j < np; ++j)
            for (std::size_t k = j + 1; k < np; ++k) {
                const std::size_t a[3] = {i, j, k}, b[3] = {j, k, i}, c[3] = {k, i, j};
                double sr = 0.0;
                Complex st{};
                for (int s = 0; s < 3; ++s) {
                    sr += dr[a[s]](b[s], c[s]);
                    st += dt[a[s]](b[s], c[s]) + kI * g[a[s]] * t(b[s], c[s]) - kI * r(a[s], b[s]) * e[c[s]];
                }
                out.dR = std::max(out.dR, std::abs(sr));
                out.DT = std::max(out.DT, std::abs(st));
            }
    return out;
}

} // namespace qgeom
