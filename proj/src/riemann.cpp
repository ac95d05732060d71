// riemann.cpp: stencil sampling of the quantum metric and its curvature

#include "qgeom/riemann.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "qgeom/geometry.hpp"
#include "qgeom/invariants.hpp"
#include "qgeom/spectrum.hpp"

namespace qgeom {

namespace {

constexpr int kAxisOffsets[] = {-2, -1, 1, 2};

std::size_t axis_index(std::size_t i, int a)
{
    const auto* it = std::find(std::begin(kAxisOffsets), std::end(kAxisOffsets), a);
    if (it == std::end(kAxisOffsets)) throw Error(ErrorKind::InvalidArgument, "axis offset outside the stencil");
    return 1 + 4 * i + static_cast<std::size_t>(it - std::begin(kAxisOffsets));
}

std::size_t pair_index(std::size_t i, std::size_t j, std::size_t dim)
{
    std::size_t p = 0;
    for (std::size_t a = 0; a < dim; ++a)
        for (std::size_t b = a + 1; b < dim; ++b) {
            if (a == i && b == j) return p;
            ++p;
        }
    throw Error(ErrorKind::InvalidArgument, "corner indices must satisfy i < j < dim");
}

// Center values of g, ∂g and ∂∂g. Axis differences at step s·h, mixed ones at h.
struct Jet {
    RealMatrix g;
    std::vector<RealMatrix> d;               // d[k] = ∂ₖg
    std::vector<std::vector<RealMatrix>> dd; // dd[k][l] = ∂ₖ∂ₗg
};

Jet jet(const MetricField& f, int s)
{
    const std::size_t n = f.dim();
    Jet j{f.values[0], std::vector<RealMatrix>(n), std::vector<std::vector<RealMatrix>>(n, std::vector<RealMatrix>(n))};
    for (std::size_t k = 0; k < n; ++k) {
        const double h = s * f.steps[k];
        const auto& up = f.at_axis(k, s);
        const auto& dn = f.at_axis(k, -s);
        j.d[k] = (1.0 / (2 * h)) * (up - dn);
        j.dd[k][k] = (1.0 / (h * h)) * (up - 2.0 * j.g + dn);
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = k + 1; l < n; ++l) {
            const double den = 4 * f.steps[k] * f.steps[l];
            j.dd[k][l] = (1.0 / den) * (f.at_corner(k, l, 1, 1) - f.at_corner(k, l, 1, -1) -
                                        f.at_corner(k, l, -1, 1) + f.at_corner(k, l, -1, -1));
            j.dd[l][k] = j.dd[k][l];
        }
    return j;
}

struct Geometry {
    Christoffel gamma;
    RiemannTensor riemann;
    RealMatrix ricci;
    double scalar{0.0};
};

Geometry geometry_from(const Jet& j)
{
    const std::size_t n = j.g.rows();
    const RealMatrix gi = invert_metric(j.g);
    auto idx3 = [n](std::size_t a, std::size_t b, std::size_t c) { return (a * n + b) * n + c; };

    std::vector<double> low(n * n * n); // [l][i][j] = ½(∂ᵢg_jl + ∂ⱼg_il − ∂ₗg_ij)
    for (std::size_t l = 0; l < n; ++l)
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) low[idx3(l, a, b)] = 0.5 * (j.d[a](b, l) + j.d[b](a, l) - j.d[l](a, b));

    Geometry out;
    out.gamma = Christoffel{n, std::vector<double>(n * n * n, 0.0)};
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                double s = 0.0;
                for (std::size_t l = 0; l < n; ++l) s += gi(k, l) * low[idx3(l, a, b)];
                out.gamma.values[idx3(k, a, b)] = s;
            }

    // dgam[m][k][a][b] = ∂ₘΓᵏₐᵦ
    std::vector<double> dgam(n * n * n * n, 0.0);
    for (std::size_t m = 0; m < n; ++m) {
        const RealMatrix dgi = -1.0 * (gi * j.d[m] * gi);
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b) {
                    double s = 0.0;
                    for (std::size_t l = 0; l < n; ++l) {
                        const double dlow = 0.5 * (j.dd[m][a](b, l) + j.dd[m][b](a, l) - j.dd[m][l](a, b));
                        s += dgi(k, l) * low[idx3(l, a, b)] + gi(k, l) * dlow;
                    }
                    dgam[((m * n + k) * n + a) * n + b] = s;
                }
    }
    auto dG = [&](std::size_t m, std::size_t k, std::size_t a, std::size_t b) {
        return dgam[((m * n + k) * n + a) * n + b];
    };

    out.riemann = RiemannTensor{n, std::vector<double>(n * n * n * n, 0.0)};
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s < n; ++s)
            for (std::size_t mu = 0; mu < n; ++mu)
                for (std::size_t nu = 0; nu < n; ++nu) {
                    double v = dG(mu, r, nu, s) - dG(nu, r, mu, s);
                    for (std::size_t l = 0; l < n; ++l)
                        v += out.gamma(r, mu, l) * out.gamma(l, nu, s) - out.gamma(r, nu, l) * out.gamma(l, mu, s);
                    out.riemann.values[((r * n + s) * n + mu) * n + nu] = v;
                }
    out.ricci = RealMatrix(n, n);
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t nu = 0; nu < n; ++nu) {
            double v = 0.0;
            for (std::size_t r = 0; r < n; ++r) v += out.riemann(r, s, r, nu);
            out.ricci(s, nu) = v;
        }
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t nu = 0; nu < n; ++nu) out.scalar += gi(s, nu) * out.ricci(s, nu);
    return out;
}

void for_each_parallel(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& fn)
{
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
    if (jobs == 1) {
        for (std::size_t k = 0; k < count; ++k) fn(k);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(jobs);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::size_t k; (k = next++) < count;) fn(k);
            } catch (...) {
                errors[t] = std::current_exception();
                next = count;
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace

const RealMatrix& MetricField::at_axis(std::size_t i, int a) const
{
    if (a == 0) return values[0];
    return values.at(axis_index(i, a));
}

const RealMatrix& MetricField::at_corner(std::size_t i, std::size_t j, int a, int b) const
{
    if (i > j) return at_corner(j, i, b, a);
    if ((a != 1 && a != -1) || (b != 1 && b != -1))
        throw Error(ErrorKind::InvalidArgument, "corner offsets must be ±1");
    const std::size_t base = 1 + 4 * dim() + 4 * pair_index(i, j, dim());
    return values.at(base + (a > 0 ? 2 : 0) + (b > 0 ? 1 : 0));
}

std::size_t stencil_size(std::size_t dim) noexcept { return 1 + 4 * dim + 2 * dim * (dim - 1); }

std::vector<std::vector<double>> stencil_nodes(std::span<const double> center, std::span<const double> steps)
{
    const std::size_t n = center.size();
    if (steps.size() != n) throw Error(ErrorKind::ShapeMismatch, "one step per parameter required");
    std::vector<double> c(center.begin(), center.end());
    std::vector<std::vector<double>> nodes{c};
    for (std::size_t i = 0; i < n; ++i)
        for (int a : kAxisOffsets) {
            auto p = c;
            p[i] += a * steps[i];
            nodes.push_back(std::move(p));
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (int a : {-1, 1})
                for (int b : {-1, 1}) {
                    auto p = c;
                    p[i] += a * steps[i];
                    p[j] += b * steps[j];
                    nodes.push_back(std::move(p));
                }
    return nodes;
}

MetricField sample_metric(const MetricFunction& metric, std::span<const double> center,
                          std::span<const double> steps, std::size_t level, unsigned jobs)
{
    for (double h : steps)
        if (!(h > 0)) throw Error(ErrorKind::InvalidArgument, "stencil steps must be positive");
    MetricField f;
    f.center.assign(center.begin(), center.end());
    f.steps.assign(steps.begin(), steps.end());
    f.level = level;
    f.nodes = stencil_nodes(center, steps);
    f.values.resize(f.nodes.size());
    for_each_parallel(f.nodes.size(), jobs, [&](std::size_t k) {
        RealMatrix g = metric(f.nodes[k]);
        if (g.rows() != center.size() || !g.is_square())
            throw Error(ErrorKind::ShapeMismatch, "metric sample has the wrong shape");
        f.values[k] = std::move(g);
    });
    return f;
}

MetricField sample_metric(const FamilySpec& spec, std::span<const double> center, std::size_t n, double rel_step,
                          std::size_t trunc_dim, std::size_t levels, unsigned jobs)
{
    if (center.size() != spec.parameter_count())
        throw Error(ErrorKind::InvalidArgument, "center has the wrong number of parameters");
    if (levels == 0) levels = default_levels(n, n);
    if (trunc_dim == 0) trunc_dim = default_trunc_dim(levels);
    const Assembler assembler(spec, trunc_dim);
    std::vector<double> steps(center.size());
    for (std::size_t i = 0; i < steps.size(); ++i) steps[i] = fd_step(rel_step, center[i]);
    auto metric = [&](std::span<const double> lam) {
        Frame f;
        auto ops = assembler.assemble(lam);
        f.bundle = solve_at(assembler, lam, levels, GaugePolicy::largest_real_positive());
        f.h = std::move(ops.h);
        f.dh = std::move(ops.dh);
        return qgt(f, n, QgtMethod::Projector).g;
    };
    return sample_metric(metric, center, steps, n, jobs);
}

Christoffel christoffel(const MetricField& field) { return geometry_from(jet(field, 1)).gamma; }

RiemannTensor riemann(const MetricField& field) { return geometry_from(jet(field, 1)).riemann; }

Curvature scalar_curvature(const MetricField& field)
{
    auto fine = geometry_from(jet(field, 1));
    auto coarse = geometry_from(jet(field, 2));
    Curvature c;
    c.scalar = fine.scalar;
    c.error_estimate = std::abs(fine.scalar - coarse.scalar) / 3.0;
    c.riemann = std::move(fine.riemann);
    c.ricci = std::move(fine.ricci);
    return c;
}

Curvature scalar_curvature(const FamilySpec& spec, std::span<const double> center, std::size_t n, double rel_step,
                           std::size_t trunc_dim, unsigned jobs)
{
    return scalar_curvature(sample_metric(spec, center, n, rel_step, trunc_dim, 0, jobs));
}

} // namespace qgeom
