// riemann.hpp: the level-n quantum metric as a Riemannian metric, with Christoffel
// symbols, Riemann and Ricci tensors, scalar curvature by finite differences
#pragma once

#include <functional>
#include <span>
#include <vector>

#include "qgeom/hamdsl.hpp"
#include "qgeom/linalg.hpp"

namespace qgeom {

using MetricFunction = std::function<RealMatrix(std::span<const double>)>;

// Nodes: center, ±h and ±2h on every axis, (±h, ±h) on every axis pair.
// 13 nodes for two parameters, 25 for three.
struct MetricField {
    std::vector<double> center;
    std::vector<double> steps;
    std::size_t level{0};
    std::vector<std::vector<double>> nodes;
    std::vector<RealMatrix> values;

    std::size_t dim() const noexcept { return center.size(); }
    // Sample at center + a·hᵢ eᵢ + b·hⱼ eⱼ, with a, b ∈ {−2..2} as laid out above.
    const RealMatrix& at_axis(std::size_t i, int a) const;
    const RealMatrix& at_corner(std::size_t i, std::size_t j, int a, int b) const;
};

std::size_t stencil_size(std::size_t dim) noexcept;
std::vector<std::vector<double>> stencil_nodes(std::span<const double> center, std::span<const double> steps);

MetricField sample_metric(const MetricFunction& metric, std::span<const double> center,
                          std::span<const double> steps, std::size_t level = 0, unsigned jobs = 1);

// Projector metric of level n at every node; one truncation for all nodes
// (default_trunc_dim(levels) when 0). Steps are rel × max(1, |λᵢ|).
MetricField sample_metric(const FamilySpec& spec, std::span<const double> center, std::size_t n,
                          double rel_step = 1e-3, std::size_t trunc_dim = 0, std::size_t levels = 0,
                          unsigned jobs = 1);

struct Christoffel {
    std::size_t dim{0};
    std::vector<double> values; // [k][i][j], Γᵏᵢⱼ
    double operator()(std::size_t k, std::size_t i, std::size_t j) const noexcept
    {
        return values[(k * dim + i) * dim + j];
    }
};

struct RiemannTensor {
    std::size_t dim{0};
    std::vector<double> values; // [ρ][σ][μ][ν], R^ρ_{σμν}
    double operator()(std::size_t r, std::size_t s, std::size_t m, std::size_t n) const noexcept
    {
        return values[((r * dim + s) * dim + m) * dim + n];
    }
};

// Throws SingularMetric when the center metric is not invertible.
Christoffel christoffel(const MetricField& field);
RiemannTensor riemann(const MetricField& field);

struct Curvature {
    double scalar{0.0};
    double error_estimate{0.0}; // |𝓡(h) − 𝓡(2h)| / 3, axis differences from the ±2h nodes
    RiemannTensor riemann;
    RealMatrix ricci;
};

Curvature scalar_curvature(const MetricField& field);
Curvature scalar_curvature(const FamilySpec& spec, std::span<const double> center, std::size_t n,
                           double rel_step = 1e-3, std::size_t trunc_dim = 0, unsigned jobs = 1);

} // namespace qgeom
