// invariants.hpp: gauge-invariant four-index tensors and their scalar contractions
#pragma once

#include <array>
#include <string>
#include <vector>

#include "qgeom/geometry.hpp"

namespace qgeom {

enum class TensorLabel { M, G, T };
enum class InvariantKind { N, A };

const char* to_string(TensorLabel t) noexcept;
const char* to_string(InvariantKind k) noexcept;

struct InvariantTensor {
    InvariantKind kind{InvariantKind::N};
    TensorLabel xi{TensorLabel::M};
    TensorLabel theta{TensorLabel::M};
    std::size_t dim{0};
    std::vector<double> values; // row-major [i][j][k][l]

    double operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const noexcept
    {
        return values[((i * dim + j) * dim + k) * dim + l];
    }
    std::string name() const; // e.g. "N_MG"
};

// N = ReΞᵢⱼ ReΘₖₗ + ImΞᵢⱼ ImΘₖₗ, A = ReΞᵢⱼ ImΘₖₗ − ImΞᵢⱼ ReΘₖₗ.
InvariantTensor pair_tensor(const ComplexMatrix& xi, const ComplexMatrix& theta, InvariantKind kind,
                            TensorLabel xi_label = TensorLabel::M, TensorLabel theta_label = TensorLabel::M);

// Adjugate for dim ≤ 3, LU above. SingularMetric when |det| ≤ 1e-12 × max|g|^dim.
RealMatrix invert_metric(const RealMatrix& g);

struct ScalarInvariant {
    double value{0.0};
    std::size_t n{0};
    std::size_t m{0};
    TensorLabel xi{TensorLabel::M};
    TensorLabel theta{TensorLabel::M};
};

// 2 g_n^{ik} g_m^{jl} N_{ijkl}. InvalidArgument for an A-kind tensor.
ScalarInvariant scalar_invariant(const InvariantTensor& t, const RealMatrix& g_n, const RealMatrix& g_m,
                                 std::size_t n = 0, std::size_t m = 0);

struct InvariantSet {
    std::size_t n{0};
    std::size_t m{0};
    TwoStateResult two_state;
    RealMatrix g_n;
    RealMatrix g_m;
    std::vector<InvariantTensor> tensors;  // N and A for Ξ = Θ ∈ {M, G, T}
    std::vector<ScalarInvariant> scalars;  // every Ξ, Θ pair, diagonal first
    std::array<double, 3> swapped{};       // 𝒩^{(m,n)} for Ξ = Θ = M, G, T
    double symmetry_residual{0.0};         // max |𝒩^{(n,m)} − 𝒩^{(m,n)}| over the diagonal

    const ScalarInvariant& scalar(TensorLabel xi, TensorLabel theta) const;
};

InvariantSet invariant_report(const Frame& frame, std::size_t n, std::size_t m);

} // namespace qgeom
