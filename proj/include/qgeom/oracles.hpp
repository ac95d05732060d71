// oracles.hpp: closed forms for the two oscillator examples and a comparison
// engine aware of which quantities are gauge-invariant
#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qgeom/hamdsl.hpp"
#include "qgeom/linalg.hpp"
#include "qgeom/spectrum.hpp"

namespace qgeom {

// One labelled tensor; vectors are N×1, scalars 1×1.
struct Quantity {
    std::string label;
    ComplexMatrix value;
    bool invariant{true};
};

using TensorSet = std::vector<Quantity>;

const Quantity* find_quantity(const TensorSet& set, std::string_view label) noexcept;

// Labels: E_n, E_m, g_n, g_m, F_n, det_g_n, scalar_curvature, A_n, e, M, G, T, Gamma, R, N_M, N_G, N_T.
// Pair quantities only when m is given; scalar_curvature only for example 1.
// Throws DomainViolation outside Z > 0 (and Z − Y² > 0).
TensorSet oracle_example1(std::size_t n, std::optional<std::size_t> m, std::span<const double> lambda,
                          double hbar = 1.0);
TensorSet oracle_example2(std::size_t n, std::optional<std::size_t> m, std::span<const double> lambda,
                          double hbar = 1.0);
TensorSet oracle_for(std::string_view family, std::size_t n, std::optional<std::size_t> m,
                     std::span<const double> lambda, double hbar = 1.0);

enum class CompareMode { Direct, Modulus, InvariantOnly };
const char* to_string(CompareMode m) noexcept;
CompareMode parse_compare_mode(std::string_view s);

struct OracleReport {
    std::string label;
    CompareMode mode{CompareMode::Direct};
    ComplexMatrix numeric;
    ComplexMatrix oracle;
    double max_error{0.0}; // relative for nonzero oracle entries, absolute for zero ones
    double tolerance{0.0};
    bool pass{false};
};

// Every numeric label with an oracle counterpart. Modulus compares |·| for
// gauge-dependent quantities only; InvariantOnly skips them.
// ShapeMismatch for a missing label or differing shapes.
std::vector<OracleReport> compare(const TensorSet& numeric, const TensorSet& oracle, CompareMode mode, double tol);
double compare_error(const ComplexMatrix& numeric, const ComplexMatrix& oracle, bool modulus);

// Makes exp(iYq²/(2Zħ))|n⟩ real, the gauge of the closed-form example-2 connection.
// Parameters are read as (W, Y, Z).
PhaseRule example2_coordinate_gauge(std::size_t trunc_dim, double hbar = 1.0);

struct PipelineOptions {
    std::size_t levels{0};    // default_levels(n, m) when 0
    std::size_t trunc_dim{0}; // default_trunc_dim(levels) when 0
    bool coordinate_gauge{false};
    bool curvature{false};    // scalar curvature of level n
    double fd_rel{1e-5};
    double riemann_rel{1e-3};
    unsigned jobs{1};
};

// Numerical counterpart of the oracle labels from the full pipeline.
// A_n and Gamma appear only under the coordinate gauge.
TensorSet numeric_set(const FamilySpec& spec, std::span<const double> lambda, std::size_t n,
                      std::optional<std::size_t> m, const PipelineOptions& opt = {});

} // namespace qgeom
