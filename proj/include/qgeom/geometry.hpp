// geometry.hpp: N-beins, QGT, two-state tensor, torsion, connections, curvatures
#pragma once

#include <span>
#include <vector>

#include "qgeom/linalg.hpp"
#include "qgeom/spectrum.hpp"

namespace qgeom {

struct NBein {
    std::size_t level_n{0};
    std::size_t level_m{0};
    ComplexVector components; // e^{(n)}_{i m}, one per parameter
};

struct ThetaEta {
    RealVector theta;
    RealVector eta;
};

struct QgtResult {
    ComplexMatrix Q;
    RealMatrix g;
    RealMatrix F;
};

struct TwoStateResult {
    ComplexMatrix M;
    ComplexMatrix G;
    ComplexMatrix T;
};

struct ConnectionPair {
    RealVector A_n;
    RealVector A_m;
    RealVector Gamma;
    RealMatrix R;
};

enum class QgtMethod { Projector, NbeinSum, Zanardi };
enum class TorsionRoute { CovariantFd, NbeinSum, Hamiltonian };

const char* to_string(QgtMethod m) noexcept;
const char* to_string(TorsionRoute r) noexcept;
QgtMethod parse_qgt_method(std::string_view s);       // InvalidArgument
TorsionRoute parse_torsion_route(std::string_view s); // InvalidArgument

// ⟨a|∂ᵢH|b⟩ over retained levels, one matrix per parameter.
std::vector<ComplexMatrix> couplings(const Frame& frame);

// ---- spectral routes: one frame, sums over retained levels ----

// i⟨m|∂ᵢH|n⟩/(E_n − E_m). InvalidArgument for n = m or unretained levels; DegeneratePair.
NBein nbein_spectral(const Frame& frame, std::size_t n, std::size_t m);
QgtResult qgt(const Frame& frame, std::size_t n, QgtMethod method = QgtMethod::Projector);
TwoStateResult two_state(const Frame& frame, std::size_t n, std::size_t m);
ComplexMatrix torsion_hamiltonian(const Frame& frame, std::size_t n, std::size_t m);

ThetaEta theta_eta_split(const NBein& e);

// ---- stencil routes: states taken from one smooth gauge ----

NBein nbein_fd(const StateField& field, std::span<const double> lambda, std::size_t n, std::size_t m,
               double fd_rel = 1e-5);
RealVector berry_connection_fd(const StateField& field, std::span<const double> lambda, std::size_t n,
                               double fd_rel = 1e-5);
// Γ = A_n − A_m from the field connection; R by central differences of Γ.
ConnectionPair gamma_connection(const StateField& field, std::span<const double> lambda, std::size_t n,
                                std::size_t m, double fd_rel = 1e-5);
RealMatrix r_curvature(const StateField& field, std::span<const double> lambda, std::size_t n, std::size_t m,
                       double fd_rel = 1e-5);
ComplexMatrix torsion(const StateField& field, std::span<const double> lambda, std::size_t n, std::size_t m,
                      TorsionRoute route, double fd_rel = 1e-5);

struct OverlapCheck {
    Complex exact;
    Complex predicted;
    double residual{0.0};
};
OverlapCheck first_order_overlap_check(const StateField& field, std::span<const double> lambda,
                                       std::span<const double> delta, std::size_t n, std::size_t m);

struct BianchiResiduals {
    double dR{0.0};
    double DT{0.0};
};
// Nested central differences with equal steps; zero for fewer than three parameters.
BianchiResiduals bianchi_residuals(const StateField& field, std::span<const double> lambda, std::size_t n,
                                   std::size_t m, double fd_rel = 1e-3);

} // namespace qgeom
