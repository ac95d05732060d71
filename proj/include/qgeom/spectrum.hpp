// spectrum.hpp: gauge-fixed eigenbundles, state matching, truncation control,
// and a gauge-consistent state field for finite-difference stencils
#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "qgeom/hamdsl.hpp"
#include "qgeom/linalg.hpp"

namespace qgeom {

struct EigenBundle {
    std::vector<double> lambda;
    RealVector energies;  // retained levels; ascending unless reordered by matching
    ComplexMatrix states; // trunc_dim × levels, orthonormal columns
    std::size_t trunc_dim{0};
    std::string gauge;
    double spectral_range{0.0}; // of the full truncated spectrum
    double gap_threshold{0.0};  // absolute; gap_tol × spectral_range

    std::size_t levels() const noexcept { return energies.size(); }
    ComplexVector state(std::size_t n) const { return states.column(n); }
};

class GaugePolicy {
public:
    enum class Kind { LargestRealPositive, ReferenceOverlap };

    static GaugePolicy largest_real_positive() { return GaugePolicy(Kind::LargestRealPositive, nullptr); }
    static GaugePolicy reference_overlap(std::shared_ptr<const EigenBundle> reference)
    {
        return GaugePolicy(Kind::ReferenceOverlap, std::move(reference));
    }

    Kind kind() const noexcept { return kind_; }
    const EigenBundle* reference() const noexcept { return reference_.get(); }
    std::string tag() const;

private:
    GaugePolicy(Kind k, std::shared_ptr<const EigenBundle> r) : kind_(k), reference_(std::move(r)) {}
    Kind kind_;
    std::shared_ptr<const EigenBundle> reference_;
};

inline constexpr double kDefaultGapTol = 1e-8;
inline constexpr std::size_t kTruncationCap = 2048;

std::size_t default_levels(std::size_t n, std::size_t m) noexcept;
std::size_t default_trunc_dim(std::size_t levels) noexcept;

// Each column scaled so its largest-modulus entry (lowest index on ties) is real positive.
void fix_largest_real_positive(ComplexMatrix& states);

// Permutation perm with perm[n] = column of b continuing a's level n.
// Throws AmbiguousMatch when a matched overlap modulus is ≤ 0.5.
std::vector<std::size_t> match_states(const EigenBundle& a, const EigenBundle& b);

// Throws DegenerateSpectrum, DomainViolation, DimensionTooSmall (levels > trunc_dim − 4),
// AmbiguousMatch (reference overlap below 1e-6).
EigenBundle solve_at(const Assembler& assembler, std::span<const double> lambda, std::size_t levels,
                     const GaugePolicy& gauge, double gap_tol = kDefaultGapTol);
EigenBundle solve_at(const FamilySpec& spec, std::span<const double> lambda, std::size_t trunc_dim,
                     std::size_t levels, const GaugePolicy& gauge, double gap_tol = kDefaultGapTol);

// State n multiplied by exp(i α_n(λ)). Requires one phase per retained level.
EigenBundle apply_gauge(const EigenBundle& bundle, const std::vector<CoeffExpr>& phases, double hbar);

struct TruncationResult {
    std::size_t trunc_dim{0};
    double delta{0.0}; // max |g(D) − g(2D)| over retained levels
};

// Doubles D from d0 (default_trunc_dim when 0) until the metric of every retained
// level changes by at most tol. Throws NoConvergence at the cap or for tol ≤ 0.
TruncationResult converge_truncation(const FamilySpec& spec, std::span<const double> lambda, std::size_t levels,
                                     double tol, std::size_t d0 = 0, std::size_t cap = kTruncationCap);

// Solved bundle together with the operators it came from.
struct Frame {
    EigenBundle bundle;
    ComplexMatrix h;
    std::vector<ComplexMatrix> dh;
};

// x_i = P|∂ᵢn⟩ with P = 1 − |n⟩⟨n|, from (E_n − H + |n⟩⟨n|) x_i = P ∂ᵢH|n⟩ on the full truncated space.
std::vector<ComplexVector> projected_derivatives(const Frame& frame, std::size_t n);

// Replaces the reference-overlap alignment with a user-defined smooth gauge.
using PhaseRule = std::function<void(std::span<const double> lambda, ComplexMatrix& states)>;

struct FieldOptions {
    std::size_t levels{0};
    double gap_tol{kDefaultGapTol};
    std::vector<CoeffExpr> phases; // injected α_n(λ); empty for none
    PhaseRule phase_rule;
    std::string rule_tag{"custom"};
};

// States in one smooth local gauge around a center point: every bundle is matched
// and phase-aligned to the center (or fixed by the phase rule), then the injected
// phases are applied. Frames are memoized per λ; safe for concurrent use.
class StateField {
public:
    StateField(std::shared_ptr<const Assembler> assembler, std::vector<double> center, FieldOptions options);

    const Assembler& assembler() const noexcept { return *assembler_; }
    const FamilySpec& spec() const noexcept { return assembler_->spec(); }
    const std::vector<double>& center() const noexcept { return center_; }
    std::size_t levels() const noexcept { return options_.levels; }
    std::size_t parameter_count() const noexcept { return center_.size(); }
    const FieldOptions& options() const noexcept { return options_; }
    std::string gauge_tag() const;

    std::shared_ptr<const Frame> frame_at(std::span<const double> lambda) const;
    const Frame& center_frame() const { return *center_frame_; }

    // ∂ᵢα_n(λ) of the injected phases (zero without phases).
    RealVector phase_gradient(std::span<const double> lambda, std::size_t n) const;

    // Berry connection A^{(n)}(λ) in the field gauge. Closed form from projected
    // derivatives in the reference gauge; central differences with `fd_step`
    // (relative) under a phase rule.
    RealVector connection(std::span<const double> lambda, std::size_t n, double fd_step = 1e-5) const;

private:
    std::shared_ptr<const Frame> build(std::span<const double> lambda) const;

    std::shared_ptr<const Assembler> assembler_;
    std::vector<double> center_;
    FieldOptions options_;
    std::shared_ptr<const EigenBundle> reference_;
    std::shared_ptr<const Frame> center_frame_;
    std::vector<std::vector<CoeffExpr>> phase_derivatives_; // [n][i]
    mutable std::mutex mutex_;
    mutable std::map<std::vector<double>, std::shared_ptr<const Frame>> cache_;
};

// Step for parameter i: rel × max(1, |λᵢ|).
double fd_step(double rel, double lambda_i) noexcept;

} // namespace qgeom
