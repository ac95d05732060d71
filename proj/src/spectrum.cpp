// spectrum.cpp: eigenbundles, gauge fixing, matching, truncation doubling, state fields

#include "qgeom/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qgeom {

std::string GaugePolicy::tag() const
{
    return kind_ == Kind::LargestRealPositive ? "largest-real-positive" : "reference-overlap";
}

std::size_t default_levels(std::size_t n, std::size_t m) noexcept { return std::max(n, m) + 6; }
std::size_t default_trunc_dim(std::size_t levels) noexcept { return 4 * levels + 40; }

double fd_step(double rel, double lambda_i) noexcept { return rel * std::max(1.0, std::abs(lambda_i)); }

void fix_largest_real_positive(ComplexMatrix& states)
{
    for (std::size_t c = 0; c < states.cols(); ++c) {
        double best = 0.0;
        for (std::size_t r = 0; r < states.rows(); ++r) best = std::max(best, std::abs(states(r, c)));
        if (best == 0.0) continue;
        std::size_t pick = 0;
        for (std::size_t r = 0; r < states.rows(); ++r) {
            if (std::abs(states(r, c)) >= best * (1.0 - 1e-10)) {
                pick = r;
                break;
            }
        }
        const Complex z = states(pick, c);
        const Complex phase = std::conj(z) / std::abs(z);
        for (std::size_t r = 0; r < states.rows(); ++r) states(r, c) *= phase;
        states(pick, c) = std::abs(z);
    }
}

std::vector<std::size_t> match_states(const EigenBundle& a, const EigenBundle& b)
{
    if (a.trunc_dim != b.trunc_dim || a.levels() != b.levels()) {
        throw Error(ErrorKind::ShapeMismatch, "match_states: bundles differ in truncation or retained levels");
    }
    const std::size_t L = a.levels();
    struct Cand {
        double overlap;
        std::size_t i, j;
    };
    std::vector<Cand> cands;
    cands.reserve(L * L);
    for (std::size_t i = 0; i < L; ++i) {
        for (std::size_t j = 0; j < L; ++j) {
            Complex acc{};
            for (std::size_t r = 0; r < a.trunc_dim; ++r) acc += std::conj(a.states(r, i)) * b.states(r, j);
            cands.push_back({std::abs(acc), i, j});
        }
    }
    std::stable_sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) { return x.overlap > y.overlap; });
    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> perm(L, unset);
    std::vector<bool> used(L, false);
    for (const auto& c : cands) {
        if (perm[c.i] != unset || used[c.j]) continue;
        if (c.overlap <= 0.5) {
            throw Error(ErrorKind::AmbiguousMatch, "level " + std::to_string(c.i) + " best overlap " +
                                                       std::to_string(c.overlap) + " is not above 0.5");
        }
        perm[c.i] = c.j;
        used[c.j] = true;
    }
    return perm;
}

namespace {

EigenBundle bundle_from(const ComplexMatrix& h, std::span<const double> lambda, std::size_t levels, double gap_tol)
{
    const std::size_t d = h.rows();
    if (levels == 0) throw Error(ErrorKind::InvalidArgument, "at least one level must be retained");
    if (d < 4 || levels > d - 4) {
        throw Error(ErrorKind::DimensionTooSmall, "retained levels " + std::to_string(levels) + " exceed trunc_dim − 4 = " +
                                                      std::to_string(d < 4 ? 0 : d - 4));
    }
    auto es = hermitian_eigendecompose(h);
    EigenBundle b;
    b.lambda.assign(lambda.begin(), lambda.end());
    b.trunc_dim = d;
    b.spectral_range = es.eigenvalues.back() - es.eigenvalues.front();
    b.gap_threshold = gap_tol * b.spectral_range;
    if (!(b.spectral_range > 0.0)) throw Error(ErrorKind::DegenerateSpectrum, "spectrum is fully degenerate");
    for (std::size_t k = 0; k < levels && k + 1 < d; ++k) {
        const double gap = es.eigenvalues[k + 1] - es.eigenvalues[k];
        if (!(gap > b.gap_threshold)) {
            throw Error(ErrorKind::DegenerateSpectrum, "levels " + std::to_string(k) + " and " + std::to_string(k + 1) +
                                                           " are degenerate (gap " + std::to_string(gap) + ")");
        }
    }
    b.energies.assign(es.eigenvalues.begin(), es.eigenvalues.begin() + static_cast<std::ptrdiff_t>(levels));
    b.states = ComplexMatrix(d, levels);
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < levels; ++c) b.states(r, c) = es.eigenvectors(r, c);
    return b;
}

void align_to_reference(EigenBundle& b, const EigenBundle& ref)
{
    auto perm = match_states(ref, b);
    bool identity = true;
    for (std::size_t k = 0; k < perm.size(); ++k) identity = identity && perm[k] == k;
    if (!identity) {
        EigenBundle p = b;
        for (std::size_t k = 0; k < perm.size(); ++k) {
            p.energies[k] = b.energies[perm[k]];
            for (std::size_t r = 0; r < b.trunc_dim; ++r) p.states(r, k) = b.states(r, perm[k]);
        }
        b = std::move(p);
    }
    for (std::size_t c = 0; c < b.levels(); ++c) {
        Complex ov{};
        for (std::size_t r = 0; r < b.trunc_dim; ++r) ov += std::conj(ref.states(r, c)) * b.states(r, c);
        if (std::abs(ov) < 1e-6) {
            throw Error(ErrorKind::AmbiguousMatch, "reference overlap vanishes for level " + std::to_string(c));
        }
        const Complex phase = std::conj(ov) / std::abs(ov);
        for (std::size_t r = 0; r < b.trunc_dim; ++r) b.states(r, c) *= phase;
    }
}

void apply_policy(EigenBundle& b, const GaugePolicy& gauge)
{
    fix_largest_real_positive(b.states);
    if (gauge.kind() == GaugePolicy::Kind::ReferenceOverlap) {
        if (!gauge.reference()) throw Error(ErrorKind::InvalidArgument, "reference-overlap gauge without a reference");
        align_to_reference(b, *gauge.reference());
    }
    b.gauge = gauge.tag();
}

} // namespace

EigenBundle solve_at(const Assembler& assembler, std::span<const double> lambda, std::size_t levels,
                     const GaugePolicy& gauge, double gap_tol)
{
    EigenBundle b = bundle_from(assembler.hamiltonian(lambda), lambda, levels, gap_tol);
    apply_policy(b, gauge);
    return b;
}

EigenBundle solve_at(const FamilySpec& spec, std::span<const double> lambda, std::size_t trunc_dim, std::size_t levels,
                     const GaugePolicy& gauge, double gap_tol)
{
    return solve_at(Assembler(spec, trunc_dim), lambda, levels, gauge, gap_tol);
}

EigenBundle apply_gauge(const EigenBundle& bundle, const std::vector<CoeffExpr>& phases, double hbar)
{
    if (phases.size() != bundle.levels()) {
        throw Error(ErrorKind::ShapeMismatch, "apply_gauge: " + std::to_string(phases.size()) + " phases for " +
                                                  std::to_string(bundle.levels()) + " levels");
    }
    EigenBundle out = bundle;
    for (std::size_t c = 0; c < out.levels(); ++c) {
        const double a = evaluate(phases[c], bundle.lambda, hbar);
        if (!std::isfinite(a)) throw Error(ErrorKind::DomainViolation, "gauge phase is not finite");
        if (a == 0.0) continue;
        const Complex f = std::polar(1.0, a);
        for (std::size_t r = 0; r < out.trunc_dim; ++r) out.states(r, c) *= f;
    }
    out.gauge += "+phases";
    return out;
}

std::vector<ComplexVector> projected_derivatives(const Frame& frame, std::size_t n)
{
    const auto& b = frame.bundle;
    if (n >= b.levels()) throw Error(ErrorKind::InvalidArgument, "level " + std::to_string(n) + " is not retained");
    const std::size_t d = b.trunc_dim;
    const std::size_t np = frame.dh.size();
    const ComplexVector psi = b.state(n);
    ComplexMatrix k(d, d);
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) k(r, c) = -frame.h(r, c) + psi[r] * std::conj(psi[c]);
    for (std::size_t r = 0; r < d; ++r) k(r, r) += b.energies[n];
    ComplexMatrix rhs(d, np);
    for (std::size_t i = 0; i < np; ++i) {
        ComplexVector w = frame.dh[i] * psi;
        const Complex proj = inner(psi, w);
        for (std::size_t r = 0; r < d; ++r) rhs(r, i) = w[r] - proj * psi[r];
    }
    ComplexMatrix x = lu_solve(std::move(k), std::move(rhs));
    std::vector<ComplexVector> out(np);
    for (std::size_t i = 0; i < np; ++i) out[i] = x.column(i);
    return out;
}

namespace {

RealMatrix projector_metric(const Frame& f, std::size_t n)
{
    auto x = projected_derivatives(f, n);
    const std::size_t np = x.size();
    RealMatrix g(np, np);
    for (std::size_t i = 0; i < np; ++i)
        for (std::size_t j = 0; j < np; ++j) g(i, j) = inner(x[i], x[j]).real();
    return g;
}

std::vector<RealMatrix> metrics_at(const FamilySpec& spec, std::span<const double> lambda, std::size_t d, std::size_t levels)
{
    Assembler a(spec, d);
    Frame f;
    auto ops = a.assemble(lambda);
    f.h = std::move(ops.h);
    f.dh = std::move(ops.dh);
    f.bundle = bundle_from(f.h, lambda, levels, kDefaultGapTol);
    std::vector<RealMatrix> out;
    for (std::size_t n = 0; n < levels; ++n) out.push_back(projector_metric(f, n));
    return out;
}

} // namespace

TruncationResult converge_truncation(const FamilySpec& spec, std::span<const double> lambda, std::size_t levels,
                                     double tol, std::size_t d0, std::size_t cap)
{
    if (!(tol > 0.0)) throw Error(ErrorKind::NoConvergence, "tolerance must be positive to be reachable");
    std::size_t d = d0 ? d0 : default_trunc_dim(levels);
    d = std::max<std::size_t>(d, static_cast<std::size_t>(spec.max_degree()) + 2);
    auto current = metrics_at(spec, lambda, d, levels);
    while (2 * d <= cap) {
        auto next = metrics_at(spec, lambda, 2 * d, levels);
        double delta = 0.0;
        for (std::size_t n = 0; n < levels; ++n) delta = std::max(delta, max_abs(current[n] - next[n]));
        if (delta <= tol) return {d, delta};
        d *= 2;
        current = std::move(next);
    }
    throw Error(ErrorKind::NoConvergence, "metric not converged to " + std::to_string(tol) + " below trunc_dim cap " +
                                              std::to_string(cap));
}

// ------------------------------- StateField ---------------------------------

StateField::StateField(std::shared_ptr<const Assembler> assembler, std::vector<double> center, FieldOptions options)
    : assembler_(std::move(assembler)), center_(std::move(center)), options_(std::move(options))
{
    if (!assembler_) throw Error(ErrorKind::InvalidArgument, "state field without an assembler");
    if (options_.levels == 0) throw Error(ErrorKind::InvalidArgument, "state field needs at least one retained level");
    if (!options_.phases.empty() && options_.phases.size() != options_.levels) {
        throw Error(ErrorKind::ShapeMismatch, "one gauge phase per retained level required");
    }
    check_domain(assembler_->spec(), center_);
    for (const auto& ph : options_.phases) {
        std::vector<CoeffExpr> grads;
        for (std::size_t i = 0; i < center_.size(); ++i) grads.push_back(differentiate(ph, i));
        phase_derivatives_.push_back(std::move(grads));
    }
    auto ref = std::make_shared<EigenBundle>(
        solve_at(*assembler_, center_, options_.levels, GaugePolicy::largest_real_positive(), options_.gap_tol));
    reference_ = ref;
    center_frame_ = frame_at(center_);
}

std::string StateField::gauge_tag() const
{
    std::string tag = options_.phase_rule ? options_.rule_tag : "reference-overlap";
    if (!options_.phases.empty()) tag += "+phases";
    return tag;
}

std::shared_ptr<const Frame> StateField::frame_at(std::span<const double> lambda) const
{
    std::vector<double> key(lambda.begin(), lambda.end());
    {
        std::lock_guard lock(mutex_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
    }
    auto f = build(lambda);
    std::lock_guard lock(mutex_);
    return cache_.emplace(std::move(key), std::move(f)).first->second;
}

std::shared_ptr<const Frame> StateField::build(std::span<const double> lambda) const
{
    auto f = std::make_shared<Frame>();
    auto ops = assembler_->assemble(lambda);
    f->h = std::move(ops.h);
    f->dh = std::move(ops.dh);
    f->bundle = bundle_from(f->h, lambda, options_.levels, options_.gap_tol);
    fix_largest_real_positive(f->bundle.states);
    align_to_reference(f->bundle, *reference_);
    if (options_.phase_rule) options_.phase_rule(lambda, f->bundle.states);
    f->bundle.gauge = options_.phase_rule ? options_.rule_tag : "reference-overlap";
    if (!options_.phases.empty()) f->bundle = apply_gauge(f->bundle, options_.phases, assembler_->spec().hbar);
    return f;
}

RealVector StateField::phase_gradient(std::span<const double> lambda, std::size_t n) const
{
    RealVector g(center_.size(), 0.0);
    if (phase_derivatives_.empty()) return g;
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = evaluate(phase_derivatives_[n][i], lambda, assembler_->spec().hbar);
    return g;
}

RealVector StateField::connection(std::span<const double> lambda, std::size_t n, double fd_rel) const
{
    if (n >= options_.levels) throw Error(ErrorKind::InvalidArgument, "level " + std::to_string(n) + " is not retained");
    const std::size_t np = center_.size();
    RealVector a(np, 0.0);
    auto frame = frame_at(lambda);
    const ComplexVector psi = frame->bundle.state(n);
    if (options_.phase_rule) {
        for (std::size_t i = 0; i < np; ++i) {
            std::vector<double> lp(lambda.begin(), lambda.end()), lm = lp;
            const double h = fd_step(fd_rel, lambda[i]);
            lp[i] += h;
            lm[i] -= h;
            const ComplexVector up = frame_at(lp)->bundle.state(n);
            const ComplexVector dn = frame_at(lm)->bundle.state(n);
            Complex acc{};
            for (std::size_t r = 0; r < psi.size(); ++r) acc += std::conj(psi[r]) * (up[r] - dn[r]);
            a[i] = (kI * acc).real() / (2 * h);
        }
        return a;
    }
    // Reference gauge: Im⟨r|n⟩ ≡ 0 fixes ⟨n|∂ᵢn⟩ through the projected derivative.
    const ComplexVector ref = reference_->state(n);
    const Complex rn = inner(ref, psi);
    auto x = projected_derivatives(*frame, n);
    const RealVector dalpha = phase_gradient(lambda, n);
    for (std::size_t i = 0; i < np; ++i) {
        a[i] = (inner(ref, x[i]) * std::conj(rn)).imag() / std::norm(rn) - dalpha[i];
    }
    return a;
}

} // namespace qgeom
