// oracles.cpp: hand-transcribed closed forms for the two oscillator examples

#include "qgeom/oracles.hpp"

#include <cmath>
#include <limits>
#include <memory>

#include "qgeom/fock.hpp"
#include "qgeom/geometry.hpp"
#include "qgeom/invariants.hpp"
#include "qgeom/riemann.hpp"

namespace qgeom {

namespace {

using C = Complex;

ComplexMatrix scalar(double v) { return ComplexMatrix(1, 1, C{v}); }

ComplexMatrix column(const ComplexVector& v)
{
    ComplexMatrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
}

ComplexMatrix combine(double re_scale, const RealMatrix& re, C im_scale, const RealMatrix& im)
{
    ComplexMatrix out(re.rows(), re.cols());
    for (std::size_t i = 0; i < re.rows(); ++i)
        for (std::size_t j = 0; j < re.cols(); ++j) out(i, j) = re_scale * re(i, j) + im_scale * im(i, j);
    return out;
}

// √(k(k−1)…(k−r+1)), zero when any factor is ≤ 0.
double falling_root(double k, int r)
{
    double p = 1.0;
    for (int s = 0; s < r; ++s) {
        if (k - s <= 0) return 0.0;
        p *= k - s;
    }
    return std::sqrt(p);
}

void add_scalars(TensorSet& set)
{
    const auto* gn = find_quantity(set, "g_n");
    const auto* gm = find_quantity(set, "g_m");
    const auto* mm = find_quantity(set, "M");
    if (!gn || !gm || !mm) return;
    const RealMatrix a = real_part(gn->value), b = real_part(gm->value);
    const double scale = std::pow(max_abs(a), static_cast<double>(a.rows()));
    const double sb = std::pow(max_abs(b), static_cast<double>(b.rows()));
    if (!(std::abs(determinant(a)) > 1e-12 * scale) || !(std::abs(determinant(b)) > 1e-12 * sb)) return;
    for (const char* lab : {"M", "G", "T"}) {
        const auto& x = find_quantity(set, lab)->value;
        const double v = scalar_invariant(pair_tensor(x, x, InvariantKind::N), a, b).value;
        set.push_back({std::string("N_") + lab, scalar(v), true});
    }
}

void require_positive(double v, const char* what)
{
    if (!(v > 0) || !std::isfinite(v)) throw Error(ErrorKind::DomainViolation, std::string(what) + " must be positive");
}

// ---------------------------------------------------------------- example 1

struct Ex1 {
    double W, Z, hb;
};

ComplexVector ex1_nbein(const Ex1& p, std::size_t n_, std::size_t m_)
{
    const double n = static_cast<double>(n_);
    const long a = static_cast<long>(m_) - static_cast<long>(n_);
    const double s = std::pow(p.Z, 0.25);
    ComplexVector e(2, C{});
    switch (a) {
    case -1: e[0] = kI / s * std::sqrt(n / (2 * p.hb)); break;
    case 1: e[0] = -kI / s * std::sqrt((n + 1) / (2 * p.hb)); break;
    case -2: e[1] = -kI / (8 * p.Z) * falling_root(n, 2); break;
    case 2: e[1] = kI / (8 * p.Z) * falling_root(n + 2, 2); break;
    default: break;
    }
    return e;
}

RealMatrix ex1_metric(const Ex1& p, double n)
{
    return RealMatrix{{(n + 0.5) / (p.hb * std::sqrt(p.Z)), 0.0}, {0.0, (n * n + n + 1) / (32 * p.Z * p.Z)}};
}

ComplexMatrix ex1_g2(const Ex1& p, std::size_t n_, std::size_t m_)
{
    const double n = static_cast<double>(n_);
    const long a = static_cast<long>(m_) - static_cast<long>(n_);
    const RealMatrix zz{{0, 0}, {0, 1}}, ww{{1, 0}, {0, 0}}, wz{{0, 1}, {1, 0}};
    const double z54 = std::pow(p.Z, 1.25);
    const double r2h = 1.0 / (2 * p.hb);
    switch (a) {
    case -4: return to_complex(-falling_root(n, 4) / (64 * p.Z * p.Z) * zz);
    case -3: return to_complex(falling_root(n, 3) * std::sqrt(r2h) / (8 * z54) * wz);
    case -2: return to_complex(-falling_root(n, 2) / (2 * p.hb * std::sqrt(p.Z)) * ww);
    case -1: return to_complex(-n * std::sqrt(n * r2h) / (8 * z54) * wz);
    case 1: return to_complex(-(n + 1) * std::sqrt((n + 1) * r2h) / (8 * z54) * wz);
    case 2: return to_complex(-falling_root(n + 2, 2) / (2 * p.hb * std::sqrt(p.Z)) * ww);
    case 3: return to_complex(falling_root(n + 3, 3) * std::sqrt(r2h) / (8 * z54) * wz);
    case 4: return to_complex(-falling_root(n + 4, 4) / (64 * p.Z * p.Z) * zz);
    default: return ComplexMatrix(2, 2);
    }
}

ComplexMatrix ex1_torsion(const Ex1& p, std::size_t n_, std::size_t m_)
{
    const double n = static_cast<double>(n_);
    const long a = static_cast<long>(m_) - static_cast<long>(n_);
    const RealMatrix j{{0, -1}, {1, 0}};
    const double z54 = std::pow(p.Z, 1.25);
    if (a == -1) return combine(0.0, j, -kI / (4 * z54) * std::sqrt(n / (2 * p.hb)), j);
    if (a == 1) return combine(0.0, j, kI / (4 * z54) * std::sqrt((n + 1) / (2 * p.hb)), j);
    return ComplexMatrix(2, 2);
}

// ---------------------------------------------------------------- example 2

struct Ex2 {
    double W, Y, Z, hb, om;
};

ComplexVector ex2_nbein(const Ex2& p, std::size_t n_, std::size_t m_)
{
    const double n = static_cast<double>(n_);
    const long a = static_cast<long>(m_) - static_cast<long>(n_);
    const double W = p.W, Y = p.Y, Z = p.Z, om = p.om, hb = p.hb;
    const double d1[3] = {0, Z, -Y};
    const double i1[3] = {Z * om * om, 2 * W * Y * Z, -W * Y * Y};
    const double i2[3] = {0, 2 * Y * Z, Z - 2 * Y * Y};
    ComplexVector e(3, C{});
    auto set = [&](double re, const double* rv, C im, const double* iv) {
        for (int i = 0; i < 3; ++i) e[i] = re * rv[i] + im * iv[i];
    };
    switch (a) {
    case -1:
        set(-W * std::sqrt(n / (2 * hb * Z * std::pow(om, 5))), d1, kI * std::sqrt(n / (2 * hb * Z * std::pow(om, 7))),
            i1);
        break;
    case 1:
        set(-W * std::sqrt((n + 1) / (2 * hb * Z * std::pow(om, 5))), d1,
            -kI * std::sqrt((n + 1) / (2 * hb * Z * std::pow(om, 7))), i1);
        break;
    case -2: set(falling_root(n, 2) / (4 * Z * om), d1, -kI * falling_root(n, 2) / (8 * Z * om * om), i2); break;
    case 2: set(falling_root(n + 2, 2) / (4 * Z * om), d1, kI * falling_root(n + 2, 2) / (8 * Z * om * om), i2); break;
    default: break;
    }
    return e;
}

RealMatrix ex2_metric(const Ex2& p, double n)
{
    const double W = p.W, Y = p.Y, Z = p.Z, o2 = p.om * p.om;
    const RealMatrix a{{Z * o2 * o2, 2 * W * Y * Z * o2, -W * Y * Y * o2},
                       {2 * W * Y * Z * o2, W * W * Z * (3 * Y * Y + Z), -W * W * Y * (Y * Y + Z)},
                       {-W * Y * Y * o2, -W * W * Y * (Y * Y + Z), W * W * Y * Y}};
    const RealMatrix b{{0, 0, 0}, {0, 4 * Z, -2 * Y}, {0, -2 * Y, 1}};
    return (n + 0.5) / (p.hb * std::pow(p.om, 7)) * a + (n * n + n + 1) / (32 * o2 * o2) * b;
}

RealMatrix ex2_berry(const Ex2& p, double n)
{
    const double W = p.W, Y = p.Y, Z = p.Z, o2 = p.om * p.om;
    const RealMatrix a{{0, Z * o2, -Y * o2}, {-Z * o2, 0, -W * Y * Y}, {Y * o2, W * Y * Y, 0}};
    const RealMatrix b{{0, 0, 0}, {0, 0, -1}, {0, 1, 0}};
    return W / (p.hb * std::pow(p.om, 6)) * a + (n + 0.5) / (4 * std::pow(p.om, 3)) * b;
}

ComplexMatrix ex2_g2(const Ex2& p, std::size_t n_, std::size_t m_)
{
    const double n = static_cast<double>(n_);
    const long a = static_cast<long>(m_) - static_cast<long>(n_);
    const double W = p.W, Y = p.Y, Z = p.Z, om = p.om, hb = p.hb, o2 = om * om;
    const C sgn = a < 0 ? kI : -kI; // +i below n, −i above
    switch (std::abs(a)) {
    case 4: {
        const double c = (a < 0 ? falling_root(n, 4) : falling_root(n + 4, 4)) / (64 * Z * Z * o2 * o2);
        const double yz = 2 * Y * Z * (4 * Y * Y - 3 * Z);
        const RealMatrix re{{0, 0, 0}, {0, 4 * Z * Z * (Z - 2 * Y * Y), yz}, {0, yz, -8 * std::pow(Y, 4) + 8 * Y * Y * Z - Z * Z}};
        const double q = 2 * Z * (4 * Y * Y - Z);
        const RealMatrix im{{0, 0, 0}, {0, -8 * Y * Z * Z, q}, {0, q, 4 * Y * (Z - 2 * Y * Y)}};
        return combine(c, re, c * om * sgn, im);
    }
    case 3: {
        const double c = (a < 0 ? falling_root(n, 3) : falling_root(n + 3, 3)) / 8 *
                         std::sqrt(1.0 / (2 * hb * std::pow(Z, 3) * std::pow(om, 11)));
        const double r01 = 2 * Y * Z * Z * o2, r02 = Z * o2 * (Z - 2 * Y * Y), r12 = 2 * W * Y * Z * (3 * Z - 5 * Y * Y);
        const RealMatrix re{{0, r01, r02},
                            {r01, 4 * W * Z * Z * (3 * Y * Y - Z), r12},
                            {r02, r12, 2 * W * Y * Y * (4 * Y * Y - 3 * Z)}};
        const double i01 = 2 * Z * Z * o2, i02 = -2 * Y * Z * o2, i12 = -W * Z * (9 * Z - 10 * o2);
        const RealMatrix im{{0, i01, i02}, {i01, 12 * W * Y * Z * Z, i12}, {i02, i12, 2 * W * Y * (4 * Y * Y - Z)}};
        return combine(c, re, c * om * sgn, im);
    }
    case 2: {
        const double c = (a < 0 ? falling_root(n, 2) : falling_root(n + 2, 2)) / (2 * hb * Z * std::pow(om, 7));
        const double r01 = -2 * W * Y * Z * Z * o2, r02 = W * Y * Y * Z * o2, r12 = W * W * Y * Z * (3 * Y * Y - Z);
        const RealMatrix re{{-Z * Z * o2 * o2, r01, r02},
                            {r01, -W * W * Z * Z * (5 * Y * Y - Z), r12},
                            {r02, r12, W * W * Y * Y * (Z - 2 * Y * Y)}};
        const double i01 = -W * Z * Z * o2, i02 = W * Y * Z * o2, i12 = 3 * W * W * Y * Y * Z;
        const RealMatrix im{{0, i01, i02}, {i01, -4 * W * W * Y * Z * Z, i12}, {i02, i12, -2 * W * W * std::pow(Y, 3)}};
        return combine(c, re, c * om * sgn, im);
    }
    case 1: {
        const double k = a < 0 ? n : n + 1;
        const double c = k / 8 * std::sqrt(k / (2 * hb * Z * std::pow(om, 9)));
        const double r01 = -2 * Y * Z * Z * o2, r02 = Z * (2 * Y * Y - Z) * o2, r12 = 2 * W * Y * Z * (Y * Y + Z);
        const RealMatrix re{{0, r01, r02}, {r01, -4 * W * Z * Z * (Y * Y + Z), r12}, {r02, r12, -2 * W * Y * Y * Z}};
        const double i01 = -2 * Z * o2, i02 = 2 * Y * o2, i12 = W * (2 * Y * Y + Z);
        const RealMatrix im{{0, i01, i02}, {i01, -4 * W * Y * Z, i12}, {i02, i12, -2 * W * Y}};
        return combine(c / (Z * om), re, c * sgn, im);
    }
    default: return ComplexMatrix(3, 3);
    }
}

ComplexMatrix ex2_torsion(const Ex2& p, std::size_t n_, std::size_t m_)
{
    const double n = static_cast<double>(n_);
    const long a = static_cast<long>(m_) - static_cast<long>(n_);
    if (std::abs(a) != 1) return ComplexMatrix(3, 3);
    const double W = p.W, Y = p.Y, Z = p.Z, om = p.om, o2 = om * om;
    const double k = a < 0 ? n : n + 1;
    const double c = std::sqrt(k / (32 * p.hb * Z * std::pow(om, 9)));
    const double w = W * (Z + 2 * Y * Y);
    const RealMatrix re{{0, -2 * Z * o2, 2 * Y * o2}, {2 * Z * o2, 0, w}, {-2 * Y * o2, -w, 0}};
    const double t = Z - 2 * Y * Y;
    const RealMatrix im{{0, 2 * Y * Z, t}, {-2 * Y * Z, 0, 2 * W * Y}, {-t, -2 * W * Y, 0}};
    return combine(c, re, c * om * (a < 0 ? kI : -kI), im);
}

RealVector ex2_connection(const Ex2& p, double n)
{
    const double k = (n + 0.5) / (2 * p.Z * p.om) + p.W * p.W / (2 * p.hb * std::pow(p.om, 4));
    return {0.0, k * p.Z, -k * p.Y};
}

void add_pair(TensorSet& s, const ComplexVector& e, const ComplexMatrix& g, const ComplexMatrix& t)
{
    s.push_back({"e", column(e), false});
    s.push_back({"G", g, false});
    s.push_back({"T", t, false});
    s.push_back({"M", g + C(0, -0.5) * t, false});
}

} // namespace

const Quantity* find_quantity(const TensorSet& set, std::string_view label) noexcept
{
    for (const auto& q : set)
        if (q.label == label) return &q;
    return nullptr;
}

TensorSet oracle_example1(std::size_t n, std::optional<std::size_t> m, std::span<const double> lambda, double hbar)
{
    if (lambda.size() != 2) throw Error(ErrorKind::InvalidArgument, "example 1 takes (W, Z)");
    require_positive(lambda[1], "Z");
    require_positive(hbar, "hbar");
    const Ex1 p{lambda[0], lambda[1], hbar};
    const double nd = static_cast<double>(n);
    TensorSet s;
    auto energy = [&](double k) { return hbar * std::sqrt(p.Z) * (k + 0.5) - p.W * p.W / 2; };
    s.push_back({"E_n", scalar(energy(nd)), true});
    const RealMatrix g = ex1_metric(p, nd);
    s.push_back({"g_n", to_complex(g), true});
    s.push_back({"F_n", ComplexMatrix(2, 2), true});
    s.push_back({"det_g_n", scalar((2 * nd + 1) * (nd * nd + nd + 1) / (64 * hbar * std::pow(p.Z, 2.5))), true});
    s.push_back({"scalar_curvature", scalar(-4.0 / (nd * nd + nd + 1)), true});
    s.push_back({"A_n", ComplexMatrix(2, 1), false});
    if (m) {
        if (*m == n) throw Error(ErrorKind::InvalidArgument, "pair quantities need n != m");
        const double md = static_cast<double>(*m);
        s.push_back({"E_m", scalar(energy(md)), true});
        s.push_back({"g_m", to_complex(ex1_metric(p, md)), true});
        add_pair(s, ex1_nbein(p, n, *m), ex1_g2(p, n, *m), ex1_torsion(p, n, *m));
        s.push_back({"Gamma", ComplexMatrix(2, 1), false});
        s.push_back({"R", ComplexMatrix(2, 2), true});
        add_scalars(s);
    }
    return s;
}

TensorSet oracle_example2(std::size_t n, std::optional<std::size_t> m, std::span<const double> lambda, double hbar)
{
    if (lambda.size() != 3) throw Error(ErrorKind::InvalidArgument, "example 2 takes (W, Y, Z)");
    require_positive(lambda[2], "Z");
    require_positive(lambda[2] - lambda[1] * lambda[1], "Z - Y^2");
    require_positive(hbar, "hbar");
    const Ex2 p{lambda[0], lambda[1], lambda[2], hbar, std::sqrt(lambda[2] - lambda[1] * lambda[1])};
    const double nd = static_cast<double>(n);
    const double o2 = p.om * p.om;
    TensorSet s;
    auto energy = [&](double k) { return hbar * p.om * (k + 0.5) - p.W * p.W * p.Z / (2 * o2); };
    s.push_back({"E_n", scalar(energy(nd)), true});
    s.push_back({"g_n", to_complex(ex2_metric(p, nd)), true});
    s.push_back({"F_n", to_complex(ex2_berry(p, nd)), true});
    const double k1 = nd + 0.5, k2 = nd * nd + nd + 1;
    s.push_back({"det_g_n",
                 scalar(k1 * k2 * p.Z * (k2 * hbar * std::pow(p.om, 3) + 8 * k1 * p.W * p.W * p.Z) /
                        (256 * hbar * hbar * std::pow(p.om, 12))),
                 true});
    const RealVector a = ex2_connection(p, nd);
    s.push_back({"A_n", column(ComplexVector(a.begin(), a.end())), false});
    if (m) {
        if (*m == n) throw Error(ErrorKind::InvalidArgument, "pair quantities need n != m");
        const double md = static_cast<double>(*m);
        s.push_back({"E_m", scalar(energy(md)), true});
        s.push_back({"g_m", to_complex(ex2_metric(p, md)), true});
        add_pair(s, ex2_nbein(p, n, *m), ex2_g2(p, n, *m), ex2_torsion(p, n, *m));
        const double k = (nd - md) / (2 * p.Z * p.om);
        s.push_back({"Gamma", column({0.0, k * p.Z, -k * p.Y}), false});
        const double r = (nd - md) / (4 * std::pow(p.om, 3));
        s.push_back({"R", to_complex(RealMatrix{{0, 0, 0}, {0, 0, -r}, {0, r, 0}}), true});
        add_scalars(s);
    }
    return s;
}

TensorSet oracle_for(std::string_view family, std::size_t n, std::optional<std::size_t> m,
                     std::span<const double> lambda, double hbar)
{
    if (family == "example1") return oracle_example1(n, m, lambda, hbar);
    if (family == "example2") return oracle_example2(n, m, lambda, hbar);
    throw Error(ErrorKind::InvalidArgument, "no oracle for family '" + std::string(family) + "'");
}

const char* to_string(CompareMode m) noexcept
{
    switch (m) {
    case CompareMode::Direct: return "direct";
    case CompareMode::Modulus: return "modulus";
    case CompareMode::InvariantOnly: return "invariant-only";
    }
    return "?";
}

CompareMode parse_compare_mode(std::string_view s)
{
    for (auto m : {CompareMode::Direct, CompareMode::Modulus, CompareMode::InvariantOnly})
        if (s == to_string(m)) return m;
    throw Error(ErrorKind::InvalidArgument, "unknown comparison mode '" + std::string(s) + "'");
}

double compare_error(const ComplexMatrix& numeric, const ComplexMatrix& oracle, bool modulus)
{
    if (numeric.rows() != oracle.rows() || numeric.cols() != oracle.cols())
        throw Error(ErrorKind::ShapeMismatch, "numeric and oracle shapes differ");
    double worst = 0.0;
    auto a = numeric.data();
    auto b = oracle.data();
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double diff = modulus ? std::abs(std::abs(a[k]) - std::abs(b[k])) : std::abs(a[k] - b[k]);
        const double ref = std::abs(b[k]);
        const double err = ref > 1e-12 ? diff / ref : diff;
        if (!std::isfinite(err)) return std::numeric_limits<double>::infinity();
        worst = std::max(worst, err);
    }
    return worst;
}

std::vector<OracleReport> compare(const TensorSet& numeric, const TensorSet& oracle, CompareMode mode, double tol)
{
    std::vector<OracleReport> out;
    for (const auto& q : numeric) {
        if (mode == CompareMode::InvariantOnly && !q.invariant) continue;
        const auto* o = find_quantity(oracle, q.label);
        if (!o) throw Error(ErrorKind::ShapeMismatch, "no oracle value for '" + q.label + "'");
        const bool modulus = mode == CompareMode::Modulus && !q.invariant;
        OracleReport r{q.label, mode, q.value, o->value, compare_error(q.value, o->value, modulus), tol, false};
        r.pass = r.max_error <= tol;
        out.push_back(std::move(r));
    }
    return out;
}

PhaseRule example2_coordinate_gauge(std::size_t trunc_dim, double hbar)
{
    const auto q = quadratures(trunc_dim, hbar).first.matrix;
    auto es = std::make_shared<const HermitianEigenSystem>(hermitian_eigendecompose(q));
    return [es, hbar](std::span<const double> lam, ComplexMatrix& states) {
        const double y = lam[1], z = lam[2];
        const auto& s = es->eigenvectors;
        const ComplexMatrix sh = adjoint(s);
        for (std::size_t c = 0; c < states.cols(); ++c) {
            const ComplexVector v = states.column(c);
            ComplexVector w = sh * v;
            for (std::size_t k = 0; k < w.size(); ++k) {
                const double x = es->eigenvalues[k];
                w[k] *= std::exp(kI * (y * x * x / (2 * z * hbar)));
            }
            const ComplexVector u = s * w;
            // u = e^{iφ}·real, so Σu² carries e^{2iφ}.
            C sq{};
            for (const auto& x : u) sq += x * x;
            C ph = std::exp(-kI * (0.5 * std::arg(sq)));
            // keep the sign continuous with the aligned input state
            if ((ph * inner(v, v)).real() < 0) ph = -ph;
            for (std::size_t r = 0; r < v.size(); ++r) states(r, c) = ph * v[r];
        }
    };
}

TensorSet numeric_set(const FamilySpec& spec, std::span<const double> lambda, std::size_t n,
                      std::optional<std::size_t> m, const PipelineOptions& opt)
{
    const std::size_t levels = opt.levels ? opt.levels : default_levels(n, m.value_or(n));
    const std::size_t d = opt.trunc_dim ? opt.trunc_dim : default_trunc_dim(levels);
    auto assembler = std::make_shared<Assembler>(spec, d);
    FieldOptions fo;
    fo.levels = levels;
    if (opt.coordinate_gauge) {
        fo.phase_rule = example2_coordinate_gauge(d, spec.hbar);
        fo.rule_tag = "coordinate";
    }
    StateField field(assembler, std::vector<double>(lambda.begin(), lambda.end()), fo);
    const Frame& f = field.center_frame();
    TensorSet s;
    s.push_back({"E_n", scalar(f.bundle.energies[n]), true});
    const auto q = qgt(f, n);
    s.push_back({"g_n", to_complex(q.g), true});
    s.push_back({"F_n", to_complex(q.F), true});
    s.push_back({"det_g_n", scalar(determinant(q.g)), true});
    if (opt.curvature)
        s.push_back({"scalar_curvature",
                     scalar(scalar_curvature(spec, lambda, n, opt.riemann_rel, d, opt.jobs).scalar), true});
    if (opt.coordinate_gauge) {
        const RealVector a = field.connection(lambda, n, opt.fd_rel);
        s.push_back({"A_n", column(ComplexVector(a.begin(), a.end())), false});
    }
    if (m) {
        s.push_back({"E_m", scalar(f.bundle.energies[*m]), true});
        s.push_back({"g_m", to_complex(qgt(f, *m).g), true});
        const auto inv = invariant_report(f, n, *m);
        add_pair(s, nbein_spectral(f, n, *m).components, inv.two_state.G, inv.two_state.T);
        // M straight from the sum, not rebuilt from its parts
        s.back().value = inv.two_state.M;
        const auto c = gamma_connection(field, lambda, n, *m, opt.fd_rel);
        if (opt.coordinate_gauge) s.push_back({"Gamma", column(ComplexVector(c.Gamma.begin(), c.Gamma.end())), false});
        s.push_back({"R", to_complex(c.R), true});
        for (auto lab : {TensorLabel::M, TensorLabel::G, TensorLabel::T})
            s.push_back({std::string("N_") + to_string(lab), scalar(inv.scalar(lab, lab).value), true});
    }
    return s;
}

} // namespace qgeom
