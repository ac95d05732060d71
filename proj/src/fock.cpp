// fock.cpp: ladder, quadrature and monomial matrices

#include "qgeom/fock.hpp"

#include <cmath>

namespace qgeom {

namespace {

void require_dim(std::size_t trunc_dim)
{
    if (trunc_dim < 2) {
        throw Error(ErrorKind::DimensionTooSmall, "trunc_dim must be at least 2, got " + std::to_string(trunc_dim));
    }
}

void validate(const OpFactor& f)
{
    if (f.power < 0) throw Error(ErrorKind::UnsupportedDescriptor, "negative operator power in " + to_string(f));
    if (f.kind == OpKind::Sym) {
        if (f.operands.size() != 2) {
            throw Error(ErrorKind::UnsupportedDescriptor,
                        "sym() takes exactly two factors, got " + std::to_string(f.operands.size()));
        }
        for (const auto& o : f.operands) validate(o);
    } else if (!f.operands.empty()) {
        throw Error(ErrorKind::UnsupportedDescriptor, "operands on a non-sym factor");
    }
}

ComplexMatrix power_of(const ComplexMatrix& base, int power)
{
    ComplexMatrix out = ComplexMatrix::identity(base.rows());
    for (int k = 0; k < power; ++k) out = out * base;
    return out;
}

ComplexMatrix factor_matrix(const OpFactor& f, const ComplexMatrix& q, const ComplexMatrix& p)
{
    ComplexMatrix base;
    switch (f.kind) {
    case OpKind::Q: base = q; break;
    case OpKind::P: base = p; break;
    case OpKind::Id: return ComplexMatrix::identity(q.rows());
    case OpKind::Sym: {
        ComplexMatrix a = factor_matrix(f.operands[0], q, p);
        ComplexMatrix b = factor_matrix(f.operands[1], q, p);
        base = 0.5 * (a * b + b * a);
        break;
    }
    }
    return f.power == 1 ? base : power_of(base, f.power);
}

} // namespace

std::string to_string(const OpFactor& f)
{
    std::string s;
    switch (f.kind) {
    case OpKind::Q: s = "q"; break;
    case OpKind::P: s = "p"; break;
    case OpKind::Id: s = "id"; break;
    case OpKind::Sym:
        s = "sym(";
        for (std::size_t k = 0; k < f.operands.size(); ++k) {
            if (k) s += "*";
            s += to_string(f.operands[k]);
        }
        s += ")";
        break;
    }
    if (f.power != 1) s += "^" + std::to_string(f.power);
    return s;
}

std::string to_string(const Monomial& m)
{
    if (m.empty()) return "id";
    std::string s;
    for (std::size_t k = 0; k < m.size(); ++k) {
        if (k) s += "*";
        s += to_string(m[k]);
    }
    return s;
}

int degree(const OpFactor& f)
{
    int d = 0;
    switch (f.kind) {
    case OpKind::Q:
    case OpKind::P: d = 1; break;
    case OpKind::Id: d = 0; break;
    case OpKind::Sym:
        for (const auto& o : f.operands) d += degree(o);
        break;
    }
    return d * f.power;
}

int degree(const Monomial& m)
{
    int d = 0;
    for (const auto& f : m) d += degree(f);
    return d;
}

std::pair<TruncatedOperator, TruncatedOperator> ladder(std::size_t trunc_dim)
{
    require_dim(trunc_dim);
    ComplexMatrix a(trunc_dim, trunc_dim);
    for (std::size_t k = 1; k < trunc_dim; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
    ComplexMatrix ad = adjoint(a);
    return {TruncatedOperator{std::move(a), trunc_dim, 1.0, "a"}, TruncatedOperator{std::move(ad), trunc_dim, 1.0, "a+"}};
}

std::pair<TruncatedOperator, TruncatedOperator> quadratures(std::size_t trunc_dim, double hbar)
{
    require_dim(trunc_dim);
    if (!(hbar > 0.0) || !std::isfinite(hbar)) throw Error(ErrorKind::InvalidArgument, "hbar must be positive");
    auto [a, ad] = ladder(trunc_dim);
    const double s = std::sqrt(hbar / 2.0);
    ComplexMatrix q = s * (a.matrix + ad.matrix);
    ComplexMatrix p = Complex(0.0, s) * (ad.matrix - a.matrix);
    return {TruncatedOperator{std::move(q), trunc_dim, hbar, "q"}, TruncatedOperator{std::move(p), trunc_dim, hbar, "p"}};
}

TruncatedOperator build_monomial(const Monomial& descriptor, std::size_t trunc_dim, double hbar)
{
    for (const auto& f : descriptor) validate(f);
    auto [q, p] = quadratures(trunc_dim, hbar);
    ComplexMatrix out = ComplexMatrix::identity(trunc_dim);
    for (const auto& f : descriptor) {
        if (f.kind == OpKind::Id) continue;
        out = out * factor_matrix(f, q.matrix, p.matrix);
    }
    return TruncatedOperator{std::move(out), trunc_dim, hbar, to_string(descriptor)};
}

} // namespace qgeom
