// fock.hpp: truncated single-mode bosonic operators on the number basis
#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qgeom/linalg.hpp"

namespace qgeom {

struct TruncatedOperator {
    ComplexMatrix matrix;
    std::size_t trunc_dim{0};
    double hbar{1.0};
    std::string label;
};

enum class OpKind { Q, P, Id, Sym };

// One factor of an operator monomial. Sym carries exactly two operands.
struct OpFactor {
    OpKind kind{OpKind::Id};
    int power{1};
    std::vector<OpFactor> operands;

    static OpFactor q(int power = 1) { return {OpKind::Q, power, {}}; }
    static OpFactor p(int power = 1) { return {OpKind::P, power, {}}; }
    static OpFactor id() { return {OpKind::Id, 1, {}}; }
    static OpFactor sym(OpFactor a, OpFactor b, int power = 1)
    {
        return {OpKind::Sym, power, {std::move(a), std::move(b)}};
    }

    bool operator==(const OpFactor&) const = default;
};

// Left-to-right product of factors.
using Monomial = std::vector<OpFactor>;

std::string to_string(const OpFactor& f);
std::string to_string(const Monomial& m);

// Total polynomial degree in q and p.
int degree(const OpFactor& f);
int degree(const Monomial& m);

// a and a†; throws DimensionTooSmall for trunc_dim < 2.
std::pair<TruncatedOperator, TruncatedOperator> ladder(std::size_t trunc_dim);

// q = √(ħ/2)(a + a†), p = i√(ħ/2)(a† − a).
std::pair<TruncatedOperator, TruncatedOperator> quadratures(std::size_t trunc_dim, double hbar);

// Throws UnsupportedDescriptor for malformed sym or negative powers.
TruncatedOperator build_monomial(const Monomial& descriptor, std::size_t trunc_dim, double hbar);

} // namespace qgeom
