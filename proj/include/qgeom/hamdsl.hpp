// hamdsl.hpp: Hamiltonian-family DSL: coefficient ASTs, parser, symbolic
// differentiation and assembly of H(λ), ∂ᵢH(λ) on a truncated Fock basis
#pragma once

#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qgeom/fock.hpp"
#include "qgeom/linalg.hpp"

namespace qgeom {

struct CoeffNode;
using CoeffExpr = std::shared_ptr<const CoeffNode>;

struct CoeffNode {
    enum class Kind { Number, Param, Hbar, Neg, Add, Sub, Mul, Div, Pow, Sqrt };

    Kind kind{Kind::Number};
    double value{0.0};    // Number
    std::string name;     // Param
    std::size_t index{0}; // Param: position in the parameter list
    int exponent{0};      // Pow
    CoeffExpr lhs;        // unary operand or left operand
    CoeffExpr rhs;
};

namespace expr {

CoeffExpr number(double v);
CoeffExpr param(std::string name, std::size_t index);
CoeffExpr hbar();
// Smart constructors: constant folding plus zero/one elimination.
CoeffExpr neg(CoeffExpr a);
CoeffExpr add(CoeffExpr a, CoeffExpr b);
CoeffExpr sub(CoeffExpr a, CoeffExpr b);
CoeffExpr mul(CoeffExpr a, CoeffExpr b);
CoeffExpr div(CoeffExpr a, CoeffExpr b);
CoeffExpr pow(CoeffExpr a, int k);
CoeffExpr sqrt(CoeffExpr a);

bool is_number(const CoeffExpr& e, double v);

} // namespace expr

double evaluate(const CoeffNode& e, std::span<const double> lambda, double hbar);
inline double evaluate(const CoeffExpr& e, std::span<const double> lambda, double hbar)
{
    return evaluate(*e, lambda, hbar);
}

CoeffExpr differentiate(const CoeffExpr& e, std::size_t param_index);
// Throws UnknownSymbol when `param` is not in `parameter_names`.
CoeffExpr differentiate(const CoeffExpr& e, std::string_view param, const std::vector<std::string>& parameter_names);

std::string unparse(const CoeffExpr& e);

struct Term {
    CoeffExpr coeff;
    Monomial monomial; // empty means the identity
};

struct FamilySpec {
    std::vector<std::string> parameter_names;
    double hbar{1.0};
    std::vector<Term> terms;
    std::vector<CoeffExpr> domain_constraints; // each required strictly positive

    std::size_t parameter_count() const noexcept { return parameter_names.size(); }
    int max_degree() const;
    std::size_t parameter_index(std::string_view name) const; // UnknownSymbol
};

// Throws SyntaxError, UnknownSymbol, SymArityError; InvalidArgument for bad names or hbar.
FamilySpec parse_family(std::string_view text, const std::vector<std::string>& parameter_names, double hbar = 1.0,
                        const std::vector<std::string>& domain_constraints = {});

// Parses a bare coefficient expression (domain constraints, gauge phases).
CoeffExpr parse_coeff(std::string_view text, const std::vector<std::string>& parameter_names);

// Text that parse_family maps back to an equivalent spec.
std::string unparse_family(const FamilySpec& spec);

// Names accepted by builtin_family: "example1", "example2".
bool is_builtin_family(std::string_view name);
FamilySpec builtin_family(std::string_view name, double hbar = 1.0);

// Throws DomainViolation naming the failed constraint.
void check_domain(const FamilySpec& spec, std::span<const double> lambda);

struct Assembly {
    ComplexMatrix h;
    std::vector<ComplexMatrix> dh; // one per parameter
};

// Caches monomial matrices and differentiated coefficients for one truncation.
class Assembler {
public:
    Assembler(FamilySpec spec, std::size_t trunc_dim);

    const FamilySpec& spec() const noexcept { return spec_; }
    std::size_t trunc_dim() const noexcept { return trunc_dim_; }
    std::size_t parameter_count() const noexcept { return spec_.parameter_count(); }

    ComplexMatrix hamiltonian(std::span<const double> lambda) const;
    std::vector<ComplexMatrix> derivatives(std::span<const double> lambda) const;
    Assembly assemble(std::span<const double> lambda) const;

private:
    ComplexMatrix combine(const std::vector<CoeffExpr>& coeffs, std::span<const double> lambda,
                          const char* what) const;
    void require_point(std::span<const double> lambda) const;

    FamilySpec spec_;
    std::size_t trunc_dim_;
    std::vector<ComplexMatrix> monomials_;
    std::vector<CoeffExpr> coeffs_;
    std::vector<std::vector<CoeffExpr>> dcoeffs_; // [param][term]
};

Assembly assemble(const FamilySpec& spec, std::span<const double> lambda, std::size_t trunc_dim);

} // namespace qgeom
