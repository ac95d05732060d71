// hamdsl.cpp: lexer, recursive-descent parser, symbolic derivative, assembly

#include "qgeom/hamdsl.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <set>

namespace qgeom {

// ------------------------------ expressions ---------------------------------

namespace expr {

namespace {

using Kind = CoeffNode::Kind;

CoeffExpr make(Kind k, CoeffExpr lhs = nullptr, CoeffExpr rhs = nullptr)
{
    auto n = std::make_shared<CoeffNode>();
    n->kind = k;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

bool is_num(const CoeffExpr& e) { return e->kind == Kind::Number; }

} // namespace

CoeffExpr number(double v)
{
    auto n = std::make_shared<CoeffNode>();
    n->kind = Kind::Number;
    n->value = v;
    return n;
}

CoeffExpr param(std::string name, std::size_t index)
{
    auto n = std::make_shared<CoeffNode>();
    n->kind = Kind::Param;
    n->name = std::move(name);
    n->index = index;
    return n;
}

CoeffExpr hbar() { return make(Kind::Hbar); }

bool is_number(const CoeffExpr& e, double v) { return e->kind == Kind::Number && e->value == v; }

CoeffExpr neg(CoeffExpr a)
{
    if (is_num(a)) return number(-a->value);
    return make(Kind::Neg, std::move(a));
}

CoeffExpr add(CoeffExpr a, CoeffExpr b)
{
    if (is_num(a) && is_num(b)) return number(a->value + b->value);
    if (is_number(a, 0.0)) return b;
    if (is_number(b, 0.0)) return a;
    return make(Kind::Add, std::move(a), std::move(b));
}

CoeffExpr sub(CoeffExpr a, CoeffExpr b)
{
    if (is_num(a) && is_num(b)) return number(a->value - b->value);
    if (is_number(b, 0.0)) return a;
    if (is_number(a, 0.0)) return neg(std::move(b));
    return make(Kind::Sub, std::move(a), std::move(b));
}

CoeffExpr mul(CoeffExpr a, CoeffExpr b)
{
    if (is_num(a) && is_num(b)) return number(a->value * b->value);
    if (is_number(a, 0.0) || is_number(b, 0.0)) return number(0.0);
    if (is_number(a, 1.0)) return b;
    if (is_number(b, 1.0)) return a;
    return make(Kind::Mul, std::move(a), std::move(b));
}

CoeffExpr div(CoeffExpr a, CoeffExpr b)
{
    if (is_num(a) && is_num(b) && b->value != 0.0) return number(a->value / b->value);
    if (is_number(a, 0.0)) return number(0.0);
    if (is_number(b, 1.0)) return a;
    return make(Kind::Div, std::move(a), std::move(b));
}

CoeffExpr pow(CoeffExpr a, int k)
{
    if (k == 0) return number(1.0);
    if (k == 1) return a;
    if (is_num(a)) return number(std::pow(a->value, k));
    auto n = make(Kind::Pow, std::move(a));
    std::const_pointer_cast<CoeffNode>(n)->exponent = k;
    return n;
}

CoeffExpr sqrt(CoeffExpr a)
{
    if (is_num(a) && a->value >= 0.0) return number(std::sqrt(a->value));
    return make(Kind::Sqrt, std::move(a));
}

} // namespace expr

double evaluate(const CoeffNode& e, std::span<const double> lambda, double hbar)
{
    using Kind = CoeffNode::Kind;
    switch (e.kind) {
    case Kind::Number: return e.value;
    case Kind::Param:
        if (e.index >= lambda.size()) throw Error(ErrorKind::ShapeMismatch, "parameter point too short");
        return lambda[e.index];
    case Kind::Hbar: return hbar;
    case Kind::Neg: return -evaluate(*e.lhs, lambda, hbar);
    case Kind::Add: return evaluate(*e.lhs, lambda, hbar) + evaluate(*e.rhs, lambda, hbar);
    case Kind::Sub: return evaluate(*e.lhs, lambda, hbar) - evaluate(*e.rhs, lambda, hbar);
    case Kind::Mul: return evaluate(*e.lhs, lambda, hbar) * evaluate(*e.rhs, lambda, hbar);
    case Kind::Div: return evaluate(*e.lhs, lambda, hbar) / evaluate(*e.rhs, lambda, hbar);
    case Kind::Pow: return std::pow(evaluate(*e.lhs, lambda, hbar), e.exponent);
    case Kind::Sqrt: return std::sqrt(evaluate(*e.lhs, lambda, hbar));
    }
    return std::nan("");
}

CoeffExpr differentiate(const CoeffExpr& e, std::size_t k)
{
    using Kind = CoeffNode::Kind;
    namespace x = expr;
    switch (e->kind) {
    case Kind::Number:
    case Kind::Hbar: return x::number(0.0);
    case Kind::Param: return x::number(e->index == k ? 1.0 : 0.0);
    case Kind::Neg: return x::neg(differentiate(e->lhs, k));
    case Kind::Add: return x::add(differentiate(e->lhs, k), differentiate(e->rhs, k));
    case Kind::Sub: return x::sub(differentiate(e->lhs, k), differentiate(e->rhs, k));
    case Kind::Mul:
        return x::add(x::mul(differentiate(e->lhs, k), e->rhs), x::mul(e->lhs, differentiate(e->rhs, k)));
    case Kind::Div: {
        auto num = x::sub(x::mul(differentiate(e->lhs, k), e->rhs), x::mul(e->lhs, differentiate(e->rhs, k)));
        return x::div(num, x::pow(e->rhs, 2));
    }
    case Kind::Pow:
        return x::mul(x::mul(x::number(e->exponent), x::pow(e->lhs, e->exponent - 1)), differentiate(e->lhs, k));
    case Kind::Sqrt: return x::div(differentiate(e->lhs, k), x::mul(x::number(2.0), e));
    }
    return x::number(0.0);
}

CoeffExpr differentiate(const CoeffExpr& e, std::string_view param, const std::vector<std::string>& names)
{
    for (std::size_t k = 0; k < names.size(); ++k)
        if (names[k] == param) return differentiate(e, k);
    throw Error(ErrorKind::UnknownSymbol, "cannot differentiate with respect to undeclared '" + std::string(param) + "'");
}

namespace {

std::string format_number(double v)
{
    std::array<char, 64> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

int precedence(const CoeffNode& e)
{
    using Kind = CoeffNode::Kind;
    switch (e.kind) {
    case Kind::Number: return e.value < 0 || std::signbit(e.value) ? 1 : 5;
    case Kind::Add:
    case Kind::Sub:
    case Kind::Neg: return 1;
    case Kind::Mul:
    case Kind::Div: return 2;
    case Kind::Pow: return 4;
    default: return 5;
    }
}

std::string wrap(const CoeffExpr& e, bool parens)
{
    std::string s = unparse(e);
    return parens ? "(" + s + ")" : s;
}

} // namespace

std::string unparse(const CoeffExpr& e)
{
    using Kind = CoeffNode::Kind;
    const int p = precedence(*e);
    switch (e->kind) {
    case Kind::Number: return format_number(e->value);
    case Kind::Param: return e->name;
    case Kind::Hbar: return "hbar";
    case Kind::Neg: return "-" + wrap(e->lhs, precedence(*e->lhs) <= 2);
    case Kind::Add: return wrap(e->lhs, false) + " + " + wrap(e->rhs, precedence(*e->rhs) <= 1);
    case Kind::Sub: return wrap(e->lhs, false) + " - " + wrap(e->rhs, precedence(*e->rhs) <= 1);
    case Kind::Mul: return wrap(e->lhs, precedence(*e->lhs) < p) + "*" + wrap(e->rhs, precedence(*e->rhs) < p);
    case Kind::Div: return wrap(e->lhs, precedence(*e->lhs) < p) + "/" + wrap(e->rhs, precedence(*e->rhs) <= p);
    case Kind::Pow: return wrap(e->lhs, precedence(*e->lhs) <= p) + "^" + std::to_string(e->exponent);
    case Kind::Sqrt: return "sqrt(" + unparse(e->lhs) + ")";
    }
    return "?";
}

// -------------------------------- lexer -------------------------------------

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    Tok kind{Tok::End};
    std::string text;
    double value{0.0};
    bool integral{false};
    std::size_t line{1};
    std::size_t column{1};
};

const std::set<std::string, std::less<>> kReserved = {"q", "p", "id", "sym", "sqrt", "hbar"};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> lex(std::string_view src)
{
    std::vector<Token> out;
    std::size_t line = 1, col = 1, i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };
    while (i < src.size()) {
        const char c = src[i];
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        Token t;
        t.line = line;
        t.column = col;
        if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && i + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
            std::size_t j = i;
            bool integral = true;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            if (j < src.size() && src[j] == '.') {
                integral = false;
                ++j;
                while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            }
            if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
                std::size_t k = j + 1;
                if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
                if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
                    integral = false;
                    while (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) ++k;
                    j = k;
                }
            }
            t.kind = Tok::Number;
            t.text = std::string(src.substr(i, j - i));
            t.integral = integral;
            auto res = std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.value);
            if (res.ec != std::errc{} || !std::isfinite(t.value)) throw SyntaxError("invalid number '" + t.text + "'", line, col);
            advance(j - i);
        } else if (ident_start(c)) {
            std::size_t j = i;
            while (j < src.size() && ident_char(src[j])) ++j;
            t.kind = Tok::Ident;
            t.text = std::string(src.substr(i, j - i));
            advance(j - i);
        } else {
            switch (c) {
            case '+': t.kind = Tok::Plus; break;
            case '-': t.kind = Tok::Minus; break;
            case '*': t.kind = Tok::Star; break;
            case '/': t.kind = Tok::Slash; break;
            case '^': t.kind = Tok::Caret; break;
            case '(': t.kind = Tok::LParen; break;
            case ')': t.kind = Tok::RParen; break;
            default: throw SyntaxError(std::string("unexpected character '") + c + "'", line, col);
            }
            t.text = std::string(1, c);
            advance(1);
        }
        out.push_back(std::move(t));
    }
    Token end;
    end.kind = Tok::End;
    end.line = line;
    end.column = col;
    out.push_back(end);
    return out;
}

std::string describe(const Token& t) { return t.kind == Tok::End ? "end of input" : "'" + t.text + "'"; }

bool is_operator_symbol(const Token& t)
{
    return t.kind == Tok::Ident && (t.text == "q" || t.text == "p" || t.text == "id" || t.text == "sym");
}

// -------------------------------- parser ------------------------------------

class Parser {
public:
    Parser(std::string_view src, const std::vector<std::string>& names) : toks_(lex(src)), names_(names) {}

    std::vector<Term> family()
    {
        std::vector<Term> terms;
        bool negate = false;
        if (peek().kind == Tok::Plus || peek().kind == Tok::Minus) negate = take().kind == Tok::Minus;
        terms.push_back(term(negate));
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            negate = take().kind == Tok::Minus;
            terms.push_back(term(negate));
        }
        expect_end();
        return terms;
    }

    CoeffExpr standalone()
    {
        CoeffExpr e = expression();
        expect_end();
        return e;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& take() { return toks_[pos_++]; }

    [[noreturn]] void fail(const Token& t, const std::string& msg) const { throw SyntaxError(msg, t.line, t.column); }

    void expect(Tok kind, const char* what)
    {
        if (peek().kind != kind) fail(peek(), std::string("expected ") + what + ", found " + describe(peek()));
        take();
    }

    void expect_end()
    {
        if (peek().kind != Tok::End) fail(peek(), "unexpected " + describe(peek()));
    }

    Term term(bool negate)
    {
        CoeffExpr coeff;
        Monomial mono;
        bool seen_op = false;
        bool divide = false;
        for (;;) {
            const Token& t = peek();
            if (is_operator_symbol(t)) {
                if (divide) fail(t, "cannot divide by an operator factor");
                mono.push_back(opfactor());
                seen_op = true;
            } else if (t.kind == Tok::Number || t.kind == Tok::Ident || t.kind == Tok::LParen) {
                if (seen_op) fail(t, "scalar factor after an operator factor");
                CoeffExpr a = power();
                if (!coeff) {
                    coeff = a;
                } else {
                    coeff = std::make_shared<CoeffNode>(CoeffNode{divide ? CoeffNode::Kind::Div : CoeffNode::Kind::Mul, 0.0, {}, 0, 0, coeff, a});
                }
            } else {
                fail(t, "expected a factor, found " + describe(t));
            }
            divide = false;
            if (peek().kind == Tok::Star) {
                take();
            } else if (peek().kind == Tok::Slash) {
                if (seen_op) fail(peek(), "division after an operator factor");
                take();
                divide = true;
            } else {
                break;
            }
        }
        if (!coeff) coeff = expr::number(1.0);
        if (negate) coeff = std::make_shared<CoeffNode>(CoeffNode{CoeffNode::Kind::Neg, 0.0, {}, 0, 0, coeff, nullptr});
        return Term{coeff, std::move(mono)};
    }

    int integer_exponent(bool allow_negative)
    {
        bool neg = false;
        if (allow_negative && peek().kind == Tok::Minus) {
            take();
            neg = true;
        }
        const Token& t = peek();
        if (t.kind != Tok::Number || !t.integral) fail(t, "expected an integer exponent, found " + describe(t));
        take();
        if (t.value > 64) fail(t, "exponent too large");
        const int k = static_cast<int>(t.value);
        return neg ? -k : k;
    }

    OpFactor opfactor()
    {
        const Token& t = take();
        OpFactor f;
        if (t.text == "q") {
            f = OpFactor::q();
        } else if (t.text == "p") {
            f = OpFactor::p();
        } else if (t.text == "id") {
            f = OpFactor::id();
        } else {
            const Token& open = peek();
            expect(Tok::LParen, "'(' after sym");
            std::vector<OpFactor> ops;
            if (!is_operator_symbol(peek())) fail(peek(), "expected an operator factor inside sym(), found " + describe(peek()));
            ops.push_back(opfactor());
            while (peek().kind == Tok::Star) {
                take();
                if (!is_operator_symbol(peek())) fail(peek(), "expected an operator factor inside sym(), found " + describe(peek()));
                ops.push_back(opfactor());
            }
            expect(Tok::RParen, "')' closing sym(");
            if (ops.size() != 2) {
                throw Error(ErrorKind::SymArityError, "sym() takes exactly two factors, got " + std::to_string(ops.size()) +
                                                          " at line " + std::to_string(open.line) + ", column " +
                                                          std::to_string(open.column));
            }
            f = OpFactor{OpKind::Sym, 1, std::move(ops)};
        }
        if (peek().kind == Tok::Caret) {
            take();
            f.power = integer_exponent(false);
        }
        return f;
    }

    CoeffExpr expression()
    {
        CoeffExpr e = product();
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            const bool minus = take().kind == Tok::Minus;
            CoeffExpr r = product();
            e = std::make_shared<CoeffNode>(CoeffNode{minus ? CoeffNode::Kind::Sub : CoeffNode::Kind::Add, 0.0, {}, 0, 0, e, r});
        }
        return e;
    }

    CoeffExpr product()
    {
        CoeffExpr e = unary();
        while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
            const bool div = take().kind == Tok::Slash;
            CoeffExpr r = unary();
            e = std::make_shared<CoeffNode>(CoeffNode{div ? CoeffNode::Kind::Div : CoeffNode::Kind::Mul, 0.0, {}, 0, 0, e, r});
        }
        return e;
    }

    CoeffExpr unary()
    {
        if (peek().kind == Tok::Minus) {
            take();
            return std::make_shared<CoeffNode>(CoeffNode{CoeffNode::Kind::Neg, 0.0, {}, 0, 0, unary(), nullptr});
        }
        if (peek().kind == Tok::Plus) {
            take();
            return unary();
        }
        return power();
    }

    CoeffExpr power()
    {
        CoeffExpr base = atom();
        if (peek().kind == Tok::Caret) {
            take();
            const int k = integer_exponent(true);
            auto n = std::make_shared<CoeffNode>(CoeffNode{CoeffNode::Kind::Pow, 0.0, {}, 0, k, base, nullptr});
            return n;
        }
        return base;
    }

    CoeffExpr atom()
    {
        const Token& t = peek();
        switch (t.kind) {
        case Tok::Number:
            take();
            return expr::number(t.value);
        case Tok::LParen: {
            take();
            CoeffExpr e = expression();
            expect(Tok::RParen, "')'");
            return e;
        }
        case Tok::Ident: {
            if (is_operator_symbol(t)) fail(t, "operator '" + t.text + "' inside a coefficient expression");
            take();
            if (t.text == "hbar") return expr::hbar();
            if (t.text == "sqrt") {
                expect(Tok::LParen, "'(' after sqrt");
                CoeffExpr e = expression();
                expect(Tok::RParen, "')' closing sqrt(");
                return std::make_shared<CoeffNode>(CoeffNode{CoeffNode::Kind::Sqrt, 0.0, {}, 0, 0, e, nullptr});
            }
            for (std::size_t k = 0; k < names_.size(); ++k)
                if (names_[k] == t.text) return expr::param(t.text, k);
            throw Error(ErrorKind::UnknownSymbol, "undeclared symbol '" + t.text + "' at line " + std::to_string(t.line) +
                                                      ", column " + std::to_string(t.column));
        }
        default: fail(t, "expected a number, parameter or '(', found " + describe(t));
        }
    }

    std::vector<Token> toks_;
    const std::vector<std::string>& names_;
    std::size_t pos_{0};
};

void validate_names(const std::vector<std::string>& names)
{
    std::set<std::string, std::less<>> seen;
    for (const auto& n : names) {
        if (n.empty() || !ident_start(n[0]) || !std::all_of(n.begin(), n.end(), ident_char)) {
            throw Error(ErrorKind::InvalidArgument, "invalid parameter name '" + n + "'");
        }
        if (kReserved.contains(n)) throw Error(ErrorKind::InvalidArgument, "parameter name '" + n + "' is reserved");
        if (!seen.insert(n).second) throw Error(ErrorKind::InvalidArgument, "duplicate parameter name '" + n + "'");
    }
}

} // namespace

int FamilySpec::max_degree() const
{
    int d = 0;
    for (const auto& t : terms) d = std::max(d, degree(t.monomial));
    return d;
}

std::size_t FamilySpec::parameter_index(std::string_view name) const
{
    for (std::size_t k = 0; k < parameter_names.size(); ++k)
        if (parameter_names[k] == name) return k;
    throw Error(ErrorKind::UnknownSymbol, "unknown parameter '" + std::string(name) + "'");
}

FamilySpec parse_family(std::string_view text, const std::vector<std::string>& parameter_names, double hbar,
                        const std::vector<std::string>& domain_constraints)
{
    validate_names(parameter_names);
    if (!(hbar > 0.0) || !std::isfinite(hbar)) throw Error(ErrorKind::InvalidArgument, "hbar must be positive and finite");
    FamilySpec spec;
    spec.parameter_names = parameter_names;
    spec.hbar = hbar;
    Parser parser(text, parameter_names);
    spec.terms = parser.family();
    for (const auto& c : domain_constraints) spec.domain_constraints.push_back(parse_coeff(c, parameter_names));
    return spec;
}

CoeffExpr parse_coeff(std::string_view text, const std::vector<std::string>& parameter_names)
{
    Parser parser(text, parameter_names);
    return parser.standalone();
}

std::string unparse_family(const FamilySpec& spec)
{
    std::string out;
    for (std::size_t k = 0; k < spec.terms.size(); ++k) {
        const auto& t = spec.terms[k];
        if (k) out += " + ";
        const bool bare = precedence(*t.coeff) >= 2;
        const std::string c = bare ? unparse(t.coeff) : "(" + unparse(t.coeff) + ")";
        out += t.monomial.empty() ? c : c + "*" + to_string(t.monomial);
    }
    return out;
}

bool is_builtin_family(std::string_view name) { return name == "example1" || name == "example2"; }

FamilySpec builtin_family(std::string_view name, double hbar)
{
    if (name == "example1") return parse_family("0.5*q^2 + 0.5*Z*p^2 + W*q", {"W", "Z"}, hbar, {"Z"});
    if (name == "example2") {
        return parse_family("0.5*q^2 + Y*sym(q*p) + 0.5*Z*p^2 + W*q", {"W", "Y", "Z"}, hbar, {"Z", "Z - Y^2"});
    }
    throw Error(ErrorKind::InvalidArgument, "unknown built-in family '" + std::string(name) + "'");
}

void check_domain(const FamilySpec& spec, std::span<const double> lambda)
{
    if (lambda.size() != spec.parameter_count()) {
        throw Error(ErrorKind::InvalidArgument, "expected " + std::to_string(spec.parameter_count()) +
                                                    " parameter values, got " + std::to_string(lambda.size()));
    }
    for (double v : lambda)
        if (!std::isfinite(v)) throw Error(ErrorKind::DomainViolation, "non-finite parameter value");
    for (const auto& c : spec.domain_constraints) {
        const double v = evaluate(c, lambda, spec.hbar);
        if (!(v > 0.0)) throw Error(ErrorKind::DomainViolation, "constraint " + unparse(c) + " > 0 violated (value " + format_number(v) + ")");
    }
}

// ------------------------------- assembly -----------------------------------

Assembler::Assembler(FamilySpec spec, std::size_t trunc_dim) : spec_(std::move(spec)), trunc_dim_(trunc_dim)
{
    const int deg = spec_.max_degree();
    if (trunc_dim_ < static_cast<std::size_t>(deg) + 2 || trunc_dim_ < 2) {
        throw Error(ErrorKind::DimensionTooSmall, "trunc_dim " + std::to_string(trunc_dim_) + " below monomial degree + 2 = " +
                                                      std::to_string(deg + 2));
    }
    for (const auto& t : spec_.terms) {
        monomials_.push_back(build_monomial(t.monomial, trunc_dim_, spec_.hbar).matrix);
        coeffs_.push_back(t.coeff);
    }
    dcoeffs_.resize(spec_.parameter_count());
    for (std::size_t k = 0; k < spec_.parameter_count(); ++k)
        for (const auto& t : spec_.terms) dcoeffs_[k].push_back(differentiate(t.coeff, k));
}

void Assembler::require_point(std::span<const double> lambda) const { check_domain(spec_, lambda); }

ComplexMatrix Assembler::combine(const std::vector<CoeffExpr>& coeffs, std::span<const double> lambda, const char* what) const
{
    ComplexMatrix out(trunc_dim_, trunc_dim_);
    auto o = out.data();
    for (std::size_t t = 0; t < coeffs.size(); ++t) {
        if (expr::is_number(coeffs[t], 0.0)) continue;
        const double c = evaluate(coeffs[t], lambda, spec_.hbar);
        if (!std::isfinite(c)) {
            throw Error(ErrorKind::DomainViolation, std::string(what) + ": coefficient " + unparse(coeffs[t]) + " is not finite");
        }
        if (c == 0.0) continue;
        auto m = monomials_[t].data();
        for (std::size_t k = 0; k < o.size(); ++k) o[k] += c * m[k];
    }
    const double scale = max_abs(out);
    if (hermiticity_residual(out) > 1e-12 * scale) {
        throw Error(ErrorKind::NotHermitian, std::string(what) + " is not Hermitian; use sym() for mixed products");
    }
    return out;
}

ComplexMatrix Assembler::hamiltonian(std::span<const double> lambda) const
{
    require_point(lambda);
    return combine(coeffs_, lambda, "H");
}

std::vector<ComplexMatrix> Assembler::derivatives(std::span<const double> lambda) const
{
    require_point(lambda);
    std::vector<ComplexMatrix> out;
    out.reserve(dcoeffs_.size());
    for (std::size_t k = 0; k < dcoeffs_.size(); ++k) out.push_back(combine(dcoeffs_[k], lambda, "dH"));
    return out;
}

Assembly Assembler::assemble(std::span<const double> lambda) const
{
    return Assembly{hamiltonian(lambda), derivatives(lambda)};
}

Assembly assemble(const FamilySpec& spec, std::span<const double> lambda, std::size_t trunc_dim)
{
    return Assembler(spec, trunc_dim).assemble(lambda);
}

} // namespace qgeom
