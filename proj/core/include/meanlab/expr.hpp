#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

namespace meanlab {

/// Base class of every exception thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Syntax error from Expr::parse. Carries the byte offset of the offending
/// token in the source string.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t offset);
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Evaluation left a function's natural domain (log of a non-positive value,
/// square root of a negative, division by zero, fractional power of a
/// negative base). The message names the offending subexpression.
class EvalError : public Error {
public:
    using Error::Error;
};

/// Request for a derivative that does not exist in the closed function set
/// (only abs is non-differentiable here).
class DerivativeError : public Error {
public:
    using Error::Error;
};

enum class Func : unsigned char {
    Exp, Log, Sin, Cos, Sinh, Cosh, Tan, Tanh, Sqrt, Abs, Atan
};

/// Immutable expression tree in one real variable `x`.
///
/// Trees are built either by parsing a source string or through the
/// arithmetic operators below, which apply light simplification only:
/// constant folding plus the 0/1 identities (u+0, u*1, u*0, u^1, ...).
/// Values are shared; copies are cheap handle copies.
class Expr {
public:
    /// Grammar, left-assoc +,-,*,/ and right-assoc ^; unary minus binds
    /// between '*' and '^':
    ///   expr   := term (('+'|'-') term)*
    ///   term   := factor (('*'|'/') factor)*
    ///   factor := ('-')? power
    ///   power  := atom ('^' factor)?
    ///   atom   := NUMBER | 'x' | IDENT '(' expr ')' | '(' expr ')'
    /// IDENT is one of exp, log, sin, cos, sinh, cosh, tan, tanh, sqrt,
    /// abs, atan.
    static Expr parse(std::string_view source);

    static Expr constant(double value);
    static Expr variable();
    static Expr apply(Func f, const Expr& argument);

    /// Evaluate at x. Throws EvalError outside the natural domain.
    double eval(double x) const;
    double operator()(double x) const { return eval(x); }

    /// Symbolic derivative of the given order, 0 <= order <= 8.
    /// Throws DerivativeError if the tree contains abs (order >= 1).
    Expr derivative(int order = 1) const;

    /// Render to a string that parses back to an identical tree.
    std::string str() const;

    bool isConstant() const noexcept;
    /// Value of a constant node; throws Error otherwise.
    double constantValue() const;

    friend Expr operator+(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a, const Expr& b);
    friend Expr operator*(const Expr& a, const Expr& b);
    friend Expr operator/(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a);
    friend Expr pow(const Expr& base, const Expr& exponent);

    ~Expr();
    Expr(const Expr&);
    Expr(Expr&&) noexcept;
    Expr& operator=(const Expr&);
    Expr& operator=(Expr&&) noexcept;

    struct Node;

private:
    using NodePtr = std::shared_ptr<const Node>;
    explicit Expr(NodePtr node);

    NodePtr node_;
};

Expr pow(const Expr& base, const Expr& exponent);

inline Expr exp(const Expr& a) { return Expr::apply(Func::Exp, a); }
inline Expr log(const Expr& a) { return Expr::apply(Func::Log, a); }
inline Expr sin(const Expr& a) { return Expr::apply(Func::Sin, a); }
inline Expr cos(const Expr& a) { return Expr::apply(Func::Cos, a); }
inline Expr sinh(const Expr& a) { return Expr::apply(Func::Sinh, a); }
inline Expr cosh(const Expr& a) { return Expr::apply(Func::Cosh, a); }
inline Expr sqrt(const Expr& a) { return Expr::apply(Func::Sqrt, a); }

} // namespace meanlab
