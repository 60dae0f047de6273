#include "meanlab/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <utility>

namespace meanlab {

enum class NodeKind : unsigned char {
    Constant, Variable, Neg, Add, Sub, Mul, Div, Pow, Call
};

struct Expr::Node {
    NodeKind kind;
    Func func = Func::Exp; // meaningful for Call only
    double value = 0.0;    // meaningful for Constant only
    NodePtr a, b;
};

namespace {

using Node = Expr::Node;
using NodePtr = std::shared_ptr<const Node>;

ParseError parseError(const std::string& message, std::size_t offset) {
    return ParseError(message + " at offset " + std::to_string(offset), offset);
}

NodePtr makeNode(Node n) { return std::make_shared<const Node>(std::move(n)); }

NodePtr constantNode(double v) {
    return makeNode({NodeKind::Constant, Func::Exp, v, nullptr, nullptr});
}

bool isConst(const NodePtr& n) { return n->kind == NodeKind::Constant; }
bool isConst(const NodePtr& n, double v) {
    return n->kind == NodeKind::Constant && n->value == v;
}

NodePtr negNode(NodePtr a);

NodePtr addNode(NodePtr a, NodePtr b) {
    if (isConst(a) && isConst(b)) return constantNode(a->value + b->value);
    if (isConst(a, 0.0)) return b;
    if (isConst(b, 0.0)) return a;
    return makeNode({NodeKind::Add, Func::Exp, 0.0, std::move(a), std::move(b)});
}

NodePtr subNode(NodePtr a, NodePtr b) {
    if (isConst(a) && isConst(b)) return constantNode(a->value - b->value);
    if (isConst(b, 0.0)) return a;
    if (isConst(a, 0.0)) return negNode(std::move(b));
    return makeNode({NodeKind::Sub, Func::Exp, 0.0, std::move(a), std::move(b)});
}

NodePtr mulNode(NodePtr a, NodePtr b) {
    if (isConst(a) && isConst(b)) {
        double v = a->value * b->value;
        if (std::isfinite(v)) return constantNode(v);
    }
    if (isConst(a, 0.0) || isConst(b, 0.0)) return constantNode(0.0);
    if (isConst(a, 1.0)) return b;
    if (isConst(b, 1.0)) return a;
    if (isConst(a, -1.0)) return negNode(std::move(b));
    if (isConst(b, -1.0)) return negNode(std::move(a));
    return makeNode({NodeKind::Mul, Func::Exp, 0.0, std::move(a), std::move(b)});
}

NodePtr divNode(NodePtr a, NodePtr b) {
    if (isConst(a) && isConst(b)) {
        double v = a->value / b->value;
        if (std::isfinite(v)) return constantNode(v);
    }
    if (isConst(a, 0.0)) return constantNode(0.0);
    if (isConst(b, 1.0)) return a;
    return makeNode({NodeKind::Div, Func::Exp, 0.0, std::move(a), std::move(b)});
}

NodePtr powNode(NodePtr a, NodePtr b) {
    if (isConst(a) && isConst(b)) {
        double v = std::pow(a->value, b->value);
        if (std::isfinite(v)) return constantNode(v);
    }
    if (isConst(b, 0.0)) return constantNode(1.0);
    if (isConst(b, 1.0)) return a;
    if (isConst(a, 1.0)) return constantNode(1.0);
    return makeNode({NodeKind::Pow, Func::Exp, 0.0, std::move(a), std::move(b)});
}

NodePtr negNode(NodePtr a) {
    if (isConst(a)) return constantNode(-a->value);
    if (a->kind == NodeKind::Neg) return a->a;
    return makeNode({NodeKind::Neg, Func::Exp, 0.0, std::move(a), nullptr});
}

struct FuncEntry {
    const char* name;
    Func func;
};

constexpr std::array<FuncEntry, 11> kFuncs{{
    {"exp", Func::Exp}, {"log", Func::Log}, {"sin", Func::Sin},
    {"cos", Func::Cos}, {"sinh", Func::Sinh}, {"cosh", Func::Cosh},
    {"tan", Func::Tan}, {"tanh", Func::Tanh}, {"sqrt", Func::Sqrt},
    {"abs", Func::Abs}, {"atan", Func::Atan},
}};

const char* funcName(Func f) {
    for (const auto& e : kFuncs)
        if (e.func == f) return e.name;
    return "?";
}

// Returns NaN for arguments outside the natural domain; eval turns that
// into an EvalError, constant folding keeps the node unevaluated.
double applyFunc(Func f, double v) {
    switch (f) {
    case Func::Exp: return std::exp(v);
    case Func::Log: return v > 0.0 ? std::log(v) : std::nan("");
    case Func::Sin: return std::sin(v);
    case Func::Cos: return std::cos(v);
    case Func::Sinh: return std::sinh(v);
    case Func::Cosh: return std::cosh(v);
    case Func::Tan: return std::tan(v);
    case Func::Tanh: return std::tanh(v);
    case Func::Sqrt: return v >= 0.0 ? std::sqrt(v) : std::nan("");
    case Func::Abs: return std::fabs(v);
    case Func::Atan: return std::atan(v);
    }
    return std::nan("");
}

NodePtr callNode(Func f, NodePtr a) {
    if (isConst(a)) {
        double v = applyFunc(f, a->value);
        if (std::isfinite(v)) return constantNode(v);
    }
    return makeNode({NodeKind::Call, f, 0.0, std::move(a), nullptr});
}

// ---- printing ------------------------------------------------------------

std::string formatNumber(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

// Precedence used to decide parenthesisation. A negative constant prints
// with a leading '-', so it binds like a unary minus.
int printPrec(const Node& n) {
    switch (n.kind) {
    case NodeKind::Add:
    case NodeKind::Sub: return 1;
    case NodeKind::Mul:
    case NodeKind::Div: return 2;
    case NodeKind::Neg: return 3;
    case NodeKind::Pow: return 4;
    case NodeKind::Constant: return n.value < 0.0 ? 3 : 5;
    case NodeKind::Variable:
    case NodeKind::Call: return 5;
    }
    return 5;
}

void printNode(const Node& n, std::string& out);

void printChild(const Node& child, std::string& out, bool needParens) {
    if (needParens) {
        out += '(';
        printNode(child, out);
        out += ')';
    } else {
        printNode(child, out);
    }
}

void printNode(const Node& n, std::string& out) {
    switch (n.kind) {
    case NodeKind::Constant:
        out += formatNumber(n.value);
        return;
    case NodeKind::Variable:
        out += 'x';
        return;
    case NodeKind::Neg:
        out += '-';
        printChild(*n.a, out, printPrec(*n.a) <= 2);
        return;
    case NodeKind::Add:
        printChild(*n.a, out, false);
        out += '+';
        printChild(*n.b, out, printPrec(*n.b) <= 1);
        return;
    case NodeKind::Sub:
        printChild(*n.a, out, false);
        out += '-';
        printChild(*n.b, out, printPrec(*n.b) <= 1);
        return;
    case NodeKind::Mul:
        printChild(*n.a, out, printPrec(*n.a) < 2);
        out += '*';
        printChild(*n.b, out, printPrec(*n.b) <= 2);
        return;
    case NodeKind::Div:
        printChild(*n.a, out, printPrec(*n.a) < 2);
        out += '/';
        printChild(*n.b, out, printPrec(*n.b) <= 2);
        return;
    case NodeKind::Pow:
        printChild(*n.a, out, printPrec(*n.a) < 5);
        out += '^';
        printChild(*n.b, out, printPrec(*n.b) <= 2);
        return;
    case NodeKind::Call:
        out += funcName(n.func);
        out += '(';
        printNode(*n.a, out);
        out += ')';
        return;
    }
}

std::string nodeToString(const Node& n) {
    std::string out;
    printNode(n, out);
    return out;
}

// ---- evaluation ----------------------------------------------------------

[[noreturn]] void evalFail(const char* what, const Node& n) {
    throw EvalError(std::string(what) + " in '" + nodeToString(n) + "'");
}

double evalNode(const Node& n, double x) {
    switch (n.kind) {
    case NodeKind::Constant: return n.value;
    case NodeKind::Variable: return x;
    case NodeKind::Neg: return -evalNode(*n.a, x);
    case NodeKind::Add: return evalNode(*n.a, x) + evalNode(*n.b, x);
    case NodeKind::Sub: return evalNode(*n.a, x) - evalNode(*n.b, x);
    case NodeKind::Mul: return evalNode(*n.a, x) * evalNode(*n.b, x);
    case NodeKind::Div: {
        double num = evalNode(*n.a, x);
        double den = evalNode(*n.b, x);
        if (den == 0.0) evalFail("division by zero", n);
        return num / den;
    }
    case NodeKind::Pow: {
        double base = evalNode(*n.a, x);
        double expo = evalNode(*n.b, x);
        if (base == 0.0 && expo < 0.0) evalFail("zero raised to a negative power", n);
        double v = std::pow(base, expo);
        if (std::isnan(v) && !std::isnan(base) && !std::isnan(expo))
            evalFail("fractional power of a negative base", n);
        return v;
    }
    case NodeKind::Call: {
        double arg = evalNode(*n.a, x);
        double v = applyFunc(n.func, arg);
        if (std::isnan(v) && !std::isnan(arg)) {
            switch (n.func) {
            case Func::Log: evalFail("log of a non-positive value", n);
            case Func::Sqrt: evalFail("square root of a negative value", n);
            default: evalFail("domain error", n);
            }
        }
        return v;
    }
    }
    throw Error("corrupt expression node");
}

// ---- differentiation -----------------------------------------------------

NodePtr diffNode(const NodePtr& n);

NodePtr diffCall(const Node& n) {
    const NodePtr& u = n.a;
    NodePtr du = diffNode(u);
    switch (n.func) {
    case Func::Exp: return mulNode(callNode(Func::Exp, u), du);
    case Func::Log: return divNode(du, u);
    case Func::Sin: return mulNode(callNode(Func::Cos, u), du);
    case Func::Cos: return negNode(mulNode(callNode(Func::Sin, u), du));
    case Func::Sinh: return mulNode(callNode(Func::Cosh, u), du);
    case Func::Cosh: return mulNode(callNode(Func::Sinh, u), du);
    case Func::Tan:
        return mulNode(addNode(constantNode(1.0),
                               powNode(callNode(Func::Tan, u), constantNode(2.0))),
                       du);
    case Func::Tanh:
        return mulNode(subNode(constantNode(1.0),
                               powNode(callNode(Func::Tanh, u), constantNode(2.0))),
                       du);
    case Func::Sqrt:
        return divNode(du, mulNode(constantNode(2.0), callNode(Func::Sqrt, u)));
    case Func::Atan:
        return divNode(du, addNode(constantNode(1.0),
                                   powNode(u, constantNode(2.0))));
    case Func::Abs:
        throw DerivativeError("abs is not differentiable: '" + nodeToString(n) + "'");
    }
    throw Error("corrupt expression node");
}

NodePtr diffNode(const NodePtr& n) {
    switch (n->kind) {
    case NodeKind::Constant: return constantNode(0.0);
    case NodeKind::Variable: return constantNode(1.0);
    case NodeKind::Neg: return negNode(diffNode(n->a));
    case NodeKind::Add: return addNode(diffNode(n->a), diffNode(n->b));
    case NodeKind::Sub: return subNode(diffNode(n->a), diffNode(n->b));
    case NodeKind::Mul:
        return addNode(mulNode(diffNode(n->a), n->b),
                       mulNode(n->a, diffNode(n->b)));
    case NodeKind::Div:
        return divNode(subNode(mulNode(diffNode(n->a), n->b),
                               mulNode(n->a, diffNode(n->b))),
                       powNode(n->b, constantNode(2.0)));
    case NodeKind::Pow:
        if (isConst(n->b)) {
            // d(u^c) = c*u^(c-1)*u', valid where u^c is
            double c = n->b->value;
            return mulNode(mulNode(constantNode(c),
                                   powNode(n->a, constantNode(c - 1.0))),
                           diffNode(n->a));
        }
        // d(u^v) = u^v * (v*u'/u + log(u)*v')
        return mulNode(powNode(n->a, n->b),
                       addNode(divNode(mulNode(n->b, diffNode(n->a)), n->a),
                               mulNode(callNode(Func::Log, n->a), diffNode(n->b))));
    case NodeKind::Call:
        return diffCall(*n);
    }
    throw Error("corrupt expression node");
}

// ---- parser ----------------------------------------------------------------

struct Parser {
    std::string_view src;
    std::size_t pos = 0;

    void skipSpace() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos])))
            ++pos;
    }
    bool atEnd() {
        skipSpace();
        return pos >= src.size();
    }
    char peek() {
        skipSpace();
        return pos < src.size() ? src[pos] : '\0';
    }
    bool consume(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }

    NodePtr parseExpression() {
        NodePtr lhs = parseTerm();
        for (;;) {
            if (consume('+')) lhs = addNode(lhs, parseTerm());
            else if (consume('-')) lhs = subNode(lhs, parseTerm());
            else return lhs;
        }
    }

    NodePtr parseTerm() {
        NodePtr lhs = parseFactor();
        for (;;) {
            if (consume('*')) lhs = mulNode(lhs, parseFactor());
            else if (consume('/')) lhs = divNode(lhs, parseFactor());
            else return lhs;
        }
    }

    NodePtr parseFactor() {
        if (consume('-')) return negNode(parsePower());
        return parsePower();
    }

    NodePtr parsePower() {
        NodePtr base = parseAtom();
        if (consume('^')) return powNode(base, parseFactor());
        return base;
    }

    NodePtr parseAtom() {
        char c = peek();
        std::size_t start = pos;
        if (c == '(') {
            ++pos;
            NodePtr inner = parseExpression();
            if (!consume(')'))
                throw parseError("expected ')'", pos);
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
            return constantNode(parseNumber());
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string ident = parseIdent();
            if (ident == "x") return makeNode({NodeKind::Variable, Func::Exp, 0.0, nullptr, nullptr});
            for (const auto& e : kFuncs) {
                if (ident == e.name) {
                    if (!consume('('))
                        throw parseError("expected '(' after '" + ident + "'", pos);
                    NodePtr arg = parseExpression();
                    if (!consume(')'))
                        throw parseError("expected ')' closing '" + ident +
                                         "' (calls take exactly one argument)", pos);
                    return callNode(e.func, arg);
                }
            }
            throw parseError("unknown identifier '" + ident + "'", start);
        }
        if (pos >= src.size())
            throw parseError("unexpected end of input", pos);
        throw parseError(std::string("unexpected character '") + c + "'", pos);
    }

    double parseNumber() {
        std::size_t start = pos;
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos])))
            ++pos;
        if (pos < src.size() && src[pos] == '.') {
            ++pos;
            while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos])))
                ++pos;
        }
        if (pos == start || (pos == start + 1 && src[start] == '.'))
            throw parseError("malformed number", start);
        if (pos < src.size() && (src[pos] == 'e' || src[pos] == 'E')) {
            std::size_t mark = pos;
            ++pos;
            if (pos < src.size() && (src[pos] == '+' || src[pos] == '-')) ++pos;
            if (pos >= src.size() || !std::isdigit(static_cast<unsigned char>(src[pos])))
                throw parseError("malformed exponent", mark);
            while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos])))
                ++pos;
        }
        double value = 0.0;
        auto res = std::from_chars(src.data() + start, src.data() + pos, value);
        if (res.ec != std::errc{})
            throw parseError("malformed number", start);
        return value;
    }

    std::string parseIdent() {
        std::size_t start = pos;
        while (pos < src.size() &&
               (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
            ++pos;
        return std::string(src.substr(start, pos - start));
    }
};

} // namespace

// ---- Expr public surface ---------------------------------------------------

ParseError::ParseError(const std::string& message, std::size_t offset)
    : Error(message), offset_(offset) {}

Expr::Expr(NodePtr node) : node_(std::move(node)) {}
Expr::~Expr() = default;
Expr::Expr(const Expr&) = default;
Expr::Expr(Expr&&) noexcept = default;
Expr& Expr::operator=(const Expr&) = default;
Expr& Expr::operator=(Expr&&) noexcept = default;

Expr Expr::parse(std::string_view source) {
    Parser p{source};
    NodePtr root = p.parseExpression();
    if (!p.atEnd())
        throw parseError("unexpected trailing input", p.pos);
    return Expr(std::move(root));
}

Expr Expr::constant(double value) { return Expr(constantNode(value)); }

Expr Expr::variable() {
    return Expr(makeNode({NodeKind::Variable, Func::Exp, 0.0, nullptr, nullptr}));
}

Expr Expr::apply(Func f, const Expr& argument) {
    return Expr(callNode(f, argument.node_));
}

double Expr::eval(double x) const { return evalNode(*node_, x); }

Expr Expr::derivative(int order) const {
    if (order < 0 || order > 8)
        throw DerivativeError("derivative order must lie in [0, 8], got " +
                              std::to_string(order));
    NodePtr n = node_;
    for (int i = 0; i < order; ++i) n = diffNode(n);
    return Expr(std::move(n));
}

std::string Expr::str() const { return nodeToString(*node_); }

bool Expr::isConstant() const noexcept { return node_->kind == NodeKind::Constant; }

double Expr::constantValue() const {
    if (!isConstant()) throw Error("expression is not a constant");
    return node_->value;
}

Expr operator+(const Expr& a, const Expr& b) { return Expr(addNode(a.node_, b.node_)); }
Expr operator-(const Expr& a, const Expr& b) { return Expr(subNode(a.node_, b.node_)); }
Expr operator*(const Expr& a, const Expr& b) { return Expr(mulNode(a.node_, b.node_)); }
Expr operator/(const Expr& a, const Expr& b) { return Expr(divNode(a.node_, b.node_)); }
Expr operator-(const Expr& a) { return Expr(negNode(a.node_)); }
Expr pow(const Expr& base, const Expr& exponent) {
    return Expr(powNode(base.node_, exponent.node_));
}

} // namespace meanlab
