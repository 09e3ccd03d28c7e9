#include "ruledkit/expr.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>
#include <vector>

namespace ruledkit {
namespace detail {

enum class Op { Const, Var, Add, Sub, Mul, Div, Pow, Neg, Sin, Cos, Exp };

struct ExprNode {
    Op op;
    double value = 0.0; // Const
    int exponent = 0;   // Pow
    std::shared_ptr<const ExprNode> lhs, rhs;
};

using NodePtr = std::shared_ptr<const ExprNode>;

NodePtr make_const(double c) {
    return std::make_shared<ExprNode>(ExprNode{Op::Const, c, 0, nullptr, nullptr});
}

NodePtr make_var() {
    return std::make_shared<ExprNode>(ExprNode{Op::Var, 0.0, 0, nullptr, nullptr});
}

bool const_val(const NodePtr& n, double& out) {
    if (n->op == Op::Const) { out = n->value; return true; }
    return false;
}

NodePtr make_unary(Op op, NodePtr a);
NodePtr make_bin(Op op, NodePtr a, NodePtr b);
NodePtr make_pow(NodePtr a, int n);

// smart constructors with constant folding
NodePtr make_bin(Op op, NodePtr a, NodePtr b) {
    double ca, cb;
    bool fa = const_val(a, ca), fb = const_val(b, cb);
    if (fa && fb) {
        switch (op) {
            case Op::Add: return make_const(ca + cb);
            case Op::Sub: return make_const(ca - cb);
            case Op::Mul: return make_const(ca * cb);
            case Op::Div: if (cb != 0.0) return make_const(ca / cb); break;
            default: break;
        }
    }
    if (op == Op::Add) {
        if (fa && ca == 0.0) return b;
        if (fb && cb == 0.0) return a;
    }
    if (op == Op::Sub) {
        if (fb && cb == 0.0) return a;
        if (fa && ca == 0.0) return make_unary(Op::Neg, b);
    }
    if (op == Op::Mul) {
        if ((fa && ca == 0.0) || (fb && cb == 0.0)) return make_const(0.0);
        if (fa && ca == 1.0) return b;
        if (fb && cb == 1.0) return a;
        if (fa && ca == -1.0) return make_unary(Op::Neg, b);
        if (fb && cb == -1.0) return make_unary(Op::Neg, a);
    }
    if (op == Op::Div) {
        if (fa && ca == 0.0) return make_const(0.0);
        if (fb && cb == 1.0) return a;
    }
    return std::make_shared<ExprNode>(ExprNode{op, 0.0, 0, std::move(a), std::move(b)});
}

NodePtr make_unary(Op op, NodePtr a) {
    double ca;
    if (const_val(a, ca)) {
        switch (op) {
            case Op::Neg: return make_const(-ca);
            case Op::Sin: return make_const(std::sin(ca));
            case Op::Cos: return make_const(std::cos(ca));
            case Op::Exp: return make_const(std::exp(ca));
            default: break;
        }
    }
    if (op == Op::Neg && a->op == Op::Neg) return a->lhs;
    return std::make_shared<ExprNode>(ExprNode{op, 0.0, 0, std::move(a), nullptr});
}

NodePtr make_pow(NodePtr a, int n) {
    if (n == 0) return make_const(1.0);
    if (n == 1) return a;
    double ca;
    if (const_val(a, ca)) return make_const(std::pow(ca, n));
    auto node = std::make_shared<ExprNode>(ExprNode{Op::Pow, 0.0, n, std::move(a), nullptr});
    return node;
}

double eval_node(const ExprNode& n, double u) {
    switch (n.op) {
        case Op::Const: return n.value;
        case Op::Var: return u;
        case Op::Add: return eval_node(*n.lhs, u) + eval_node(*n.rhs, u);
        case Op::Sub: return eval_node(*n.lhs, u) - eval_node(*n.rhs, u);
        case Op::Mul: return eval_node(*n.lhs, u) * eval_node(*n.rhs, u);
        case Op::Div: {
            double den = eval_node(*n.rhs, u);
            if (den == 0.0) throw ExprEvalError("division by zero in expression");
            return eval_node(*n.lhs, u) / den;
        }
        case Op::Pow: return std::pow(eval_node(*n.lhs, u), n.exponent);
        case Op::Neg: return -eval_node(*n.lhs, u);
        case Op::Sin: return std::sin(eval_node(*n.lhs, u));
        case Op::Cos: return std::cos(eval_node(*n.lhs, u));
        case Op::Exp: return std::exp(eval_node(*n.lhs, u));
    }
    throw ExprEvalError("corrupt expression node");
}

NodePtr diff_node(const NodePtr& n) {
    switch (n->op) {
        case Op::Const: return make_const(0.0);
        case Op::Var: return make_const(1.0);
        case Op::Add: return make_bin(Op::Add, diff_node(n->lhs), diff_node(n->rhs));
        case Op::Sub: return make_bin(Op::Sub, diff_node(n->lhs), diff_node(n->rhs));
        case Op::Mul:
            return make_bin(Op::Add,
                            make_bin(Op::Mul, diff_node(n->lhs), n->rhs),
                            make_bin(Op::Mul, n->lhs, diff_node(n->rhs)));
        case Op::Div:
            // (a/b)' = (a'b - ab') / b^2
            return make_bin(Op::Div,
                            make_bin(Op::Sub,
                                     make_bin(Op::Mul, diff_node(n->lhs), n->rhs),
                                     make_bin(Op::Mul, n->lhs, diff_node(n->rhs))),
                            make_pow(n->rhs, 2));
        case Op::Pow:
            return make_bin(Op::Mul,
                            make_bin(Op::Mul, make_const(n->exponent), make_pow(n->lhs, n->exponent - 1)),
                            diff_node(n->lhs));
        case Op::Neg: return make_unary(Op::Neg, diff_node(n->lhs));
        case Op::Sin: return make_bin(Op::Mul, make_unary(Op::Cos, n->lhs), diff_node(n->lhs));
        case Op::Cos:
            return make_unary(Op::Neg, make_bin(Op::Mul, make_unary(Op::Sin, n->lhs), diff_node(n->lhs)));
        case Op::Exp: return make_bin(Op::Mul, make_unary(Op::Exp, n->lhs), diff_node(n->lhs));
    }
    throw ExprEvalError("corrupt expression node");
}

void print_node(const ExprNode& n, std::ostream& os) {
    switch (n.op) {
        case Op::Const: os << n.value; return;
        case Op::Var: os << 'u'; return;
        case Op::Add: os << '('; print_node(*n.lhs, os); os << " + "; print_node(*n.rhs, os); os << ')'; return;
        case Op::Sub: os << '('; print_node(*n.lhs, os); os << " - "; print_node(*n.rhs, os); os << ')'; return;
        case Op::Mul: os << '('; print_node(*n.lhs, os); os << " * "; print_node(*n.rhs, os); os << ')'; return;
        case Op::Div: os << '('; print_node(*n.lhs, os); os << " / "; print_node(*n.rhs, os); os << ')'; return;
        case Op::Pow: print_node(*n.lhs, os); os << '^' << n.exponent; return;
        case Op::Neg: os << "-("; print_node(*n.lhs, os); os << ')'; return;
        case Op::Sin: os << "sin("; print_node(*n.lhs, os); os << ')'; return;
        case Op::Cos: os << "cos("; print_node(*n.lhs, os); os << ')'; return;
        case Op::Exp: os << "exp("; print_node(*n.lhs, os); os << ')'; return;
    }
}

// recursive-descent parser
class Parser {
public:
    Parser(std::string_view src, std::string_view var) : src_(src), var_(var) {}

    NodePtr parse() {
        NodePtr e = expr();
        skip_ws();
        if (pos_ != src_.size())
            fail("trailing input");
        return e;
    }

private:
    std::string_view src_, var_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) {
        std::ostringstream os;
        os << "parse error at offset " << pos_ << ": " << what;
        throw ExprParseError(os.str());
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) { ++pos_; return true; }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    NodePtr expr() {
        NodePtr lhs = term();
        for (;;) {
            if (accept('+')) lhs = make_bin(Op::Add, lhs, term());
            else if (accept('-')) lhs = make_bin(Op::Sub, lhs, term());
            else return lhs;
        }
    }

    NodePtr term() {
        NodePtr lhs = unary();
        for (;;) {
            if (accept('*')) lhs = make_bin(Op::Mul, lhs, unary());
            else if (accept('/')) lhs = make_bin(Op::Div, lhs, unary());
            else return lhs;
        }
    }

    NodePtr unary() {
        if (accept('-')) return make_unary(Op::Neg, unary());
        return power();
    }

    NodePtr power() {
        NodePtr base = primary();
        if (accept('^')) {
            bool neg = accept('-');
            skip_ws();
            size_t start = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            if (pos_ == start) fail("expected integer exponent after '^'");
            int n = std::stoi(std::string(src_.substr(start, pos_ - start)));
            return make_pow(base, neg ? -n : n);
        }
        return base;
    }

    NodePtr primary() {
        skip_ws();
        if (accept('(')) {
            NodePtr e = expr();
            if (!accept(')')) fail("expected ')'");
            return e;
        }
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return ident();
        fail("expected number, variable, function call, or '('");
    }

    NodePtr number() {
        size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.' ||
                src_[pos_] == 'e' || src_[pos_] == 'E' ||
                ((src_[pos_] == '+' || src_[pos_] == '-') &&
                 (src_[pos_ - 1] == 'e' || src_[pos_ - 1] == 'E'))))
            ++pos_;
        try {
            size_t used = 0;
            std::string tok(src_.substr(start, pos_ - start));
            double v = std::stod(tok, &used);
            if (used != tok.size()) { pos_ = start; fail("malformed number"); }
            return make_const(v);
        } catch (const std::exception&) {
            pos_ = start;
            fail("malformed number");
        }
    }

    NodePtr ident() {
        size_t start = pos_;
        while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        std::string_view name = src_.substr(start, pos_ - start);
        if (name == var_) return make_var();
        if (name == "pi") return make_const(std::numbers::pi);
        if (name == "sin" || name == "cos" || name == "exp") {
            if (!accept('(')) fail("expected '(' after function name");
            NodePtr arg = expr();
            if (!accept(')')) fail("expected ')'");
            if (name == "sin") return make_unary(Op::Sin, arg);
            if (name == "cos") return make_unary(Op::Cos, arg);
            return make_unary(Op::Exp, arg);
        }
        pos_ = start;
        fail("unknown identifier '" + std::string(name) + "'");
    }
};

} // namespace detail

using detail::NodePtr;

ScalarExpr::ScalarExpr() : root_(detail::make_const(0.0)) {}
ScalarExpr::ScalarExpr(NodePtr root) : root_(std::move(root)) {}

ScalarExpr ScalarExpr::constant(double c) { return ScalarExpr(detail::make_const(c)); }
ScalarExpr ScalarExpr::variable() { return ScalarExpr(detail::make_var()); }

ScalarExpr ScalarExpr::parse(std::string_view src, std::string_view var_name) {
    detail::Parser p(src, var_name);
    return ScalarExpr(p.parse());
}

double ScalarExpr::eval(double u) const {
    double v = detail::eval_node(*root_, u);
    if (!std::isfinite(v)) throw ExprEvalError("non-finite expression value");
    return v;
}

ScalarExpr ScalarExpr::derivative() const { return ScalarExpr(detail::diff_node(root_)); }

bool ScalarExpr::is_constant(double* value) const {
    double c;
    if (detail::const_val(root_, c)) {
        if (value) *value = c;
        return true;
    }
    return false;
}

std::string ScalarExpr::to_string() const {
    std::ostringstream os;
    detail::print_node(*root_, os);
    return os.str();
}

ScalarExpr ScalarExpr::operator+(const ScalarExpr& o) const {
    return ScalarExpr(detail::make_bin(detail::Op::Add, root_, o.root_));
}
ScalarExpr ScalarExpr::operator-(const ScalarExpr& o) const {
    return ScalarExpr(detail::make_bin(detail::Op::Sub, root_, o.root_));
}
ScalarExpr ScalarExpr::operator*(const ScalarExpr& o) const {
    return ScalarExpr(detail::make_bin(detail::Op::Mul, root_, o.root_));
}
ScalarExpr ScalarExpr::operator/(const ScalarExpr& o) const {
    return ScalarExpr(detail::make_bin(detail::Op::Div, root_, o.root_));
}

ScalarExpr sin(const ScalarExpr& e) { return ScalarExpr(detail::make_unary(detail::Op::Sin, e.root_)); }
ScalarExpr cos(const ScalarExpr& e) { return ScalarExpr(detail::make_unary(detail::Op::Cos, e.root_)); }
ScalarExpr exp(const ScalarExpr& e) { return ScalarExpr(detail::make_unary(detail::Op::Exp, e.root_)); }
ScalarExpr pow(const ScalarExpr& e, int n) { return ScalarExpr(detail::make_pow(e.root_, n)); }

} // namespace ruledkit
