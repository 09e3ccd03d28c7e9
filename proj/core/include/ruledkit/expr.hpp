#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ruledkit {

struct ExprParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExprEvalError : std::domain_error {
    using std::domain_error::domain_error;
};

namespace detail {
struct ExprNode;
}

// Closed-form real function of one variable, exact under differentiation.
// Grammar (infix): + - * /, ^ with integer exponent, sin cos exp, unary
// minus, parentheses, "pi". Immutable; nodes are shared.
class ScalarExpr {
public:
    ScalarExpr(); // the constant 0

    static ScalarExpr constant(double c);
    static ScalarExpr variable();

    // var_name is the spelling of the variable in the source text.
    static ScalarExpr parse(std::string_view src, std::string_view var_name = "u");

    double eval(double u) const; // throws ExprEvalError on non-finite result
    ScalarExpr derivative() const;
    bool is_constant(double* value = nullptr) const;
    std::string to_string() const;

    ScalarExpr operator+(const ScalarExpr& o) const;
    ScalarExpr operator-(const ScalarExpr& o) const;
    ScalarExpr operator*(const ScalarExpr& o) const;
    ScalarExpr operator/(const ScalarExpr& o) const;

private:
    explicit ScalarExpr(std::shared_ptr<const detail::ExprNode> root);
    std::shared_ptr<const detail::ExprNode> root_;

    friend ScalarExpr sin(const ScalarExpr&);
    friend ScalarExpr cos(const ScalarExpr&);
    friend ScalarExpr exp(const ScalarExpr&);
    friend ScalarExpr pow(const ScalarExpr&, int);
};

ScalarExpr sin(const ScalarExpr& e);
ScalarExpr cos(const ScalarExpr& e);
ScalarExpr exp(const ScalarExpr& e);
ScalarExpr pow(const ScalarExpr& e, int n);

} // namespace ruledkit
