#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <variant>

namespace uhrfrac {

class PsiFunction;

/// Variables an expression may reference: time, state, and the memory
/// integral passed as the third argument of f and g_i.
enum class ExprVar { T, X, W };

struct ParseError {
    std::size_t position;  // character offset into the source
    std::string message;
};

struct EvalContext {
    double t = 0.0;
    double x = 0.0;
    double w = 0.0;
    const PsiFunction* psi = nullptr;  // required when the tree uses psi(...)
};

namespace detail {
struct ExprNode;
using NodePtr = std::unique_ptr<ExprNode>;
}  // namespace detail

/// Immutable scalar expression over t, x, w with +, -, *, /, unary minus,
/// abs(e), psi(e), mitlef(alpha_literal, e) and pow(e, literal).
/// Evaluation is pure; runtime failures (division by zero, domain errors
/// in nested functions) throw EvalError carrying the source offset.
class Expression {
public:
    Expression();
    Expression(const Expression& other);
    Expression& operator=(const Expression& other);
    Expression(Expression&&) noexcept;
    Expression& operator=(Expression&&) noexcept;
    ~Expression();

    bool valid() const noexcept { return root_ != nullptr; }
    double evaluate(const EvalContext& ctx) const;
    std::string to_string() const;
    bool structurally_equal(const Expression& other) const;
    bool references(ExprVar v) const;

    friend std::variant<Expression, ParseError> parse_expression(
        std::string_view source);

private:
    detail::NodePtr root_;
};

/// Parses `source`; returns the tree or the first error with its offset.
/// The grammar uses standard precedence (unary minus binds tighter than
/// * and /, which bind tighter than + and -), left associativity, and
/// insignificant whitespace. Printing a tree and re-parsing it yields a
/// structurally equal tree.
std::variant<Expression, ParseError> parse_expression(std::string_view source);

}  // namespace uhrfrac
