#ifndef PDM_EXPRESSION_HPP
#define PDM_EXPRESSION_HPP

#include <memory>
#include <string>
#include <string_view>

namespace pdm {

namespace detail {
struct ExprNode;
}

/// A parsed arithmetic expression in a single named variable.
///
/// Grammar:
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := '-' factor | base ('^' factor)?        ('^' right-associative,
///                                                     -x^2 parses as -(x^2))
///   base   := number | var | func '(' expr ')' | '(' expr ')'
///   func   := exp | ln | sin | cos | sqrt | abs
///
/// Parsing throws ParseError with the byte offset of the problem; evaluation
/// throws EvalError on domain violations (ln of a non-positive value,
/// division by zero, non-finite results).
class Expression {
public:
    static Expression parse(std::string_view text, std::string_view var_name);

    double eval(double x) const;

    const std::string& text() const { return text_; }
    const std::string& var_name() const { return var_; }

private:
    Expression() = default;
    std::shared_ptr<const detail::ExprNode> root_;
    std::string text_;
    std::string var_;
};

} // namespace pdm

#endif
