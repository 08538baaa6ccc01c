#include "pdm/expression.hpp"

#include "pdm/errors.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <string>
#include <vector>

namespace pdm {

namespace detail {

enum class Op { number, variable, add, sub, mul, div, pow, neg, call };

enum class Func { exp, ln, sin, cos, sqrt, abs };

struct ExprNode {
    Op op;
    double value = 0.0;       // Op::number
    Func func = Func::exp;    // Op::call
    std::size_t pos = 0;      // source offset, for evaluation diagnostics
    std::shared_ptr<const ExprNode> lhs, rhs;
};

} // namespace detail

namespace {

using detail::ExprNode;
using detail::Func;
using detail::Op;
using NodePtr = std::shared_ptr<const ExprNode>;

NodePtr make_node(ExprNode n) { return std::make_shared<const ExprNode>(std::move(n)); }

struct Token {
    enum class Kind { number, ident, op, lparen, rparen, end };
    Kind kind;
    std::size_t pos;
    double number = 0.0;
    char op = 0;
    std::string ident;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) { advance(); }

    const Token& peek() const { return current_; }
    Token take() {
        Token t = current_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        current_.pos = pos_;
        if (pos_ >= text_.size()) {
            current_.kind = Token::Kind::end;
            return;
        }
        char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
            lex_number();
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            current_.kind = Token::Kind::ident;
            current_.ident = std::string(text_.substr(start, pos_ - start));
            return;
        }
        switch (c) {
        case '+': case '-': case '*': case '/': case '^':
            current_.kind = Token::Kind::op;
            current_.op = c;
            ++pos_;
            return;
        case '(':
            current_.kind = Token::Kind::lparen;
            ++pos_;
            return;
        case ')':
            current_.kind = Token::Kind::rparen;
            ++pos_;
            return;
        default:
            throw ParseError(pos_, std::string("unexpected character '") + c + "'");
        }
    }

    void lex_number() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t mark = pos_;
            ++pos_;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            } else {
                pos_ = mark; // bare 'e' belongs to the next token
            }
        }
        std::string lit(text_.substr(start, pos_ - start));
        current_.kind = Token::Kind::number;
        current_.number = std::strtod(lit.c_str(), nullptr);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    Token current_{};
};

class Parser {
public:
    Parser(std::string_view text, std::string_view var) : lex_(text), var_(var) {}

    NodePtr parse() {
        NodePtr root = parse_expr();
        const Token& t = lex_.peek();
        if (t.kind != Token::Kind::end)
            throw ParseError(t.pos, "unexpected trailing input");
        return root;
    }

private:
    NodePtr parse_expr() {
        NodePtr left = parse_term();
        while (lex_.peek().kind == Token::Kind::op &&
               (lex_.peek().op == '+' || lex_.peek().op == '-')) {
            Token t = lex_.take();
            NodePtr right = parse_term();
            left = make_node({t.op == '+' ? Op::add : Op::sub, 0.0, Func::exp, t.pos, left, right});
        }
        return left;
    }

    NodePtr parse_term() {
        NodePtr left = parse_factor();
        while (lex_.peek().kind == Token::Kind::op &&
               (lex_.peek().op == '*' || lex_.peek().op == '/')) {
            Token t = lex_.take();
            NodePtr right = parse_factor();
            left = make_node({t.op == '*' ? Op::mul : Op::div, 0.0, Func::exp, t.pos, left, right});
        }
        return left;
    }

    NodePtr parse_factor() {
        if (lex_.peek().kind == Token::Kind::op && lex_.peek().op == '-') {
            Token t = lex_.take();
            NodePtr operand = parse_factor(); // binds looser than '^': -x^2 = -(x^2)
            return make_node({Op::neg, 0.0, Func::exp, t.pos, operand, nullptr});
        }
        NodePtr b = parse_base();
        if (lex_.peek().kind == Token::Kind::op && lex_.peek().op == '^') {
            Token t = lex_.take();
            NodePtr exp = parse_factor(); // right-associative
            return make_node({Op::pow, 0.0, Func::exp, t.pos, b, exp});
        }
        return b;
    }

    NodePtr parse_base() {
        Token t = lex_.take();
        switch (t.kind) {
        case Token::Kind::number:
            return make_node({Op::number, t.number, Func::exp, t.pos, nullptr, nullptr});
        case Token::Kind::lparen: {
            NodePtr inner = parse_expr();
            expect_rparen();
            return inner;
        }
        case Token::Kind::ident: {
            if (t.ident == var_)
                return make_node({Op::variable, 0.0, Func::exp, t.pos, nullptr, nullptr});
            Func f;
            if (t.ident == "exp") f = Func::exp;
            else if (t.ident == "ln") f = Func::ln;
            else if (t.ident == "sin") f = Func::sin;
            else if (t.ident == "cos") f = Func::cos;
            else if (t.ident == "sqrt") f = Func::sqrt;
            else if (t.ident == "abs") f = Func::abs;
            else
                throw ParseError(t.pos, "unknown identifier '" + t.ident + "' (variable is '" +
                                            std::string(var_) + "')");
            if (lex_.peek().kind != Token::Kind::lparen)
                throw ParseError(lex_.peek().pos, "expected '(' after function '" + t.ident + "'");
            lex_.take();
            NodePtr arg = parse_expr();
            expect_rparen();
            return make_node({Op::call, 0.0, f, t.pos, arg, nullptr});
        }
        case Token::Kind::end:
            throw ParseError(t.pos, "unexpected end of input");
        default:
            throw ParseError(t.pos, "expected a number, variable, function call or '('");
        }
    }

    void expect_rparen() {
        const Token& t = lex_.peek();
        if (t.kind != Token::Kind::rparen)
            throw ParseError(t.pos, "expected ')'");
        lex_.take();
    }

    Lexer lex_;
    std::string_view var_;
};

[[noreturn]] void eval_fail(const ExprNode& n, const std::string& why) {
    throw EvalError(why + " (at offset " + std::to_string(n.pos) + ")");
}

double eval_node(const ExprNode& n, double x) {
    switch (n.op) {
    case Op::number:
        return n.value;
    case Op::variable:
        return x;
    case Op::add:
        return eval_node(*n.lhs, x) + eval_node(*n.rhs, x);
    case Op::sub:
        return eval_node(*n.lhs, x) - eval_node(*n.rhs, x);
    case Op::mul:
        return eval_node(*n.lhs, x) * eval_node(*n.rhs, x);
    case Op::div: {
        double d = eval_node(*n.rhs, x);
        if (d == 0.0) eval_fail(n, "division by zero");
        return eval_node(*n.lhs, x) / d;
    }
    case Op::pow: {
        double b = eval_node(*n.lhs, x);
        double e = eval_node(*n.rhs, x);
        if (b == 0.0 && e < 0.0) eval_fail(n, "zero raised to a negative power");
        double r = std::pow(b, e);
        if (std::isnan(r)) eval_fail(n, "negative base with non-integer exponent");
        return r;
    }
    case Op::neg:
        return -eval_node(*n.lhs, x);
    case Op::call: {
        double a = eval_node(*n.lhs, x);
        switch (n.func) {
        case Func::exp:
            return std::exp(a);
        case Func::ln:
            if (a <= 0.0) eval_fail(n, "ln of a non-positive argument");
            return std::log(a);
        case Func::sin:
            return std::sin(a);
        case Func::cos:
            return std::cos(a);
        case Func::sqrt:
            if (a < 0.0) eval_fail(n, "sqrt of a negative argument");
            return std::sqrt(a);
        case Func::abs:
            return std::fabs(a);
        }
        eval_fail(n, "unknown function");
    }
    }
    eval_fail(n, "corrupt expression node");
}

} // namespace

Expression Expression::parse(std::string_view text, std::string_view var_name) {
    Expression e;
    e.text_ = std::string(text);
    e.var_ = std::string(var_name);
    e.root_ = Parser(text, var_name).parse();
    return e;
}

double Expression::eval(double x) const {
    double r = eval_node(*root_, x);
    if (!std::isfinite(r))
        throw EvalError("non-finite result evaluating '" + text_ + "' at " + var_ + " = " +
                        std::to_string(x));
    return r;
}

} // namespace pdm
