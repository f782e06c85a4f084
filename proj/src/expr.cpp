#include "uhrfrac/expr.hpp"

#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <utility>
#include <vector>

#include "uhrfrac/errors.hpp"
#include "uhrfrac/mittag_leffler.hpp"
#include "uhrfrac/psi.hpp"

namespace uhrfrac {

namespace detail {

enum class NodeKind { Number, Variable, Negate, Binary, Abs, Psi, MittagLeffler, Power };

struct ExprNode {
    NodeKind kind;
    std::size_t position = 0;  // source offset of the node's token
    double number = 0.0;       // literal, mitlef alpha, or pow exponent
    ExprVar variable = ExprVar::T;
    char op = '+';
    NodePtr lhs;
    NodePtr rhs;
};

namespace {

NodePtr clone(const NodePtr& node) {
    if (!node) {
        return nullptr;
    }
    auto copy = std::make_unique<ExprNode>();
    copy->kind = node->kind;
    copy->position = node->position;
    copy->number = node->number;
    copy->variable = node->variable;
    copy->op = node->op;
    copy->lhs = clone(node->lhs);
    copy->rhs = clone(node->rhs);
    return copy;
}

double eval(const ExprNode& node, const EvalContext& ctx) {
    switch (node.kind) {
        case NodeKind::Number:
            return node.number;
        case NodeKind::Variable:
            switch (node.variable) {
                case ExprVar::T: return ctx.t;
                case ExprVar::X: return ctx.x;
                case ExprVar::W: return ctx.w;
            }
            break;
        case NodeKind::Negate:
            return -eval(*node.lhs, ctx);
        case NodeKind::Binary: {
            const double a = eval(*node.lhs, ctx);
            const double b = eval(*node.rhs, ctx);
            switch (node.op) {
                case '+': return a + b;
                case '-': return a - b;
                case '*': return a * b;
                case '/':
                    if (b == 0.0) {
                        throw EvalError("division by zero", node.position);
                    }
                    return a / b;
            }
            break;
        }
        case NodeKind::Abs:
            return std::abs(eval(*node.lhs, ctx));
        case NodeKind::Psi: {
            if (ctx.psi == nullptr) {
                throw EvalError("psi(...) used without a bound psi function",
                                node.position);
            }
            try {
                return ctx.psi->value(eval(*node.lhs, ctx));
            } catch (const DomainError& e) {
                throw EvalError(e.what(), node.position);
            }
        }
        case NodeKind::MittagLeffler: {
            try {
                return mittag_leffler(node.number, eval(*node.lhs, ctx), 1e-14);
            } catch (const DomainError& e) {
                throw EvalError(e.what(), node.position);
            } catch (const ConvergenceError& e) {
                throw EvalError(e.what(), node.position);
            }
        }
        case NodeKind::Power: {
            const double base = eval(*node.lhs, ctx);
            const double p = node.number;
            if (base < 0.0 && p != std::floor(p)) {
                throw EvalError("pow of a negative base with a non-integer exponent",
                                node.position);
            }
            if (base == 0.0 && p < 0.0) {
                throw EvalError("pow of zero with a negative exponent",
                                node.position);
            }
            return std::pow(base, p);
        }
    }
    throw EvalError("malformed expression node", node.position);
}

void format_number(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

void print(const ExprNode& node, std::string& out) {
    switch (node.kind) {
        case NodeKind::Number:
            format_number(out, node.number);
            return;
        case NodeKind::Variable:
            out += (node.variable == ExprVar::T   ? 't'
                    : node.variable == ExprVar::X ? 'x'
                                                  : 'w');
            return;
        case NodeKind::Negate:
            out += "(-";
            print(*node.lhs, out);
            out += ')';
            return;
        case NodeKind::Binary:
            out += '(';
            print(*node.lhs, out);
            out += node.op;
            print(*node.rhs, out);
            out += ')';
            return;
        case NodeKind::Abs:
            out += "abs(";
            print(*node.lhs, out);
            out += ')';
            return;
        case NodeKind::Psi:
            out += "psi(";
            print(*node.lhs, out);
            out += ')';
            return;
        case NodeKind::MittagLeffler:
            out += "mitlef(";
            format_number(out, node.number);
            out += ',';
            print(*node.lhs, out);
            out += ')';
            return;
        case NodeKind::Power:
            out += "pow(";
            print(*node.lhs, out);
            out += ',';
            format_number(out, node.number);
            out += ')';
            return;
    }
}

bool bits_equal(double a, double b) {
    return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

bool equal(const ExprNode* a, const ExprNode* b) {
    if (a == nullptr || b == nullptr) {
        return a == b;
    }
    if (a->kind != b->kind) {
        return false;
    }
    switch (a->kind) {
        case NodeKind::Number:
            return bits_equal(a->number, b->number);
        case NodeKind::Variable:
            return a->variable == b->variable;
        case NodeKind::Binary:
            if (a->op != b->op) {
                return false;
            }
            break;
        case NodeKind::MittagLeffler:
        case NodeKind::Power:
            if (!bits_equal(a->number, b->number)) {
                return false;
            }
            break;
        default:
            break;
    }
    return equal(a->lhs.get(), b->lhs.get()) && equal(a->rhs.get(), b->rhs.get());
}

bool mentions(const ExprNode* node, ExprVar v) {
    if (node == nullptr) {
        return false;
    }
    if (node->kind == NodeKind::Variable && node->variable == v) {
        return true;
    }
    return mentions(node->lhs.get(), v) || mentions(node->rhs.get(), v);
}

// ---------------------------------------------------------------------
// Recursive-descent parser. Internal failures throw ParseFailure, which
// the entry point converts into the ParseError value.
// ---------------------------------------------------------------------

struct ParseFailure {
    ParseError error;
};

[[noreturn]] void fail(std::size_t position, std::string message) {
    throw ParseFailure{ParseError{position, std::move(message)}};
}

struct Token {
    enum class Kind { Number, Ident, Plus, Minus, Star, Slash, LParen, RParen, Comma, End };
    Kind kind;
    std::size_t position;
    double number = 0.0;
    std::string text;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const noexcept { return current_; }

    Token take() {
        Token t = std::move(current_);
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < src_.size() &&
               std::isspace(static_cast<unsigned char>(src_[pos_]))) {
            ++pos_;
        }
        const std::size_t start = pos_;
        if (pos_ >= src_.size()) {
            current_ = {Token::Kind::End, start, 0.0, {}};
            return;
        }
        const char c = src_[pos_];
        switch (c) {
            case '+': current_ = {Token::Kind::Plus, start, 0.0, {}}; ++pos_; return;
            case '-': current_ = {Token::Kind::Minus, start, 0.0, {}}; ++pos_; return;
            case '*': current_ = {Token::Kind::Star, start, 0.0, {}}; ++pos_; return;
            case '/': current_ = {Token::Kind::Slash, start, 0.0, {}}; ++pos_; return;
            case '(': current_ = {Token::Kind::LParen, start, 0.0, {}}; ++pos_; return;
            case ')': current_ = {Token::Kind::RParen, start, 0.0, {}}; ++pos_; return;
            case ',': current_ = {Token::Kind::Comma, start, 0.0, {}}; ++pos_; return;
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t end = pos_;
            while (end < src_.size() &&
                   std::isdigit(static_cast<unsigned char>(src_[end]))) {
                ++end;
            }
            if (end < src_.size() && src_[end] == '.') {
                ++end;
                while (end < src_.size() &&
                       std::isdigit(static_cast<unsigned char>(src_[end]))) {
                    ++end;
                }
            }
            if (end < src_.size() && (src_[end] == 'e' || src_[end] == 'E')) {
                std::size_t exp = end + 1;
                if (exp < src_.size() && (src_[exp] == '+' || src_[exp] == '-')) {
                    ++exp;
                }
                if (exp < src_.size() &&
                    std::isdigit(static_cast<unsigned char>(src_[exp]))) {
                    end = exp;
                    while (end < src_.size() &&
                           std::isdigit(static_cast<unsigned char>(src_[end]))) {
                        ++end;
                    }
                }
            }
            const std::string text(src_.substr(pos_, end - pos_));
            if (text == ".") {
                fail(start, "malformed number");
            }
            current_ = {Token::Kind::Number, start, std::strtod(text.c_str(), nullptr), text};
            pos_ = end;
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t end = pos_;
            while (end < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[end])) ||
                    src_[end] == '_')) {
                ++end;
            }
            current_ = {Token::Kind::Ident, start, 0.0,
                        std::string(src_.substr(pos_, end - pos_))};
            pos_ = end;
            return;
        }
        fail(start, std::string("unexpected character '") + c + "'");
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    Token current_{Token::Kind::End, 0, 0.0, {}};
};

class Parser {
public:
    explicit Parser(std::string_view src) : lex_(src) {}

    NodePtr run() {
        NodePtr tree = sum();
        const Token& t = lex_.peek();
        if (t.kind != Token::Kind::End) {
            fail(t.position, "trailing input after expression");
        }
        return tree;
    }

private:
    NodePtr sum() {
        NodePtr lhs = product();
        while (true) {
            const Token& t = lex_.peek();
            if (t.kind != Token::Kind::Plus && t.kind != Token::Kind::Minus) {
                return lhs;
            }
            const Token op = lex_.take();
            lhs = binary(op.kind == Token::Kind::Plus ? '+' : '-', op.position,
                         std::move(lhs), product());
        }
    }

    NodePtr product() {
        NodePtr lhs = factor();
        while (true) {
            const Token& t = lex_.peek();
            if (t.kind != Token::Kind::Star && t.kind != Token::Kind::Slash) {
                return lhs;
            }
            const Token op = lex_.take();
            lhs = binary(op.kind == Token::Kind::Star ? '*' : '/', op.position,
                         std::move(lhs), factor());
        }
    }

    NodePtr factor() {
        if (lex_.peek().kind == Token::Kind::Minus) {
            const Token op = lex_.take();
            auto node = std::make_unique<ExprNode>();
            node->kind = NodeKind::Negate;
            node->position = op.position;
            node->lhs = factor();
            return node;
        }
        return primary();
    }

    NodePtr primary() {
        const Token t = lex_.take();
        switch (t.kind) {
            case Token::Kind::Number: {
                auto node = std::make_unique<ExprNode>();
                node->kind = NodeKind::Number;
                node->position = t.position;
                node->number = t.number;
                return node;
            }
            case Token::Kind::LParen: {
                NodePtr inner = sum();
                expect(Token::Kind::RParen, "expected ')'");
                return inner;
            }
            case Token::Kind::Ident:
                return identifier(t);
            default:
                fail(t.position, "expected a number, variable, function, or '('");
        }
    }

    NodePtr identifier(const Token& t) {
        auto node = std::make_unique<ExprNode>();
        node->position = t.position;
        if (t.text == "t" || t.text == "x" || t.text == "w") {
            node->kind = NodeKind::Variable;
            node->variable = t.text == "t"   ? ExprVar::T
                             : t.text == "x" ? ExprVar::X
                                             : ExprVar::W;
            return node;
        }
        if (t.text == "abs" || t.text == "psi") {
            node->kind = t.text == "abs" ? NodeKind::Abs : NodeKind::Psi;
            expect(Token::Kind::LParen, "expected '(' after function name");
            node->lhs = sum();
            expect(Token::Kind::RParen, "expected ')'");
            return node;
        }
        if (t.text == "mitlef") {
            node->kind = NodeKind::MittagLeffler;
            expect(Token::Kind::LParen, "expected '(' after function name");
            node->number = literal("mitlef needs a literal order");
            expect(Token::Kind::Comma, "expected ',' in mitlef(order, e)");
            node->lhs = sum();
            expect(Token::Kind::RParen, "expected ')'");
            return node;
        }
        if (t.text == "pow") {
            node->kind = NodeKind::Power;
            expect(Token::Kind::LParen, "expected '(' after function name");
            node->lhs = sum();
            expect(Token::Kind::Comma, "expected ',' in pow(e, exponent)");
            node->number = literal("pow needs a literal exponent");
            expect(Token::Kind::RParen, "expected ')'");
            return node;
        }
        fail(t.position, "unknown identifier '" + t.text + "'");
    }

    // A literal argument slot: a number, optionally negated.
    double literal(const char* what) {
        bool negate = false;
        if (lex_.peek().kind == Token::Kind::Minus) {
            lex_.take();
            negate = true;
        }
        const Token t = lex_.take();
        if (t.kind != Token::Kind::Number) {
            fail(t.position, what);
        }
        return negate ? -t.number : t.number;
    }

    void expect(Token::Kind kind, const char* message) {
        const Token t = lex_.take();
        if (t.kind != kind) {
            fail(t.position, message);
        }
    }

    static NodePtr binary(char op, std::size_t position, NodePtr lhs, NodePtr rhs) {
        auto node = std::make_unique<ExprNode>();
        node->kind = NodeKind::Binary;
        node->op = op;
        node->position = position;
        node->lhs = std::move(lhs);
        node->rhs = std::move(rhs);
        return node;
    }

    Lexer lex_;
};

}  // namespace
}  // namespace detail

Expression::Expression(const Expression& other)
    : root_(detail::clone(other.root_)) {}

Expression& Expression::operator=(const Expression& other) {
    if (this != &other) {
        root_ = detail::clone(other.root_);
    }
    return *this;
}

Expression::Expression() = default;
Expression::Expression(Expression&&) noexcept = default;
Expression& Expression::operator=(Expression&&) noexcept = default;
Expression::~Expression() = default;

double Expression::evaluate(const EvalContext& ctx) const {
    if (!root_) {
        throw EvalError("evaluating an empty expression", 0);
    }
    return detail::eval(*root_, ctx);
}

std::string Expression::to_string() const {
    std::string out;
    if (root_) {
        detail::print(*root_, out);
    }
    return out;
}

bool Expression::structurally_equal(const Expression& other) const {
    return detail::equal(root_.get(), other.root_.get());
}

bool Expression::references(ExprVar v) const {
    return detail::mentions(root_.get(), v);
}

std::variant<Expression, ParseError> parse_expression(std::string_view source) {
    try {
        detail::Parser parser(source);
        Expression e;
        e.root_ = parser.run();
        return e;
    } catch (const detail::ParseFailure& f) {
        return f.error;
    }
}

}  // namespace uhrfrac
