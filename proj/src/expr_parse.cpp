#include "paralab/expr_parse.hpp"

#include <cctype>
#include <charconv>
#include <optional>
#include <sstream>

namespace paralab {
namespace {

constexpr int kMaxDepth = 200;

struct Token {
    enum Kind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };
    Kind kind = End;
    size_t offset = 0;
    double number = 0.0;
    std::string text;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
        Token t;
        t.offset = pos_;
        if (pos_ >= src_.size()) {
            t.kind = Token::End;
            return t;
        }
        const char c = src_[pos_];
        switch (c) {
            case '+': t.kind = Token::Plus; ++pos_; return t;
            case '-': t.kind = Token::Minus; ++pos_; return t;
            case '*': t.kind = Token::Star; ++pos_; return t;
            case '/': t.kind = Token::Slash; ++pos_; return t;
            case '^': t.kind = Token::Caret; ++pos_; return t;
            case '(': t.kind = Token::LParen; ++pos_; return t;
            case ')': t.kind = Token::RParen; ++pos_; return t;
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return lex_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                ++pos_;
            t.kind = Token::Ident;
            t.text = std::string(src_.substr(start, pos_ - start));
            return t;
        }
        std::ostringstream os;
        os << "unexpected character '" << c << "'";
        throw ParseError(os.str(), pos_);
    }

private:
    Token lex_number() {
        const size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                ++pos_;
        }
        if (pos_ - start == 1 && src_[start] == '.')
            throw ParseError("malformed number", start);
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            size_t exp_pos = pos_ + 1;
            if (exp_pos < src_.size() && (src_[exp_pos] == '+' || src_[exp_pos] == '-'))
                ++exp_pos;
            if (exp_pos < src_.size() && std::isdigit(static_cast<unsigned char>(src_[exp_pos]))) {
                pos_ = exp_pos;
                while (pos_ < src_.size() &&
                       std::isdigit(static_cast<unsigned char>(src_[pos_])))
                    ++pos_;
            }
        }
        const std::string_view digits = src_.substr(start, pos_ - start);
        double value = 0.0;
        const auto res = std::from_chars(digits.data(), digits.data() + digits.size(), value);
        if (res.ec != std::errc() || res.ptr != digits.data() + digits.size())
            throw ParseError("malformed number", start);
        Token t;
        t.kind = Token::Number;
        t.offset = start;
        t.number = value;
        return t;
    }

    std::string_view src_;
    size_t pos_ = 0;
};

std::optional<FieldFunc> function_by_name(std::string_view name) {
    for (int f = static_cast<int>(FieldFunc::Exp); f <= static_cast<int>(FieldFunc::Sqrt);
         ++f)
        if (name == field_func_name(static_cast<FieldFunc>(f)))
            return static_cast<FieldFunc>(f);
    return std::nullopt;
}

class Parser {
public:
    Parser(std::string_view src, std::span<const std::string> coords)
        : lexer_(src), coords_(coords) {
        advance();
    }

    FieldNodePtr parse() {
        FieldNodePtr e = expr(0);
        if (cur_.kind != Token::End)
            throw ParseError("unexpected trailing input", cur_.offset);
        return e;
    }

private:
    void advance() { cur_ = lexer_.next(); }

    void check_depth(int depth) const {
        if (depth > kMaxDepth)
            throw ParseError("expression too deeply nested", cur_.offset);
    }

    FieldNodePtr expr(int depth) {
        check_depth(depth);
        FieldNodePtr lhs = term(depth + 1);
        while (cur_.kind == Token::Plus || cur_.kind == Token::Minus) {
            const FieldOp op = cur_.kind == Token::Plus ? FieldOp::Add : FieldOp::Sub;
            advance();
            lhs = raw_node(op, lhs, term(depth + 1));
        }
        return lhs;
    }

    FieldNodePtr term(int depth) {
        check_depth(depth);
        FieldNodePtr lhs = unary(depth + 1);
        while (cur_.kind == Token::Star || cur_.kind == Token::Slash) {
            const FieldOp op = cur_.kind == Token::Star ? FieldOp::Mul : FieldOp::Div;
            advance();
            lhs = raw_node(op, lhs, unary(depth + 1));
        }
        return lhs;
    }

    FieldNodePtr unary(int depth) {
        check_depth(depth);
        if (cur_.kind == Token::Minus) {
            advance();
            return raw_node(FieldOp::Neg, unary(depth + 1), nullptr);
        }
        return power(depth + 1);
    }

    FieldNodePtr power(int depth) {
        check_depth(depth);
        FieldNodePtr base = atom(depth + 1);
        if (cur_.kind == Token::Caret) {
            advance();
            return raw_node(FieldOp::Pow, base, unary(depth + 1));
        }
        return base;
    }

    FieldNodePtr atom(int depth) {
        check_depth(depth);
        switch (cur_.kind) {
            case Token::Number: {
                FieldNodePtr n = raw_constant(cur_.number);
                advance();
                return n;
            }
            case Token::Ident: {
                const Token ident = cur_;
                advance();
                if (cur_.kind == Token::LParen) {
                    const std::optional<FieldFunc> func = function_by_name(ident.text);
                    if (!func)
                        throw ParseError("unknown function '" + ident.text + "'",
                                         ident.offset);
                    advance();
                    FieldNodePtr arg = expr(depth + 1);
                    expect_rparen();
                    return raw_func(*func, arg);
                }
                for (size_t i = 0; i < coords_.size(); ++i)
                    if (coords_[i] == ident.text)
                        return raw_coordinate(static_cast<int>(i));
                throw ParseError("unknown identifier '" + ident.text + "'", ident.offset);
            }
            case Token::LParen: {
                advance();
                FieldNodePtr e = expr(depth + 1);
                expect_rparen();
                return e;
            }
            case Token::End:
                throw ParseError("expected an expression", cur_.offset);
            default:
                throw ParseError("expected a number, name or '('", cur_.offset);
        }
    }

    void expect_rparen() {
        if (cur_.kind != Token::RParen)
            throw ParseError("expected ')'", cur_.offset);
        advance();
    }

    Lexer lexer_;
    std::span<const std::string> coords_;
    Token cur_;
};

}  // namespace

ParseError::ParseError(const std::string& message, size_t offset)
    : std::runtime_error(message + " at byte " + std::to_string(offset)), offset_(offset) {}

ScalarField parse_expression(std::string_view src, std::span<const std::string> coords) {
    Parser p(src, coords);
    return ScalarField(p.parse());
}

}  // namespace paralab
