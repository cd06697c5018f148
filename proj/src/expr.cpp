#include "certivp/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "certivp/errors.hpp"

namespace certivp {

namespace {

bool is_ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

// Recursive descent with one level per precedence tier.
struct Expr::Parser {
    std::string_view src;
    std::size_t pos = 0;
    std::vector<Node>& nodes;

    explicit Parser(std::string_view s, std::vector<Node>& out) : src(s), nodes(out) {}

    [[noreturn]] void fail(const std::string& message, std::size_t at) const {
        throw ParseError(message, at);
    }

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < src.size() && src[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    std::int32_t make(Op op, std::uint32_t at, std::int32_t lhs = -1, std::int32_t rhs = -1,
                      double value = 0.0) {
        nodes.push_back(Node{op, value, lhs, rhs, at});
        return static_cast<std::int32_t>(nodes.size() - 1);
    }

    std::int32_t parse_sum() {
        std::int32_t lhs = parse_product();
        for (;;) {
            skip_ws();
            const std::size_t at = pos;
            if (eat('+')) {
                lhs = make(Op::add, static_cast<std::uint32_t>(at), lhs, parse_product());
            } else if (eat('-')) {
                lhs = make(Op::sub, static_cast<std::uint32_t>(at), lhs, parse_product());
            } else {
                return lhs;
            }
        }
    }

    std::int32_t parse_product() {
        std::int32_t lhs = parse_unary();
        for (;;) {
            skip_ws();
            const std::size_t at = pos;
            if (eat('*')) {
                lhs = make(Op::mul, static_cast<std::uint32_t>(at), lhs, parse_unary());
            } else if (eat('/')) {
                lhs = make(Op::div, static_cast<std::uint32_t>(at), lhs, parse_unary());
            } else {
                return lhs;
            }
        }
    }

    std::int32_t parse_unary() {
        skip_ws();
        const std::size_t at = pos;
        if (eat('-')) {
            return make(Op::neg, static_cast<std::uint32_t>(at), parse_unary());
        }
        return parse_power();
    }

    // `^` is right-associative; the exponent re-enters the unary tier so
    // forms like 2^-3 parse.
    std::int32_t parse_power() {
        std::int32_t base = parse_primary();
        skip_ws();
        const std::size_t at = pos;
        if (eat('^')) {
            return make(Op::pow, static_cast<std::uint32_t>(at), base, parse_unary());
        }
        return base;
    }

    std::int32_t parse_primary() {
        skip_ws();
        if (pos >= src.size()) {
            fail("expected a number, variable, function, or '('", pos);
        }
        const std::size_t at = pos;
        const char c = src[pos];

        if (c == '(') {
            ++pos;
            const std::int32_t inner = parse_sum();
            if (!eat(')')) fail("expected ')'", pos);
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return parse_number();
        }
        if (is_ident_start(c)) {
            return parse_identifier();
        }
        fail(std::string("unexpected character '") + c + "'", at);
    }

    std::int32_t parse_number() {
        const std::size_t at = pos;
        double value = 0.0;
        const char* first = src.data() + pos;
        const char* last = src.data() + src.size();
        const auto [end, ec] = std::from_chars(first, last, value, std::chars_format::general);
        if (ec != std::errc{} || end == first) {
            fail("malformed number", at);
        }
        pos += static_cast<std::size_t>(end - first);
        return make(Op::literal, static_cast<std::uint32_t>(at), -1, -1, value);
    }

    std::int32_t parse_identifier() {
        const std::size_t at = pos;
        while (pos < src.size() && is_ident_char(src[pos])) ++pos;
        const std::string_view name = src.substr(at, pos - at);

        if (name == "t") return make(Op::var_t, static_cast<std::uint32_t>(at));
        if (name == "x") return make(Op::var_x, static_cast<std::uint32_t>(at));
        if (name == "pi")
            return make(Op::literal, static_cast<std::uint32_t>(at), -1, -1, std::numbers::pi);
        if (name == "e")
            return make(Op::literal, static_cast<std::uint32_t>(at), -1, -1, std::numbers::e);

        Op fn;
        if (name == "sin") fn = Op::fn_sin;
        else if (name == "cos") fn = Op::fn_cos;
        else if (name == "exp") fn = Op::fn_exp;
        else if (name == "log") fn = Op::fn_log;
        else if (name == "abs") fn = Op::fn_abs;
        else if (name == "sqrt") fn = Op::fn_sqrt;
        else fail("unknown identifier '" + std::string(name) + "'", at);

        if (!eat('(')) fail("expected '(' after '" + std::string(name) + "'", pos);
        const std::int32_t arg = parse_sum();
        if (!eat(')')) fail("expected ')'", pos);
        return make(fn, static_cast<std::uint32_t>(at), arg);
    }
};

Expr Expr::parse(std::string_view src) {
    Expr e;
    Parser p(src, e.nodes_);
    p.skip_ws();
    if (p.pos >= src.size()) {
        throw ParseError("empty expression", 0);
    }
    e.root_ = p.parse_sum();
    p.skip_ws();
    if (p.pos < src.size()) {
        p.fail("unexpected trailing input", p.pos);
    }
    return e;
}

double Expr::eval(double t, double x) const {
    return eval_node(root_, t, x);
}

double Expr::eval_node(std::int32_t idx, double t, double x) const {
    const Node& n = nodes_[static_cast<std::size_t>(idx)];
    double result;
    switch (n.op) {
        case Op::literal: return n.value;
        case Op::var_t: return t;
        case Op::var_x: return x;
        case Op::add: result = eval_node(n.lhs, t, x) + eval_node(n.rhs, t, x); break;
        case Op::sub: result = eval_node(n.lhs, t, x) - eval_node(n.rhs, t, x); break;
        case Op::mul: result = eval_node(n.lhs, t, x) * eval_node(n.rhs, t, x); break;
        case Op::div: result = eval_node(n.lhs, t, x) / eval_node(n.rhs, t, x); break;
        case Op::pow: {
            const double base = eval_node(n.lhs, t, x);
            const double exponent = eval_node(n.rhs, t, x);
            if (base < 0.0 && exponent != std::trunc(exponent)) {
                throw EvalError("fractional power of a negative base at byte " +
                                std::to_string(n.pos));
            }
            result = std::pow(base, exponent);
            break;
        }
        case Op::neg: result = -eval_node(n.lhs, t, x); break;
        case Op::fn_sin: result = std::sin(eval_node(n.lhs, t, x)); break;
        case Op::fn_cos: result = std::cos(eval_node(n.lhs, t, x)); break;
        case Op::fn_exp: result = std::exp(eval_node(n.lhs, t, x)); break;
        case Op::fn_log: result = std::log(eval_node(n.lhs, t, x)); break;
        case Op::fn_abs: result = std::abs(eval_node(n.lhs, t, x)); break;
        case Op::fn_sqrt: result = std::sqrt(eval_node(n.lhs, t, x)); break;
        default: result = std::numeric_limits<double>::quiet_NaN(); break;
    }
    if (!std::isfinite(result)) {
        throw EvalError("non-finite result at byte " + std::to_string(n.pos) +
                        " (t=" + format_double(t) + ", x=" + format_double(x) + ")");
    }
    return result;
}

namespace {

// Precedence tiers used by the printer; must match the grammar.
enum : int { kSum = 1, kProduct = 2, kUnary = 3, kPower = 4, kPrimary = 5 };

}  // namespace

void Expr::print_node(std::int32_t idx, std::string& out) const {
    const Node& n = nodes_[static_cast<std::size_t>(idx)];

    auto tier = [this](std::int32_t i) {
        switch (nodes_[static_cast<std::size_t>(i)].op) {
            case Op::add:
            case Op::sub: return kSum;
            case Op::mul:
            case Op::div: return kProduct;
            case Op::neg: return kUnary;
            case Op::pow: return kPower;
            default: return kPrimary;
        }
    };
    auto print_child = [&](std::int32_t child, int min_tier) {
        const bool parens = tier(child) < min_tier;
        if (parens) out += '(';
        print_node(child, out);
        if (parens) out += ')';
    };

    switch (n.op) {
        case Op::literal: out += format_double(n.value); return;
        case Op::var_t: out += 't'; return;
        case Op::var_x: out += 'x'; return;
        case Op::add:
        case Op::sub:
            print_child(n.lhs, kSum);
            out += (n.op == Op::add) ? " + " : " - ";
            print_child(n.rhs, kSum + 1);  // re-parse folds left
            return;
        case Op::mul:
        case Op::div:
            print_child(n.lhs, kProduct);
            out += (n.op == Op::mul) ? " * " : " / ";
            print_child(n.rhs, kProduct + 1);
            return;
        case Op::neg:
            out += '-';
            print_child(n.lhs, kUnary);
            return;
        case Op::pow:
            print_child(n.lhs, kPrimary);  // a^b^c and -a^b both bind right
            out += '^';
            print_child(n.rhs, kUnary);
            return;
        case Op::fn_sin: out += "sin("; break;
        case Op::fn_cos: out += "cos("; break;
        case Op::fn_exp: out += "exp("; break;
        case Op::fn_log: out += "log("; break;
        case Op::fn_abs: out += "abs("; break;
        case Op::fn_sqrt: out += "sqrt("; break;
        default: return;
    }
    print_node(n.lhs, out);
    out += ')';
}

std::string Expr::to_string() const {
    std::string out;
    print_node(root_, out);
    return out;
}

}  // namespace certivp
