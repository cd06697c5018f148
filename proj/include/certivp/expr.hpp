#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace certivp {

/// Arithmetic expression in the variables t and x, parsed from problem
/// files so right-hand sides need not be compiled in.
///
/// Syntax: numeric literals, `t`, `x`, the constants `pi` and `e`, binary
/// + - * / ^, unary minus, parentheses, and the one-argument functions
/// sin, cos, exp, log, abs, sqrt. `^` binds tightest and is
/// right-associative, then unary minus, then * and /, then + and -
/// (both left-associative). Whitespace is insignificant.
class Expr {
public:
    /// Parses source text. Throws ParseError carrying the byte offset of the
    /// first offending character.
    static Expr parse(std::string_view src);

    /// Evaluates at (t, x). Throws EvalError, naming the source position of
    /// the failing node, whenever an intermediate result is non-finite
    /// (division by zero, log of a non-positive number, square root of a
    /// negative number, fractional power of a negative base).
    double eval(double t, double x) const;

    /// Canonical text form: parse(to_string()) reproduces this expression.
    std::string to_string() const;

private:
    enum class Op : std::uint8_t {
        literal,
        var_t,
        var_x,
        add,
        sub,
        mul,
        div,
        pow,
        neg,
        fn_sin,
        fn_cos,
        fn_exp,
        fn_log,
        fn_abs,
        fn_sqrt,
    };

    struct Node {
        Op op;
        double value = 0.0;     // literal payload
        std::int32_t lhs = -1;  // child indices into nodes_
        std::int32_t rhs = -1;
        std::uint32_t pos = 0;  // byte offset in the source text
    };

    struct Parser;

    Expr() = default;

    double eval_node(std::int32_t idx, double t, double x) const;
    void print_node(std::int32_t idx, std::string& out) const;

    std::vector<Node> nodes_;
    std::int32_t root_ = -1;
};

}  // namespace certivp
