#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "lazyreal/complex.hpp"
#include "lazyreal/creal.hpp"

namespace lazyreal::cli {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Exact rational literal num/den, reduced, den > 0.
struct Literal {
    mpz_class num;
    mpz_class den;
};
struct Variable {};
struct PiConstant {};
struct Negate {
    ExprPtr arg;
};
struct Binary {
    char op; ///< one of + - * /
    ExprPtr lhs;
    ExprPtr rhs;
    std::size_t column = 0; ///< 1-based source column of the operator
};
struct Call {
    std::string name; ///< max, abs, sqrt, csqrt
    std::vector<ExprPtr> args;
};

struct Expr {
    std::variant<Literal, Variable, PiConstant, Negate, Binary, Call> node;
};

/// Structural equality; source columns are ignored.
bool operator==(const Expr& a, const Expr& b);

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t column, const std::string& message)
        : std::runtime_error("parse error at column " + std::to_string(column) + ": " + message), column_(column)
    {
    }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t column_;
};

/// Type or arity misuse found while evaluating (e.g. dividing by a complex).
class EvalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

ExprPtr parse(std::string_view src);

/// Fully parenthesized rendering that parses back to an equal tree.
std::string render(const Expr& e);

bool uses_variable(const Expr& e);

using Value = std::variant<CReal, Complex>;

/// Evaluate with x bound to `x` (EvalError if x is used but unbound).
Value evaluate(const Expr& e, const std::optional<CReal>& x = std::nullopt);
CReal evaluate_real(const Expr& e, const std::optional<CReal>& x = std::nullopt);

} // namespace lazyreal::cli
