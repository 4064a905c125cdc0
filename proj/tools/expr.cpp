#include "expr.hpp"

#include <cctype>

#include "lazyreal/algorithms.hpp"

namespace lazyreal::cli {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

ExprPtr make(auto node) { return std::make_shared<const Expr>(Expr{std::move(node)}); }

bool same(const ExprPtr& a, const ExprPtr& b) { return *a == *b; }

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    ExprPtr parse_all()
    {
        ExprPtr e = expression();
        skip_space();
        if (pos_ < src_.size()) {
            fail(std::string("unexpected '") + src_[pos_] + "'");
        }
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& message) const { throw ParseError(pos_ + 1, message); }

    void skip_space()
    {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(char c)
    {
        skip_space();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!accept(c)) {
            fail(pos_ < src_.size() ? std::string("expected '") + c + "'" : std::string("unexpected end of input"));
        }
    }

    ExprPtr expression()
    {
        ExprPtr lhs = term();
        for (;;) {
            skip_space();
            const std::size_t column = pos_ + 1;
            if (accept('+')) {
                lhs = make(Binary{'+', lhs, term(), column});
            } else if (accept('-')) {
                lhs = make(Binary{'-', lhs, term(), column});
            } else {
                return lhs;
            }
        }
    }

    ExprPtr term()
    {
        ExprPtr lhs = unary();
        for (;;) {
            skip_space();
            const std::size_t column = pos_ + 1;
            if (accept('*')) {
                lhs = make(Binary{'*', lhs, unary(), column});
            } else if (accept('/')) {
                lhs = make(Binary{'/', lhs, unary(), column});
            } else {
                return lhs;
            }
        }
    }

    ExprPtr unary()
    {
        if (accept('-')) {
            return make(Negate{unary()});
        }
        return primary();
    }

    ExprPtr primary()
    {
        skip_space();
        if (pos_ >= src_.size()) {
            fail("unexpected end of input");
        }
        const char c = src_[pos_];
        if (accept('(')) {
            ExprPtr inner = expression();
            expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return number();
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            return identifier();
        }
        fail(std::string("unexpected '") + c + "'");
    }

    ExprPtr number()
    {
        const std::size_t start = pos_;
        std::string digits;
        std::size_t frac_digits = 0;
        bool seen_dot = false;
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (std::isdigit(static_cast<unsigned char>(c))) {
                digits.push_back(c);
                frac_digits += seen_dot ? 1 : 0;
            } else if (c == '.' && !seen_dot) {
                seen_dot = true;
            } else {
                break;
            }
            ++pos_;
        }
        if (digits.empty()) {
            pos_ = start;
            fail("malformed number");
        }
        mpz_class num(digits, 10);
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_digits);
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        return make(Literal{num / g, den / g});
    }

    ExprPtr identifier()
    {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_]))) {
            ++pos_;
        }
        const std::string name(src_.substr(start, pos_ - start));
        if (name == "x") {
            return make(Variable{});
        }
        if (name == "pi") {
            return make(PiConstant{});
        }
        std::size_t arity = 0;
        if (name == "abs" || name == "sqrt") {
            arity = 1;
        } else if (name == "max" || name == "csqrt") {
            arity = 2;
        } else {
            pos_ = start;
            fail("unknown identifier '" + name + "'");
        }
        expect('(');
        Call call{name, {}};
        call.args.push_back(expression());
        while (accept(',')) {
            call.args.push_back(expression());
        }
        if (call.args.size() != arity) {
            fail(name + " takes " + std::to_string(arity) + " argument(s)");
        }
        expect(')');
        return make(std::move(call));
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

bool is_finite_decimal(mpz_class den)
{
    for (unsigned long prime : {2UL, 5UL}) {
        while (mpz_divisible_ui_p(den.get_mpz_t(), prime)) {
            mpz_divexact_ui(den.get_mpz_t(), den.get_mpz_t(), prime);
        }
    }
    return den == 1;
}

std::string render_literal(const Literal& lit)
{
    if (!is_finite_decimal(lit.den)) {
        return "(" + lit.num.get_str() + " / " + lit.den.get_str() + ")";
    }
    // num/den = num * 10^k / den / 10^k for the smallest such k
    std::size_t k = 0;
    mpz_class scale = 1;
    while (!mpz_divisible_p(mpz_class(lit.num * scale).get_mpz_t(), lit.den.get_mpz_t())) {
        scale *= 10;
        ++k;
    }
    const mpz_class scaled = lit.num * scale / lit.den;
    std::string digits = mpz_class(abs(scaled)).get_str();
    if (k > 0) {
        if (digits.size() <= k) {
            digits.insert(0, k + 1 - digits.size(), '0');
        }
        digits.insert(digits.size() - k, 1, '.');
    }
    return scaled < 0 ? "(-" + digits + ")" : digits;
}

const CReal& as_real(const Value& v, const char* where)
{
    if (const auto* r = std::get_if<CReal>(&v)) {
        return *r;
    }
    throw EvalError(std::string(where) + " needs a real argument, got a complex value");
}

Complex as_complex(const Value& v)
{
    if (const auto* c = std::get_if<Complex>(&v)) {
        return *c;
    }
    return Complex{std::get<CReal>(v), CReal()};
}

CReal located_division(const CReal& num, const CReal& den, std::size_t column)
{
    const CReal quotient = num / den;
    return CReal::from_approximant([quotient, column](std::int64_t p) {
        try {
            return quotient.approx(p);
        } catch (const EffortExhausted& e) {
            throw EffortExhausted(e.budget(), "division at column " + std::to_string(column) +
                                                  ": divisor could not be separated from zero");
        }
    });
}

} // namespace

bool operator==(const Expr& a, const Expr& b)
{
    if (a.node.index() != b.node.index()) {
        return false;
    }
    return std::visit(
        overloaded{
            [&](const Literal& l) {
                const auto& r = std::get<Literal>(b.node);
                return l.num == r.num && l.den == r.den;
            },
            [](const Variable&) { return true; },
            [](const PiConstant&) { return true; },
            [&](const Negate& n) { return same(n.arg, std::get<Negate>(b.node).arg); },
            [&](const Binary& l) {
                const auto& r = std::get<Binary>(b.node);
                return l.op == r.op && same(l.lhs, r.lhs) && same(l.rhs, r.rhs);
            },
            [&](const Call& l) {
                const auto& r = std::get<Call>(b.node);
                if (l.name != r.name || l.args.size() != r.args.size()) {
                    return false;
                }
                for (std::size_t i = 0; i < l.args.size(); ++i) {
                    if (!same(l.args[i], r.args[i])) {
                        return false;
                    }
                }
                return true;
            },
        },
        a.node);
}

ExprPtr parse(std::string_view src) { return Parser(src).parse_all(); }

std::string render(const Expr& e)
{
    return std::visit(overloaded{
                          [](const Literal& l) { return render_literal(l); },
                          [](const Variable&) { return std::string("x"); },
                          [](const PiConstant&) { return std::string("pi"); },
                          [](const Negate& n) { return "(-" + render(*n.arg) + ")"; },
                          [](const Binary& b) {
                              return "(" + render(*b.lhs) + " " + b.op + " " + render(*b.rhs) + ")";
                          },
                          [](const Call& c) {
                              std::string out = c.name + "(";
                              for (std::size_t i = 0; i < c.args.size(); ++i) {
                                  out += (i ? ", " : "") + render(*c.args[i]);
                              }
                              return out + ")";
                          },
                      },
                      e.node);
}

bool uses_variable(const Expr& e)
{
    return std::visit(overloaded{
                          [](const Variable&) { return true; },
                          [](const Negate& n) { return uses_variable(*n.arg); },
                          [](const Binary& b) { return uses_variable(*b.lhs) || uses_variable(*b.rhs); },
                          [](const Call& c) {
                              for (const auto& a : c.args) {
                                  if (uses_variable(*a)) {
                                      return true;
                                  }
                              }
                              return false;
                          },
                          [](const auto&) { return false; },
                      },
                      e.node);
}

Value evaluate(const Expr& e, const std::optional<CReal>& x)
{
    return std::visit(
        overloaded{
            [](const Literal& l) -> Value { return CReal::from_rational(l.num, l.den); },
            [&](const Variable&) -> Value {
                if (!x) {
                    throw EvalError("variable x is not bound here");
                }
                return *x;
            },
            [](const PiConstant&) -> Value { return real_pi(); },
            [&](const Negate& n) -> Value {
                const Value v = evaluate(*n.arg, x);
                if (const auto* r = std::get_if<CReal>(&v)) {
                    return -*r;
                }
                return -std::get<Complex>(v);
            },
            [&](const Binary& b) -> Value {
                const Value lhs = evaluate(*b.lhs, x);
                const Value rhs = evaluate(*b.rhs, x);
                if (b.op == '/') {
                    return located_division(as_real(lhs, "'/'"), as_real(rhs, "'/'"), b.column);
                }
                if (std::holds_alternative<CReal>(lhs) && std::holds_alternative<CReal>(rhs)) {
                    const CReal& l = std::get<CReal>(lhs);
                    const CReal& r = std::get<CReal>(rhs);
                    return b.op == '+' ? l + r : b.op == '-' ? l - r : l * r;
                }
                const Complex l = as_complex(lhs);
                const Complex r = as_complex(rhs);
                return b.op == '+' ? l + r : b.op == '-' ? l - r : l * r;
            },
            [&](const Call& c) -> Value {
                std::vector<Value> args;
                for (const auto& a : c.args) {
                    args.push_back(evaluate(*a, x));
                }
                if (c.name == "max") {
                    return real_max(as_real(args[0], "max"), as_real(args[1], "max"));
                }
                if (c.name == "abs") {
                    return real_abs(as_real(args[0], "abs"));
                }
                if (c.name == "sqrt") {
                    return real_sqrt(as_real(args[0], "sqrt"));
                }
                return csqrt(Complex{as_real(args[0], "csqrt"), as_real(args[1], "csqrt")});
            },
        },
        e.node);
}

CReal evaluate_real(const Expr& e, const std::optional<CReal>& x)
{
    return as_real(evaluate(e, x), "this command");
}

} // namespace lazyreal::cli
