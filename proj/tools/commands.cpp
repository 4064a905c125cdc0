#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <iomanip>
#include <stdexcept>

#include "expr.hpp"
#include "lazyreal/algorithms.hpp"
#include "lazyreal/complex.hpp"
#include "lazyreal/errors.hpp"

namespace lazyreal::cli {

namespace {

constexpr std::int64_t kDefaultDigits = 20;

std::int64_t output_digits(const Accuracy& acc, std::int64_t guard)
{
    if (acc.digits) {
        return *acc.digits;
    }
    if (acc.bits) {
        return digits_for_bits(*acc.bits, guard);
    }
    return kDefaultDigits;
}

// Runs `body`, mapping failures onto exit codes with a diagnostic on `err`.
int guarded(std::ostream& err, const std::function<void()>& body)
{
    try {
        body();
        return Ok;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return UsageError;
    } catch (const EvalError& e) {
        err << "error: " << e.what() << '\n';
        return UsageError;
    } catch (const EffortExhausted& e) {
        err << "error: " << e.what() << '\n';
        return Exhausted;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return UsageError;
    }
}

CReal constant_expr(const std::string& src, const char* what)
{
    const ExprPtr e = parse(src);
    if (uses_variable(*e)) {
        throw EvalError(std::string(what) + " must not mention x");
    }
    return evaluate_real(*e);
}

std::string format_complex(const Complex& z, std::int64_t digits)
{
    const std::string re = to_decimal(z.re, digits);
    const std::string im = to_decimal(z.im, digits);
    if (im.front() == '-') {
        return re + " - " + im.substr(1) + "i";
    }
    return re + " + " + im + "i";
}

Dyadic pow2(std::int64_t k) { return Dyadic(mpz_class(1), k); }

// Result interval at accuracy p is narrow enough and overlaps the cell
// [s, s + 1] * 2^-p of the exact floor oracle s.
bool near_floor_oracle(const DyInterval& iv, const mpz_class& s, std::int64_t p)
{
    const bool narrow = iv.width() <= pow2(-p);
    const Dyadic cell_lo(s, -p);
    const Dyadic cell_hi(s + 1, -p);
    return narrow && iv.lo() <= cell_hi && cell_lo <= iv.hi();
}

Dyadic power(const Dyadic& d, int k)
{
    Dyadic out(1);
    for (int i = 0; i < k; ++i) {
        out = out * d;
    }
    return out;
}

// lo^k <= c <= hi^k for nonnegative endpoints
bool brackets_root(const DyInterval& iv, long c, int k)
{
    return iv.lo().sign() >= 0 && power(iv.lo(), k) <= Dyadic(c) && Dyadic(c) <= power(iv.hi(), k);
}

struct Row {
    std::string name;
    std::int64_t default_bits;
    std::function<CReal()> build;
    std::function<bool(const DyInterval&, std::int64_t)> verify;
};

CReal parsed(const char* src) { return evaluate_real(*parse(src)); }

CReal root_of(const char* f_src)
{
    const ExprPtr f = parse(f_src);
    return ivt_trisect([f](const CReal& x) { return evaluate_real(*f, x); }, CReal(0), CReal(1));
}

bool contains_half(const DyInterval& iv, std::int64_t p)
{
    return iv.width() <= pow2(-p) && iv.contains(pow2(-1));
}

const std::vector<Row>& rows()
{
    static const std::vector<Row> table{
        {"maxpi", 1000, [] { return parsed("max(0, pi - pi)"); },
         [](const DyInterval& iv, std::int64_t p) { return iv.width() <= pow2(-p) && iv.contains_zero(); }},
        {"sqrt2", 10000, [] { return parsed("sqrt(2)"); },
         [](const DyInterval& iv, std::int64_t p) {
             mpz_class s = mpz_class(2) << static_cast<mp_bitcnt_t>(2 * p);
             mpz_sqrt(s.get_mpz_t(), s.get_mpz_t());
             return near_floor_oracle(iv, s, p) && brackets_root(iv, 2, 2);
         }},
        {"sqrtsqrt2", 10000, [] { return parsed("sqrt(sqrt(2))"); },
         [](const DyInterval& iv, std::int64_t p) {
             mpz_class s = mpz_class(2) << static_cast<mp_bitcnt_t>(4 * p);
             mpz_root(s.get_mpz_t(), s.get_mpz_t(), 4);
             return near_floor_oracle(iv, s, p) && brackets_root(iv, 2, 4);
         }},
        {"ivt_linear", 1000, [] { return root_of("x - 0.5"); }, contains_half},
        {"ivt_quadratic", 1000, [] { return root_of("x*(2-x) - 0.5"); },
         [](const DyInterval& iv, std::int64_t p) {
             // x(2 - x) - 1/2 is increasing on [0, 1]
             const auto f = [](const Dyadic& x) { return x * (Dyadic(2) - x) - pow2(-1); };
             return iv.width() <= pow2(-p) && f(iv.lo()).sign() <= 0 && f(iv.hi()).sign() >= 0;
         }},
        {"ivt_sqrt", 1000, [] { return root_of("sqrt(x + 0.5) - 1"); }, contains_half},
    };
    return table;
}

} // namespace

std::int64_t digits_for_bits(std::int64_t bits, std::int64_t guard)
{
    // floor(bits * log10(2)), log10(2) = 0.30102999...
    const std::int64_t exact = bits * 30102999 / 100000000;
    return std::max<std::int64_t>(1, exact - guard);
}

int cmd_eval(const std::string& expr, const Accuracy& acc, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const ExprPtr e = parse(expr);
        if (uses_variable(*e)) {
            throw EvalError("x is only bound by the ivt command");
        }
        const std::int64_t digits = output_digits(acc, 2);
        const Value v = evaluate(*e);
        if (const auto* z = std::get_if<Complex>(&v)) {
            out << format_complex(*z, digits) << '\n';
        } else {
            out << to_decimal(std::get<CReal>(v), digits) << '\n';
        }
    });
}

int cmd_ivt(const std::string& expr, const std::string& a, const std::string& b, const Accuracy& acc,
            std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const ExprPtr f = parse(expr);
        const CReal lo = constant_expr(a, "the left endpoint");
        const CReal hi = constant_expr(b, "the right endpoint");
        const CReal root = ivt_trisect([f](const CReal& x) { return evaluate_real(*f, x); }, lo, hi);
        out << to_decimal(root, output_digits(acc, 0)) << '\n';
    });
}

int cmd_sqrt(const std::string& expr, const Accuracy& acc, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const CReal x = constant_expr(expr, "the radicand");
        out << to_decimal(real_sqrt(x), output_digits(acc, 2)) << '\n';
    });
}

int cmd_csqrt(const std::string& re, const std::string& im, const Accuracy& acc, std::ostream& out,
              std::ostream& err)
{
    return guarded(err, [&] {
        const Complex z{constant_expr(re, "the real part"), constant_expr(im, "the imaginary part")};
        out << format_complex(csqrt(z), output_digits(acc, 2)) << '\n';
    });
}

const std::vector<std::string>& bench_rows()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const Row& r : rows()) {
            out.push_back(r.name);
        }
        return out;
    }();
    return names;
}

std::vector<BenchResult> run_bench(const BenchOptions& opts)
{
    if (opts.row && std::find(bench_rows().begin(), bench_rows().end(), *opts.row) == bench_rows().end()) {
        throw std::invalid_argument("unknown bench row '" + *opts.row + "'");
    }
    std::vector<BenchResult> results;
    if (opts.repeats <= 0) {
        return results;
    }
    for (const Row& row : rows()) {
        if (opts.row && *opts.row != row.name) {
            continue;
        }
        BenchResult res;
        res.name = row.name;
        res.accuracy_bits = opts.bits.value_or(row.default_bits);
        res.verified = true;
        double total = 0;
        for (int i = 0; i < opts.repeats; ++i) {
            // a fresh value each repeat, so no cached approximations carry over
            const auto start = std::chrono::steady_clock::now();
            const CReal value = row.build();
            DyInterval iv;
            try {
                iv = value.approx(res.accuracy_bits);
            } catch (const EffortExhausted&) {
                res.verified = false;
                break;
            }
            total += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            res.verified = res.verified && row.verify(iv, res.accuracy_bits);
            if (i == 0) {
                res.digits_emitted = digits_for_bits(res.accuracy_bits, 0);
            }
        }
        res.wall_time_s = total / opts.repeats;
        results.push_back(res);
    }
    return results;
}

int cmd_bench(const BenchOptions& opts, bool machine, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const auto results = run_bench(opts);
        if (!machine) {
            out << std::left << std::setw(15) << "row" << std::right << std::setw(8) << "bits" << std::setw(12)
                << "mean_s" << std::setw(8) << "digits" << "  status\n";
        }
        for (const BenchResult& r : results) {
            if (machine) {
                out << "name=" << r.name << " bits=" << r.accuracy_bits << " seconds=" << std::fixed
                    << std::setprecision(6) << r.wall_time_s << " verified=" << (r.verified ? "true" : "false")
                    << '\n';
                continue;
            }
            out << std::left << std::setw(15) << r.name << std::right << std::setw(8) << r.accuracy_bits
                << std::setw(12) << std::fixed << std::setprecision(4) << r.wall_time_s << std::setw(8)
                << r.digits_emitted << "  " << (r.verified ? "ok" : "FAILED") << '\n';
        }
    });
}

} // namespace lazyreal::cli
