#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "lazyreal/errors.hpp"

namespace {

void add_accuracy(CLI::App* cmd, lazyreal::cli::Accuracy& acc)
{
    cmd->add_option("--bits", acc.bits, "accuracy in bits (digits derived)")->check(CLI::PositiveNumber);
    cmd->add_option("--digits", acc.digits, "decimal digits after the point")->check(CLI::PositiveNumber);
}

} // namespace

int main(int argc, char** argv)
{
    using namespace lazyreal::cli;

    CLI::App app{"Exact real arithmetic: evaluation, root finding and benchmarks"};
    app.require_subcommand(1);

    std::optional<std::uint64_t> budget;
    app.add_option("--budget", budget, "effort cap for searches and precision iteration")
        ->check(CLI::PositiveNumber)
        ->expected(1);

    Accuracy acc;
    std::string expr;
    std::string a;
    std::string b;

    auto* eval = app.add_subcommand("eval", "evaluate an expression");
    eval->add_option("expr", expr, "expression")->required();
    add_accuracy(eval, acc);

    auto* ivt = app.add_subcommand("ivt", "find the root of f(x) on [a, b] by trisection");
    ivt->add_option("expr", expr, "expression in x")->required();
    ivt->add_option("a", a, "left endpoint")->required();
    ivt->add_option("b", b, "right endpoint")->required();
    add_accuracy(ivt, acc);

    auto* sqrt = app.add_subcommand("sqrt", "square root of a nonnegative expression");
    sqrt->add_option("expr", expr, "radicand")->required();
    add_accuracy(sqrt, acc);

    auto* csqrt = app.add_subcommand("csqrt", "a square root of re + im*i");
    csqrt->add_option("re", a, "real part")->required();
    csqrt->add_option("im", b, "imaginary part")->required();
    add_accuracy(csqrt, acc);

    BenchOptions bench_opts;
    bool machine = false;
    auto* bench = app.add_subcommand("bench", "run the benchmark table");
    bench->add_option("--bits", bench_opts.bits, "accuracy for every row (default per row)")
        ->check(CLI::PositiveNumber);
    bench->add_option("--repeats", bench_opts.repeats, "runs per row")->check(CLI::NonNegativeNumber);
    bench->add_option("--seed-row", bench_opts.row, "run only this row");
    bench->add_flag("--machine", machine, "key=value lines instead of a table");

    for (auto* cmd : {eval, ivt, sqrt, csqrt, bench}) {
        cmd->add_option("--budget", budget, "effort cap for searches and precision iteration")
            ->check(CLI::PositiveNumber);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? Ok : UsageError;
    }

    if (budget) {
        lazyreal::set_default_budget(*budget);
    }
    if (*eval) {
        return cmd_eval(expr, acc, std::cout, std::cerr);
    }
    if (*ivt) {
        return cmd_ivt(expr, a, b, acc, std::cout, std::cerr);
    }
    if (*sqrt) {
        return cmd_sqrt(expr, acc, std::cout, std::cerr);
    }
    if (*csqrt) {
        return cmd_csqrt(a, b, acc, std::cout, std::cerr);
    }
    return cmd_bench(bench_opts, machine, std::cout, std::cerr);
}
