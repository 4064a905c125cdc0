#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace lazyreal::cli {

enum ExitCode : int { Ok = 0, UsageError = 1, Exhausted = 2 };

/// Output accuracy: digits wins over bits; neither means 20 digits.
struct Accuracy {
    std::optional<std::int64_t> bits;
    std::optional<std::int64_t> digits;
};

/// Digits printed for `bits` of accuracy, keeping `guard` decimal digits in reserve.
std::int64_t digits_for_bits(std::int64_t bits, std::int64_t guard);

int cmd_eval(const std::string& expr, const Accuracy& acc, std::ostream& out, std::ostream& err);
int cmd_ivt(const std::string& expr, const std::string& a, const std::string& b, const Accuracy& acc,
            std::ostream& out, std::ostream& err);
int cmd_sqrt(const std::string& expr, const Accuracy& acc, std::ostream& out, std::ostream& err);
int cmd_csqrt(const std::string& re, const std::string& im, const Accuracy& acc, std::ostream& out,
              std::ostream& err);

struct BenchResult {
    std::string name;
    std::int64_t accuracy_bits = 0;
    double wall_time_s = 0; ///< mean over repeats
    std::int64_t digits_emitted = 0;
    bool verified = false;
};

struct BenchOptions {
    std::optional<std::int64_t> bits; ///< overrides every row's default accuracy
    int repeats = 1;
    std::optional<std::string> row;
};

/// Row names in table order.
const std::vector<std::string>& bench_rows();

/// Unknown row names throw std::invalid_argument.
std::vector<BenchResult> run_bench(const BenchOptions& opts);

int cmd_bench(const BenchOptions& opts, bool machine, std::ostream& out, std::ostream& err);

} // namespace lazyreal::cli
