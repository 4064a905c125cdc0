#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lazyreal {

/// Raised when a search (select, precision iteration, sign certification)
/// runs past its effort cap without producing a witness.
class EffortExhausted : public std::runtime_error {
public:
    explicit EffortExhausted(std::uint64_t budget, const std::string& what = "")
        : std::runtime_error("effort exhausted (budget " + std::to_string(budget) + ")" +
                             (what.empty() ? std::string() : ": " + what)),
          budget_(budget)
    {
    }

    std::uint64_t budget() const noexcept { return budget_; }

private:
    std::uint64_t budget_;
};

/// Interval division with a divisor interval that contains zero.
class DivisorStraddlesZero : public std::domain_error {
public:
    DivisorStraddlesZero() : std::domain_error("divisor interval contains zero") {}
};

/// Process-wide default effort cap, used for select schedules and as the
/// ceiling on working accuracy (in bits) during precision iteration.
/// Defaults to 2^20.
std::uint64_t default_budget() noexcept;
void set_default_budget(std::uint64_t budget) noexcept;

} // namespace lazyreal
