#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace lazyreal {

enum class RoundDir { Down, Up };

/// Exact binary rational mantissa * 2^exponent.
///
/// Always stored in canonical form: the mantissa is odd, or zero with a zero
/// exponent. Two dyadics are equal as values iff their representations are
/// equal. Exponent arithmetic that leaves the int64 range throws
/// std::overflow_error.
class Dyadic {
public:
    Dyadic() = default;
    Dyadic(long value); // NOLINT(google-explicit-constructor)
    explicit Dyadic(const mpz_class& integer);
    Dyadic(mpz_class mantissa, std::int64_t exponent);

    const mpz_class& mantissa() const noexcept { return mantissa_; }
    std::int64_t exponent() const noexcept { return exponent_; }

    int sign() const noexcept { return sgn(mantissa_); }
    bool is_zero() const noexcept { return sign() == 0; }

    /// floor(log2 |x|); undefined for zero (returns INT64_MIN).
    std::int64_t floor_log2() const noexcept;

    /// Multiply by 2^k exactly.
    Dyadic shifted(std::int64_t k) const;

    mpz_class floor() const;
    mpz_class ceil() const;

    /// Exact decimal expansion, e.g. "-2.375".
    std::string to_decimal_string() const;
    /// Hex mantissa with binary exponent, e.g. "0x3p-1", "-0x5p+2".
    std::string to_hex_string() const;

    /// Parse "[-]digits[.digits]" or the hex form produced by to_hex_string.
    /// Decimals whose value is not dyadic throw std::invalid_argument.
    static Dyadic parse(std::string_view text);

    friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
    friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
    friend Dyadic operator*(const Dyadic& a, const Dyadic& b);
    friend Dyadic operator-(const Dyadic& a);

    friend bool operator==(const Dyadic& a, const Dyadic& b) noexcept
    {
        return a.exponent_ == b.exponent_ && a.mantissa_ == b.mantissa_;
    }
    friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

private:
    void normalize();

    mpz_class mantissa_;
    std::int64_t exponent_ = 0;
};

/// Round in direction `dir` to precision `bits`: the leading binary digit
/// followed by `bits` more, so the mantissa has at most bits + 1 bits and
/// the error is below 2^(floor_log2(a) - bits). Requires bits >= 1.
Dyadic round_bits(const Dyadic& a, std::int64_t bits, RoundDir dir);

/// Round to the grid of multiples of 2^-q in direction `dir`.
Dyadic round_to_grid(const Dyadic& a, std::int64_t q, RoundDir dir);

/// Quotient a / b rounded in direction `dir` to precision `bits` (as in
/// round_bits). Throws std::domain_error on b == 0.
Dyadic divide_bits(const Dyadic& a, const Dyadic& b, std::int64_t bits, RoundDir dir);

/// Quotient a / b rounded in direction `dir` to a multiple of 2^-q.
Dyadic divide_to_grid(const Dyadic& a, const Dyadic& b, std::int64_t q, RoundDir dir);

const Dyadic& min(const Dyadic& a, const Dyadic& b);
const Dyadic& max(const Dyadic& a, const Dyadic& b);

std::int64_t checked_add(std::int64_t a, std::int64_t b);

} // namespace lazyreal
