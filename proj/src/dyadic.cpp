#include "lazyreal/dyadic.hpp"

#include <cctype>
#include <limits>
#include <stdexcept>

namespace lazyreal {

std::int64_t checked_add(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) {
        throw std::overflow_error("dyadic exponent overflow");
    }
    return r;
}

namespace {

std::int64_t bit_length(const mpz_class& m)
{
    return static_cast<std::int64_t>(mpz_sizeinbase(m.get_mpz_t(), 2));
}

mpz_class shift_left(const mpz_class& m, std::int64_t k)
{
    mpz_class r;
    mpz_mul_2exp(r.get_mpz_t(), m.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
    return r;
}

mpz_class shift_right(const mpz_class& m, std::int64_t k, RoundDir dir)
{
    mpz_class r;
    if (dir == RoundDir::Down) {
        mpz_fdiv_q_2exp(r.get_mpz_t(), m.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
    } else {
        mpz_cdiv_q_2exp(r.get_mpz_t(), m.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
    }
    return r;
}

mpz_class divide_rounded(const mpz_class& num, const mpz_class& den, RoundDir dir)
{
    mpz_class q;
    if (dir == RoundDir::Down) {
        mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    } else {
        mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    }
    return q;
}

} // namespace

Dyadic::Dyadic(long value) : mantissa_(value) { normalize(); }

Dyadic::Dyadic(const mpz_class& integer) : mantissa_(integer) { normalize(); }

Dyadic::Dyadic(mpz_class mantissa, std::int64_t exponent)
    : mantissa_(std::move(mantissa)), exponent_(exponent)
{
    normalize();
}

void Dyadic::normalize()
{
    if (mantissa_ == 0) {
        exponent_ = 0;
        return;
    }
    const auto tz = static_cast<std::int64_t>(mpz_scan1(mantissa_.get_mpz_t(), 0));
    if (tz > 0) {
        mpz_tdiv_q_2exp(mantissa_.get_mpz_t(), mantissa_.get_mpz_t(), static_cast<mp_bitcnt_t>(tz));
        exponent_ = checked_add(exponent_, tz);
    }
}

std::int64_t Dyadic::floor_log2() const noexcept
{
    if (is_zero()) {
        return std::numeric_limits<std::int64_t>::min();
    }
    return bit_length(mantissa_) - 1 + exponent_;
}

Dyadic Dyadic::shifted(std::int64_t k) const
{
    if (is_zero()) {
        return {};
    }
    Dyadic r = *this;
    r.exponent_ = checked_add(exponent_, k);
    return r;
}

mpz_class Dyadic::floor() const
{
    if (exponent_ >= 0) {
        return shift_left(mantissa_, exponent_);
    }
    return shift_right(mantissa_, -exponent_, RoundDir::Down);
}

mpz_class Dyadic::ceil() const
{
    if (exponent_ >= 0) {
        return shift_left(mantissa_, exponent_);
    }
    return shift_right(mantissa_, -exponent_, RoundDir::Up);
}

std::string Dyadic::to_decimal_string() const
{
    if (exponent_ >= 0) {
        return shift_left(mantissa_, exponent_).get_str();
    }
    // m * 2^-k = m * 5^k / 10^k
    const auto k = static_cast<unsigned long>(-exponent_);
    mpz_class five_pow;
    mpz_ui_pow_ui(five_pow.get_mpz_t(), 5, k);
    mpz_class scaled = abs(mantissa_) * five_pow;
    std::string digits = scaled.get_str();
    if (digits.size() <= k) {
        digits.insert(0, k - digits.size() + 1, '0');
    }
    digits.insert(digits.size() - k, 1, '.');
    return (sign() < 0 ? "-" : "") + digits;
}

std::string Dyadic::to_hex_string() const
{
    std::string out = sign() < 0 ? "-0x" : "0x";
    out += mpz_class(abs(mantissa_)).get_str(16);
    out += exponent_ < 0 ? "p-" : "p+";
    // abs of INT64_MIN is not representable; exponents that low are not reachable in practice
    out += std::to_string(exponent_ < 0 ? -exponent_ : exponent_);
    return out;
}

Dyadic Dyadic::parse(std::string_view text)
{
    auto fail = [&]() -> Dyadic {
        throw std::invalid_argument("not a dyadic literal: '" + std::string(text) + "'");
    };
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
        s.remove_prefix(2);
        const auto p = s.find_first_of("pP");
        if (p == 0 || p == std::string_view::npos || p + 1 >= s.size()) {
            return fail();
        }
        mpz_class m;
        if (m.set_str(std::string(s.substr(0, p)), 16) != 0) {
            return fail();
        }
        std::string_view exp = s.substr(p + 1);
        bool exp_negative = false;
        if (exp.front() == '-' || exp.front() == '+') {
            exp_negative = exp.front() == '-';
            exp.remove_prefix(1);
        }
        if (exp.empty()) {
            return fail();
        }
        std::int64_t e = 0;
        for (char c : exp) {
            if (!std::isdigit(static_cast<unsigned char>(c))) {
                return fail();
            }
            if (e > (std::numeric_limits<std::int64_t>::max() - 9) / 10) {
                throw std::overflow_error("dyadic exponent overflow");
            }
            e = e * 10 + (c - '0');
        }
        return Dyadic(negative ? mpz_class(-m) : m, exp_negative ? -e : e);
    }

    const auto dot = s.find('.');
    std::string_view int_part = s.substr(0, dot);
    std::string_view frac_part = dot == std::string_view::npos ? std::string_view() : s.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) {
        return fail();
    }
    std::string digits;
    for (std::string_view part : {int_part, frac_part}) {
        for (char c : part) {
            if (!std::isdigit(static_cast<unsigned char>(c))) {
                return fail();
            }
            digits.push_back(c);
        }
    }
    mpz_class n(digits, 10);
    const auto k = static_cast<unsigned long>(frac_part.size());
    mpz_class five_pow;
    mpz_ui_pow_ui(five_pow.get_mpz_t(), 5, k);
    if (!mpz_divisible_p(n.get_mpz_t(), five_pow.get_mpz_t())) {
        return fail();
    }
    mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), five_pow.get_mpz_t());
    if (negative) {
        n = -n;
    }
    return Dyadic(n, -static_cast<std::int64_t>(k));
}

Dyadic operator+(const Dyadic& a, const Dyadic& b)
{
    if (a.is_zero()) {
        return b;
    }
    if (b.is_zero()) {
        return a;
    }
    if (a.exponent_ <= b.exponent_) {
        return Dyadic(a.mantissa_ + shift_left(b.mantissa_, b.exponent_ - a.exponent_), a.exponent_);
    }
    return Dyadic(b.mantissa_ + shift_left(a.mantissa_, a.exponent_ - b.exponent_), b.exponent_);
}

Dyadic operator-(const Dyadic& a)
{
    Dyadic r = a;
    r.mantissa_ = -r.mantissa_;
    return r;
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

Dyadic operator*(const Dyadic& a, const Dyadic& b)
{
    if (a.is_zero() || b.is_zero()) {
        return {};
    }
    // product of odd mantissas is odd, so the result is already canonical
    Dyadic r;
    r.mantissa_ = a.mantissa_ * b.mantissa_;
    r.exponent_ = checked_add(a.exponent_, b.exponent_);
    return r;
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b)
{
    const int sa = a.sign();
    const int sb = b.sign();
    if (sa != sb) {
        return sa <=> sb;
    }
    if (sa == 0) {
        return std::strong_ordering::equal;
    }
    const auto la = a.floor_log2();
    const auto lb = b.floor_log2();
    if (la != lb) {
        return sa > 0 ? la <=> lb : lb <=> la;
    }
    int c;
    if (a.exponent_ >= b.exponent_) {
        c = cmp(shift_left(a.mantissa_, a.exponent_ - b.exponent_), b.mantissa_);
    } else {
        c = cmp(a.mantissa_, shift_left(b.mantissa_, b.exponent_ - a.exponent_));
    }
    return c <=> 0;
}

Dyadic round_bits(const Dyadic& a, std::int64_t bits, RoundDir dir)
{
    if (bits < 1) {
        throw std::invalid_argument("round_bits: precision must be at least 1 bit");
    }
    if (a.is_zero()) {
        return a;
    }
    // the leading bit plus `bits` bits after it
    const auto excess = bit_length(a.mantissa()) - bits - 1;
    if (excess <= 0) {
        return a;
    }
    return Dyadic(shift_right(a.mantissa(), excess, dir), checked_add(a.exponent(), excess));
}

Dyadic round_to_grid(const Dyadic& a, std::int64_t q, RoundDir dir)
{
    if (a.is_zero() || a.exponent() >= -q) {
        return a;
    }
    const auto excess = -q - a.exponent();
    return Dyadic(shift_right(a.mantissa(), excess, dir), -q);
}

Dyadic divide_to_grid(const Dyadic& a, const Dyadic& b, std::int64_t q, RoundDir dir)
{
    if (b.is_zero()) {
        throw std::domain_error("division by zero");
    }
    if (a.is_zero()) {
        return {};
    }
    // a/b * 2^q = (ma/mb) * 2^k
    const auto k = checked_add(checked_add(a.exponent(), -b.exponent()), q);
    mpz_class quotient;
    if (k >= 0) {
        quotient = divide_rounded(shift_left(a.mantissa(), k), b.mantissa(), dir);
    } else {
        quotient = divide_rounded(a.mantissa(), shift_left(b.mantissa(), -k), dir);
    }
    return Dyadic(std::move(quotient), -q);
}

Dyadic divide_bits(const Dyadic& a, const Dyadic& b, std::int64_t bits, RoundDir dir)
{
    if (bits < 1) {
        throw std::invalid_argument("divide_bits: precision must be at least 1 bit");
    }
    if (b.is_zero()) {
        throw std::domain_error("division by zero");
    }
    if (a.is_zero()) {
        return {};
    }
    // floor(log2 |a/b|) >= la - lb - 1, so this grid leaves at least bits+2 significant bits
    const auto magnitude = a.floor_log2() - b.floor_log2() - 1;
    const auto grid = checked_add(bits + 1, -magnitude);
    return round_bits(divide_to_grid(a, b, grid, dir), bits, dir);
}

const Dyadic& min(const Dyadic& a, const Dyadic& b) { return b < a ? b : a; }
const Dyadic& max(const Dyadic& a, const Dyadic& b) { return a < b ? b : a; }

} // namespace lazyreal
