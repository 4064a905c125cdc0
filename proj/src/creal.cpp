#include "lazyreal/creal.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <limits>

namespace lazyreal {

namespace {

// Requests above 64 bits are rounded up to a grid of 1/16 of their magnitude
// so that nearby requests from different parents share one evaluation.
std::int64_t quantize(std::int64_t p)
{
    if (p < 64) {
        return p;
    }
    const int shift = std::bit_width(static_cast<std::uint64_t>(p)) - 1 - 4;
    const std::int64_t granule = std::int64_t{1} << shift;
    return (p + granule - 1) / granule * granule;
}

// A cached interval of accuracy q >= p, coarsened so that endpoints do not
// carry far more bits than the caller asked for.
DyInterval reuse(const DyInterval& cached, std::int64_t q, std::int64_t p)
{
    if (q >= p + 2) {
        return round_out_to_grid(cached, p + 2);
    }
    return cached;
}

Dyadic pow2(std::int64_t k) { return Dyadic(mpz_class(1), k); }

bool within_accuracy(const DyInterval& iv, std::int64_t p) { return iv.width() <= pow2(-p); }

// Smallest e with |x| <= 2^e for every x in iv (0 for the zero interval).
std::int64_t magnitude_exponent(const DyInterval& iv)
{
    const Dyadic m = iv.magnitude();
    if (m.is_zero()) {
        return 0;
    }
    return m.floor_log2() + 1;
}

std::int64_t initial_working_accuracy(std::int64_t p) { return std::max<std::int64_t>(53, p + 10); }

std::int64_t next_working_accuracy(std::int64_t w, std::int64_t p)
{
    const auto next = std::max<std::int64_t>(2 * w, p + 20);
    const auto budget = static_cast<std::int64_t>(std::min<std::uint64_t>(default_budget(), INT64_MAX / 4));
    if (next - p > budget) {
        throw EffortExhausted(default_budget(), "precision iteration did not reach the requested width");
    }
    return next;
}

class ConstantNode final : public detail::RealNode {
public:
    explicit ConstantNode(Dyadic value) : value_(std::move(value)) {}

    DyInterval approx(std::int64_t) const override { return DyInterval::point(value_); }

protected:
    DyInterval compute(std::int64_t) const override { return DyInterval::point(value_); }

private:
    Dyadic value_;
};

class RationalNode final : public detail::RealNode {
public:
    RationalNode(mpz_class num, mpz_class den) : num_(std::move(num)), den_(std::move(den)) {}

protected:
    DyInterval compute(std::int64_t p) const override
    {
        return divide_to_grid(DyInterval::point(Dyadic(num_)), DyInterval::point(Dyadic(den_)), p + 1);
    }

private:
    Dyadic num_;
    Dyadic den_;
};

class OracleNode final : public detail::RealNode {
public:
    explicit OracleNode(std::function<DyInterval(std::int64_t)> oracle) : oracle_(std::move(oracle)) {}

protected:
    DyInterval compute(std::int64_t p) const override { return oracle_(p); }

private:
    std::function<DyInterval(std::int64_t)> oracle_;
};

class AddNode final : public detail::RealNode {
public:
    AddNode(CReal x, CReal y, bool subtract) : x_(std::move(x)), y_(std::move(y)), subtract_(subtract) {}

protected:
    DyInterval compute(std::int64_t p) const override
    {
        const auto xi = x_.approx(p + 1);
        const auto yi = y_.approx(p + 1);
        return subtract_ ? xi - yi : xi + yi;
    }

private:
    CReal x_;
    CReal y_;
    bool subtract_;
};

class NegNode final : public detail::RealNode {
public:
    explicit NegNode(CReal x) : x_(std::move(x)) {}

protected:
    DyInterval compute(std::int64_t p) const override { return -x_.approx(p); }

private:
    CReal x_;
};

class ScaleNode final : public detail::RealNode {
public:
    ScaleNode(CReal x, std::int64_t k) : x_(std::move(x)), k_(k) {}

protected:
    DyInterval compute(std::int64_t p) const override { return shifted(x_.approx(checked_add(p, k_)), k_); }

private:
    CReal x_;
    std::int64_t k_;
};

class MulNode final : public detail::RealNode {
public:
    MulNode(CReal x, CReal y) : x_(std::move(x)), y_(std::move(y)) {}

protected:
    DyInterval compute(std::int64_t p) const override
    {
        const auto ex = magnitude_exponent(x_.approx(0));
        const auto ey = magnitude_exponent(y_.approx(0));
        // |x| dy + |y| dx + dx dy <= 2^-w once dx <= 2^-(w+ey+2), dy <= 2^-(w+ex+2)
        for (std::int64_t w = initial_working_accuracy(p);; w = next_working_accuracy(w, p)) {
            const auto xi = x_.approx(w + ey + 2);
            const auto yi = y_.approx(w + ex + 2);
            auto result = round_out_to_grid(xi * yi, p + 2);
            if (within_accuracy(result, p)) {
                return result;
            }
        }
    }

private:
    CReal x_;
    CReal y_;
};

class DivNode final : public detail::RealNode {
public:
    DivNode(CReal x, CReal y) : x_(std::move(x)), y_(std::move(y)) {}

protected:
    DyInterval compute(std::int64_t p) const override
    {
        const auto ly = divisor_exponent();
        const auto ex = magnitude_exponent(x_.approx(0));
        // |y| >= 2^-ly; on an interval of y at accuracy >= ly + 1 every point has |y| >= 2^-(ly+1)
        for (std::int64_t w = initial_working_accuracy(p);; w = next_working_accuracy(w, p)) {
            const auto xi = x_.approx(w + ly + 3);
            const auto yi = y_.approx(w + ex + 2 * ly + 4);
            if (yi.contains_zero()) {
                continue;
            }
            auto result = round_out_to_grid(divide_to_grid(xi, yi, w + 2), p + 2);
            if (within_accuracy(result, p)) {
                return result;
            }
        }
    }

private:
    // Smallest-effort certificate that y != 0, as an exponent ly with |y| >= 2^-ly.
    std::int64_t divisor_exponent() const
    {
        auto known = divisor_exponent_.load(std::memory_order_relaxed);
        if (known != kUnknown) {
            return known;
        }
        const auto budget = static_cast<std::int64_t>(std::min<std::uint64_t>(default_budget(), INT64_MAX / 4));
        for (std::int64_t q = 0;; q = q == 0 ? 1 : 2 * q) {
            const auto yi = y_.approx(q);
            if (!yi.contains_zero()) {
                const Dyadic nearest = yi.lo().sign() > 0 ? yi.lo() : -yi.hi();
                const auto ly = -nearest.floor_log2();
                divisor_exponent_.store(ly, std::memory_order_relaxed);
                return ly;
            }
            if (q >= budget) {
                throw EffortExhausted(default_budget(), "divisor could not be separated from zero");
            }
        }
    }

    static constexpr std::int64_t kUnknown = std::numeric_limits<std::int64_t>::min();

    CReal x_;
    CReal y_;
    mutable std::atomic<std::int64_t> divisor_exponent_{kUnknown};
};

class LimitNode final : public detail::RealNode {
public:
    explicit LimitNode(std::function<CReal(std::int64_t)> sequence) : sequence_(std::move(sequence)) {}

protected:
    DyInterval compute(std::int64_t p) const override
    {
        // term p+2 is within 2^-(p+2) of the limit and is itself known to 2^-(p+2);
        // widening by the first and rounding to 2^-(p+3) keeps the total at 2^-p
        const auto q = std::max<std::int64_t>(p, 0) + 2;
        const auto term = sequence_(q).approx(q);
        return round_out_to_grid(widened(term, pow2(-q)), q + 1);
    }

private:
    std::function<CReal(std::int64_t)> sequence_;
};

} // namespace

namespace detail {

DyInterval RealNode::approx(std::int64_t p) const
{
    {
        std::lock_guard lock(mutex_);
        if (cache_ && cache_accuracy_ >= p) {
            return reuse(*cache_, cache_accuracy_, p);
        }
    }
    const auto q = quantize(p);
    DyInterval fresh = compute(q);
    std::lock_guard lock(mutex_);
    if (!cache_ || cache_accuracy_ < q) {
        cache_ = fresh;
        cache_accuracy_ = q;
    }
    return reuse(fresh, q, p);
}

std::optional<std::int64_t> RealNode::cached_accuracy() const
{
    std::lock_guard lock(mutex_);
    if (!cache_) {
        return std::nullopt;
    }
    return cache_accuracy_;
}

} // namespace detail

CReal::CReal() : CReal(0L) {}

CReal::CReal(long value) : node_(std::make_shared<ConstantNode>(Dyadic(value))) {}

CReal CReal::from_integer(const mpz_class& z) { return CReal(std::make_shared<ConstantNode>(Dyadic(z))); }

CReal CReal::from_dyadic(const Dyadic& d) { return CReal(std::make_shared<ConstantNode>(d)); }

CReal CReal::from_rational(const mpz_class& num, const mpz_class& den)
{
    if (den == 0) {
        throw std::domain_error("rational with zero denominator");
    }
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    mpz_class n = num / g;
    mpz_class d = den / g;
    if (d < 0) {
        n = -n;
        d = -d;
    }
    if (mpz_popcount(d.get_mpz_t()) == 1) {
        return from_dyadic(Dyadic(n, -static_cast<std::int64_t>(mpz_scan1(d.get_mpz_t(), 0))));
    }
    return CReal(std::make_shared<RationalNode>(std::move(n), std::move(d)));
}

CReal CReal::from_approximant(std::function<DyInterval(std::int64_t)> oracle)
{
    return CReal(std::make_shared<OracleNode>(std::move(oracle)));
}

CReal CReal::scaled(std::int64_t k) const
{
    if (k == 0) {
        return *this;
    }
    return CReal(std::make_shared<ScaleNode>(*this, k));
}

CReal operator+(const CReal& x, const CReal& y) { return CReal(std::make_shared<AddNode>(x, y, false)); }

CReal operator-(const CReal& x, const CReal& y) { return CReal(std::make_shared<AddNode>(x, y, true)); }

CReal operator*(const CReal& x, const CReal& y) { return CReal(std::make_shared<MulNode>(x, y)); }

CReal operator/(const CReal& x, const CReal& y) { return CReal(std::make_shared<DivNode>(x, y)); }

CReal operator-(const CReal& x) { return CReal(std::make_shared<NegNode>(x)); }

std::int64_t comparison_accuracy(Effort n)
{
    if (n < 8) {
        return static_cast<std::int64_t>(n);
    }
    const int shift = std::bit_width(n) - 2;
    const Effort granule = Effort{1} << shift;
    const Effort rounded = (n + granule - 1) / granule * granule;
    return static_cast<std::int64_t>(std::min<Effort>(rounded, INT64_MAX / 4));
}

LazyKleenean lt(const CReal& x, const CReal& y)
{
    struct Memo {
        std::mutex mutex;
        std::int64_t accuracy = -1;
        Kleenean value = Kleenean::Bot;
    };
    auto memo = std::make_shared<Memo>();
    return LazyKleenean([x, y, memo](Effort n) {
        const auto acc = comparison_accuracy(n);
        {
            std::lock_guard lock(memo->mutex);
            if (memo->accuracy == acc) {
                return memo->value;
            }
        }
        const auto xi = x.approx(acc);
        const auto yi = y.approx(acc);
        Kleenean k = Kleenean::Bot;
        if (xi.hi() < yi.lo()) {
            k = Kleenean::True;
        } else if (yi.hi() < xi.lo()) {
            k = Kleenean::False;
        }
        std::lock_guard lock(memo->mutex);
        memo->accuracy = acc;
        memo->value = k;
        return k;
    });
}

Branch split(const CReal& x, const CReal& y, const CReal& eps, Effort budget)
{
    return select(lt(x, y + eps), lt(y, x + eps), budget);
}

CReal limit(std::function<CReal(std::int64_t)> sequence)
{
    return CReal(std::make_shared<LimitNode>(std::move(sequence)));
}

bool consecutive_close(const CReal& x_n, const CReal& x_next, std::int64_t n, std::int64_t accuracy)
{
    const auto bound = pow2(-(n + 1));
    return overlaps((x_next - x_n).approx(accuracy), DyInterval(-bound, bound));
}

mpz_class round_nd(const CReal& x, Effort budget)
{
    const auto cap = static_cast<std::int64_t>(std::min<Effort>(budget, INT64_MAX / 4));
    for (std::int64_t p = 0; p <= cap; ++p) {
        const auto iv = x.approx(p);
        const mpz_class z = (iv.midpoint() + pow2(-1)).floor();
        const Dyadic zd(z);
        if (zd - Dyadic(1) < iv.lo() && iv.hi() < zd + Dyadic(1)) {
            return z;
        }
    }
    throw EffortExhausted(budget, "rounding could not be certified");
}

mpz_class dyadic_approx(const CReal& x, std::int64_t n, Effort budget)
{
    return round_nd(x.scaled(n), budget);
}

std::string to_decimal(const CReal& x, std::int64_t digits)
{
    if (digits < 1) {
        throw std::invalid_argument("to_decimal: digits must be at least 1");
    }
    mpz_class ten_pow;
    mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    // smallest p with 2^p >= 10^digits, plus two guard bits
    const mpz_class below = ten_pow - 1;
    const auto p = static_cast<std::int64_t>(mpz_sizeinbase(below.get_mpz_t(), 2)) + 2;
    const auto iv = x.approx(p);
    const mpz_class scaled = (iv.midpoint() * Dyadic(ten_pow) + pow2(-1)).floor();

    std::string body = mpz_class(abs(scaled)).get_str();
    const auto d = static_cast<std::size_t>(digits);
    if (body.size() <= d) {
        body.insert(0, d + 1 - body.size(), '0');
    }
    body.insert(body.size() - d, 1, '.');
    return (scaled < 0 ? "-" : "") + body;
}

} // namespace lazyreal
