#include "lazyreal/algorithms.hpp"

#include <bit>
#include <cmath>
#include <mutex>
#include <vector>

namespace lazyreal {

namespace {

CReal pow2(std::int64_t k) { return CReal::from_dyadic(Dyadic(mpz_class(1), k)); }

// Exact partial sums of atan(1/m) = sum_k (-1)^k / ((2k+1) m^(2k+1)) by
// binary splitting: over terms [a, b), sum = t / (b * q) with p, q, b the
// products of the term ratios' numerators, denominators and the odd factors.
struct ArctanSplit {
    mpz_class p;
    mpz_class q;
    mpz_class b;
    mpz_class t;
};

ArctanSplit arctan_split(long m, long first, long last)
{
    if (last - first == 1) {
        const long k = first;
        ArctanSplit leaf;
        leaf.p = k == 0 ? 1 : -1;
        leaf.q = k == 0 ? mpz_class(m) : mpz_class(m) * m;
        leaf.b = 2 * k + 1;
        leaf.t = leaf.p;
        return leaf;
    }
    const long mid = first + (last - first) / 2;
    ArctanSplit l = arctan_split(m, first, mid);
    ArctanSplit r = arctan_split(m, mid, last);
    ArctanSplit out;
    out.t = r.b * r.q * l.t + l.b * l.p * r.t;
    out.p = l.p * r.p;
    out.q = l.q * r.q;
    out.b = l.b * r.b;
    return out;
}

// Number of terms N with m^(2N+1) >= 2^bits, so that the alternating tail
// after N terms is at most 2^-bits.
long arctan_terms(long m, std::int64_t bits)
{
    long n = static_cast<long>(std::ceil((static_cast<double>(bits) / std::log2(static_cast<double>(m)) - 1) / 2));
    n = std::max(n, 0L);
    mpz_class power;
    mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(m), static_cast<unsigned long>(2 * n + 1));
    while (mpz_sizeinbase(power.get_mpz_t(), 2) <= static_cast<std::size_t>(bits)) {
        ++n;
        power *= m * m;
    }
    return n;
}

// pi with |term - pi| <= 2^-n: 16 * tail_5 + 4 * tail_239 <= 2^-(n+1)
CReal machin_term(std::int64_t n)
{
    const long terms5 = std::max(1L, arctan_terms(5, n + 6));
    const long terms239 = std::max(1L, arctan_terms(239, n + 4));
    const ArctanSplit a = arctan_split(5, 0, terms5);
    const ArctanSplit b = arctan_split(239, 0, terms239);
    const mpz_class den_a = a.b * a.q;
    const mpz_class den_b = b.b * b.q;
    return CReal::from_rational(16 * a.t * den_b - 4 * b.t * den_a, den_a * den_b);
}

class HeronChain {
public:
    explicit HeronChain(CReal x) : x_(std::move(x)) { iterates_.emplace_back(1L); }

    CReal at(std::int64_t n)
    {
        std::lock_guard lock(mutex_);
        while (static_cast<std::int64_t>(iterates_.size()) <= n) {
            const CReal& h = iterates_.back();
            iterates_.push_back((h + x_ / h).scaled(-1));
        }
        return iterates_[static_cast<std::size_t>(n)];
    }

private:
    std::mutex mutex_;
    CReal x_;
    std::vector<CReal> iterates_;
};

// ceil(log2(n + 3)): 2^-(2^k) <= 2^-n
std::int64_t heron_index(std::int64_t n)
{
    return std::bit_width(static_cast<std::uint64_t>(n + 2));
}

// 10 * 4^z * v compared with 3 and 19, i.e. 4^z * v against 0.3 and 1.9
bool in_scale_target(const DyInterval& iv, std::int64_t z)
{
    const Dyadic lo = iv.lo().shifted(2 * z) * Dyadic(10);
    const Dyadic hi = iv.hi().shifted(2 * z) * Dyadic(10);
    return Dyadic(3) <= lo && hi <= Dyadic(19);
}

std::int64_t floor_div2(std::int64_t v) { return v >= 0 ? v / 2 : -((-v + 1) / 2); }

} // namespace

CReal real_max(const CReal& x, const CReal& y)
{
    return limit([x, y](std::int64_t n) {
        // Left: y < x + 2^-n, so x is within 2^-n of the maximum
        return split(y, x, pow2(-n)) == Branch::Left ? x : y;
    });
}

CReal real_abs(const CReal& x) { return real_max(x, -x); }

CReal real_pi() { return limit(machin_term); }

struct Trisection::State {
    // a_i = a + (b - a) * lo_i / 3^i and b_i likewise with hi_i
    struct Bracket {
        mpz_class lo;
        mpz_class hi;
        CReal a;
        CReal b;
        CReal fa;
        CReal fb;
    };

    State(RealFunction fn, CReal a0, CReal b0)
        : f(std::move(fn)), origin(std::move(a0)), span(b0 - origin)
    {
        brackets.push_back(Bracket{0, 1, origin, b0, f(origin), f(b0)});
    }

    CReal point(const mpz_class& num, std::int64_t step) const
    {
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 3, static_cast<unsigned long>(step));
        return origin + span * CReal::from_rational(num, den);
    }

    Bracket at(std::int64_t step)
    {
        std::lock_guard lock(mutex);
        while (static_cast<std::int64_t>(brackets.size()) <= step) {
            const auto i = static_cast<std::int64_t>(brackets.size());
            const Bracket& cur = brackets.back();
            // the new points at step i, over the denominator 3^i
            const mpz_class left_num = 2 * cur.lo + cur.hi;
            const mpz_class right_num = cur.lo + 2 * cur.hi;
            CReal left = point(left_num, i);
            CReal right = point(right_num, i);
            CReal f_left = f(left);
            CReal f_right = f(right);
            const CReal zero;
            const Branch branch = select(lt(f_left * cur.fb, zero), lt(cur.fa * f_right, zero));
            if (branch == Branch::Left) {
                brackets.push_back(Bracket{left_num, 3 * cur.hi, left, cur.b, f_left, cur.fb});
            } else {
                brackets.push_back(Bracket{3 * cur.lo, right_num, cur.a, right, cur.fa, f_right});
            }
        }
        return brackets[static_cast<std::size_t>(step)];
    }

    std::mutex mutex;
    RealFunction f;
    CReal origin;
    CReal span;
    std::vector<Bracket> brackets;
};

Trisection::Trisection(RealFunction f, CReal a, CReal b)
    : state_(std::make_shared<State>(std::move(f), std::move(a), std::move(b)))
{
}

std::pair<CReal, CReal> Trisection::bracket(std::int64_t step) const
{
    const auto br = state_->at(step);
    return {br.a, br.b};
}

CReal Trisection::midpoint(std::int64_t step) const
{
    const auto br = state_->at(step);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 3, static_cast<unsigned long>(step));
    return state_->origin + state_->span * CReal::from_rational(br.lo + br.hi, 2 * den);
}

CReal Trisection::root() const
{
    auto state = state_;
    // |b - a| <= 2^e
    const Dyadic mag = state->span.approx(0).magnitude();
    const std::int64_t e = mag.is_zero() ? 0 : mag.floor_log2() + 1;
    const Trisection self = *this;
    return limit([self, e](std::int64_t n) {
        // |midpoint_i - zero| <= (2/3)^i (b - a) / 2 <= 2^-n once i log2(3/2) >= n + e - 1
        const double needed = static_cast<double>(n + e - 1) / std::log2(1.5);
        const auto steps = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::ceil(needed)) + 1);
        return self.midpoint(steps);
    });
}

CReal ivt_trisect(RealFunction f, const CReal& a, const CReal& b)
{
    return Trisection(std::move(f), a, b).root();
}

CReal heron(const CReal& x, std::int64_t n) { return HeronChain(x).at(n); }

CReal sqrt_restricted(const CReal& x)
{
    auto chain = std::make_shared<HeronChain>(x);
    return limit([chain](std::int64_t n) { return chain->at(heron_index(n)); });
}

ScaledReal sqrt_scale(const CReal& x, Effort budget)
{
    for (Effort n = 0; n <= budget; ++n) {
        const auto iv = x.approx(comparison_accuracy(n));
        if (iv.hi().sign() < 0) {
            break;
        }
        if (iv.lo().sign() <= 0) {
            continue;
        }
        // 4^z * lo near 1 when z is about -log2(lo) / 2
        const auto center = floor_div2(-iv.lo().floor_log2());
        for (std::int64_t z = center - 1; z <= center + 1; ++z) {
            if (in_scale_target(iv, z)) {
                return ScaledReal{z, x.scaled(2 * z)};
            }
        }
    }
    throw EffortExhausted(budget, "could not certify x > 0 for square-root scaling");
}

CReal real_sqrt(const CReal& x)
{
    struct State {
        std::mutex mutex;
        std::optional<CReal> positive_root;
    };
    auto state = std::make_shared<State>();
    return limit([x, state](std::int64_t n) -> CReal {
        std::lock_guard lock(state->mutex);
        if (state->positive_root) {
            return *state->positive_root;
        }
        const CReal tiny = pow2(-2 * n);
        const CReal zero;
        // |x| < 2^-2n makes 0 a 2^-n approximation of sqrt(x)
        const LazyKleenean small = lt(-tiny, x) & lt(x, tiny);
        if (select(small, lt(zero, x)) == Branch::Left) {
            return zero;
        }
        const ScaledReal s = sqrt_scale(x);
        state->positive_root = sqrt_restricted(s.scaled).scaled(-s.z);
        return *state->positive_root;
    });
}

} // namespace lazyreal
