#include <random>
#include <thread>
#include <vector>

#include <gtest/gtest.h>

#include "lazyreal/algorithms.hpp"
#include "lazyreal/creal.hpp"
#include "lazyreal/errors.hpp"
#include "oracle.hpp"

using lazyreal::Branch;
using lazyreal::CReal;
using lazyreal::Dyadic;
using lazyreal::DyInterval;
using lazyreal::Kleenean;
using oracle::Rational;

namespace {

CReal rat(long num, long den) { return CReal::from_rational(mpz_class(num), mpz_class(den)); }

CReal pow2(std::int64_t k) { return CReal::from_dyadic(Dyadic(mpz_class(1), k)); }

// Accuracy and soundness of x against an exact rational value.
void expect_encloses(const CReal& x, const Rational& value, std::int64_t p)
{
    const DyInterval iv = x.approx(p);
    EXPECT_TRUE(oracle::contains(iv, value)) << "p=" << p << " " << iv.to_string();
    EXPECT_LE(oracle::width(iv), oracle::pow2(-p)) << "p=" << p;
}

// A random expression over small rationals with its exact value.
std::pair<CReal, Rational> random_expr(std::mt19937_64& rng, int depth)
{
    std::uniform_int_distribution<long> num(-50, 50);
    std::uniform_int_distribution<long> den(1, 30);
    std::uniform_int_distribution<int> op(0, depth > 0 ? 4 : 0);
    switch (op(rng)) {
    case 0: {
        const long n = num(rng);
        const long d = den(rng);
        return {rat(n, d), Rational(n, d)};
    }
    case 1: {
        auto [a, ra] = random_expr(rng, depth - 1);
        auto [b, rb] = random_expr(rng, depth - 1);
        return {a + b, ra + rb};
    }
    case 2: {
        auto [a, ra] = random_expr(rng, depth - 1);
        auto [b, rb] = random_expr(rng, depth - 1);
        return {a - b, ra - rb};
    }
    case 3: {
        auto [a, ra] = random_expr(rng, depth - 1);
        auto [b, rb] = random_expr(rng, depth - 1);
        return {a * b, ra * rb};
    }
    default: {
        auto [a, ra] = random_expr(rng, depth - 1);
        auto [b, rb] = random_expr(rng, depth - 1);
        if (rb == 0) {
            return {a, ra};
        }
        return {a / b, ra / rb};
    }
    }
}

} // namespace

TEST(CReal, ExactConstants)
{
    EXPECT_EQ(CReal::from_integer(0).approx(10), DyInterval::point(Dyadic(0)));
    for (std::int64_t p : {-5, 0, 1, 100, 5000}) {
        EXPECT_EQ(CReal(1).approx(p), DyInterval::point(Dyadic(1)));
    }
    EXPECT_EQ(CReal::from_dyadic(Dyadic::parse("1.5")).approx(5), DyInterval::point(Dyadic::parse("1.5")));
    EXPECT_EQ(rat(3, 4).approx(7), DyInterval::point(Dyadic::parse("0.75")));
}

TEST(CReal, FieldExamples)
{
    expect_encloses(CReal(1) + CReal(1), 2, 20);
    const CReal x = lazyreal::real_sqrt(CReal(3)) * rat(1, 7);
    const DyInterval diff = (x - x).approx(100);
    EXPECT_TRUE(diff.contains_zero());
    EXPECT_LE(oracle::width(diff), oracle::pow2(-100));
    expect_encloses(CReal(1) / CReal(3), Rational(1, 3), 10);
    expect_encloses(rat(-7, 3).scaled(5), Rational(-224, 3), 40);
}

TEST(CReal, DivisionByZeroExhausts)
{
    const auto saved = lazyreal::default_budget();
    lazyreal::set_default_budget(200);
    EXPECT_THROW((void)(CReal(1) / CReal(0)).approx(10), lazyreal::EffortExhausted);
    EXPECT_THROW((void)(CReal(1) / (rat(1, 3) - rat(2, 6))).approx(10), lazyreal::EffortExhausted);
    lazyreal::set_default_budget(saved);
}

TEST(CRealProperty, AccuracyAndSoundnessOnClosedForms)
{
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<std::int64_t> acc(-10, 2000);
    for (int i = 0; i < 150; ++i) {
        auto [x, value] = random_expr(rng, 4);
        for (int j = 0; j < 4; ++j) {
            const std::int64_t p = acc(rng);
            const DyInterval iv = x.approx(p);
            ASSERT_TRUE(oracle::contains(iv, value)) << i << " p=" << p;
            ASSERT_LE(oracle::width(iv), oracle::pow2(-p));
        }
    }
}

TEST(CRealProperty, CachedQueriesStayConsistent)
{
    std::mt19937_64 rng(23);
    const CReal x = lazyreal::real_sqrt(CReal(2)) + rat(1, 3);
    std::uniform_int_distribution<std::int64_t> acc(0, 1500);
    std::vector<DyInterval> seen;
    for (int i = 0; i < 60; ++i) {
        const std::int64_t p = acc(rng);
        const DyInterval iv = x.approx(p);
        ASSERT_LE(oracle::width(iv), oracle::pow2(-p));
        for (const auto& other : seen) {
            ASSERT_TRUE(overlaps(iv, other));
        }
        seen.push_back(iv);
        ASSERT_EQ(x.approx(p), iv);
    }
    EXPECT_TRUE(x.cached_accuracy().has_value());
}

TEST(CReal, ConcurrentQueries)
{
    const CReal x = lazyreal::real_sqrt(CReal(5)) * lazyreal::real_pi();
    std::vector<std::thread> threads;
    std::vector<DyInterval> out(8);
    for (int t = 0; t < 8; ++t) {
        threads.emplace_back([&, t] { out[static_cast<std::size_t>(t)] = x.approx(200 + 50 * t); });
    }
    for (auto& th : threads) {
        th.join();
    }
    for (int t = 0; t < 8; ++t) {
        EXPECT_LE(oracle::width(out[static_cast<std::size_t>(t)]), oracle::pow2(-(200 + 50 * t)));
        EXPECT_TRUE(overlaps(out[static_cast<std::size_t>(t)], out[0]));
    }
}

TEST(Compare, Examples)
{
    EXPECT_EQ(lt(CReal(0), CReal(1)).at(0), Kleenean::True);
    EXPECT_EQ(lt(CReal(1), CReal(0)).at(0), Kleenean::False);
    const CReal x = lazyreal::real_sqrt(CReal(2));
    const auto diag = lt(x, x);
    for (lazyreal::Effort n : {0UL, 1UL, 10UL, 100UL, 2000UL}) {
        EXPECT_EQ(diag.at(n), Kleenean::Bot);
    }
    EXPECT_THROW((void)select(diag, lt(x, x), 300), lazyreal::EffortExhausted);
}

TEST(CompareProperty, StabilizesOnRandomRationals)
{
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<long> num(-1000, 1000);
    std::uniform_int_distribution<long> den(1, 1000);
    for (int i = 0; i < 500; ++i) {
        const long an = num(rng), ad = den(rng), bn = num(rng), bd = den(rng);
        const Rational a(an, ad);
        const Rational b(bn, bd);
        // irrational-free but non-dyadic: go through a division node
        const auto k = lt(CReal(an) / CReal(ad), CReal(bn) / CReal(bd));
        const Kleenean expect = a < b ? Kleenean::True : (b < a ? Kleenean::False : Kleenean::Bot);
        ASSERT_EQ(k.at(64), expect) << an << "/" << ad << " vs " << bn << "/" << bd;
        ASSERT_EQ(k.at(200), expect);
    }
}

TEST(Split, Examples)
{
    const Branch either = split(CReal(1), CReal(0), CReal(2));
    EXPECT_TRUE(either == Branch::Left || either == Branch::Right);
    EXPECT_EQ(split(CReal(0), CReal(1), pow2(-5)), Branch::Left);
    EXPECT_EQ(split(CReal(1), CReal(0), pow2(-5)), Branch::Right);
    EXPECT_THROW((void)split(CReal(0), CReal(0), CReal(0), 50), lazyreal::EffortExhausted);
}

TEST(Limit, Examples)
{
    const CReal c = rat(5, 3);
    const CReal lim_c = lazyreal::limit([c](std::int64_t) { return c; });
    for (std::int64_t p : {0, 7, 60, 400}) {
        expect_encloses(lim_c, Rational(5, 3), p);
    }
    const CReal lim0 = lazyreal::limit([](std::int64_t n) { return pow2(-n); });
    expect_encloses(lim0, 0, 30);
    expect_encloses(lim0, 0, 3000);
}

TEST(LimitProperty, WithinTailBound)
{
    // f(n) = 1/3 + (-1)^n 2^-(n+1) / 3: |f(n) - 1/3| <= 2^-n
    const auto f = [](std::int64_t n) { return rat(1, 3) + (n % 2 ? -pow2(-(n + 1)) : pow2(-(n + 1))) / CReal(3); };
    const CReal lim = lazyreal::limit(f);
    for (std::int64_t p = 0; p < 300; p += 13) {
        expect_encloses(lim, Rational(1, 3), p);
        const DyInterval fn = f(p).approx(p + 4);
        const DyInterval li = lim.approx(p + 4);
        const Rational gap = oracle::abs(oracle::rational(fn.midpoint()) - oracle::rational(li.midpoint()));
        EXPECT_LE(gap, oracle::pow2(-p) + oracle::pow2(-(p + 3)));
    }
}

TEST(LimitRefine, IdentityStep)
{
    const CReal c = rat(-2, 7);
    const CReal lim = lazyreal::limit_refine<int>(c, 0, [](std::int64_t, const CReal& x, const int& h) {
        return std::pair{x, h};
    });
    expect_encloses(lim, Rational(-2, 7), 80);
}

namespace {

// seed 1/2; at n = 0 choose 0 or 1 and record the choice in the hint
CReal zero_or_one(std::function<Branch()> choose)
{
    return lazyreal::limit_refine<int>(
        rat(1, 2), -1, [choose](std::int64_t, const CReal& x, const int& hint) -> std::pair<CReal, int> {
            if (hint >= 0) {
                return {x, hint};
            }
            const int pick = choose() == Branch::Left ? 0 : 1;
            return {CReal(pick), pick};
        });
}

} // namespace

TEST(LimitRefine, ZeroOrOneIsASingleCandidate)
{
    const auto t = lazyreal::LazyKleenean::constant(Kleenean::True);
    std::mt19937_64 rng(42);
    int ones = 0;
    for (int run = 0; run < 40; ++run) {
        const CReal lim = zero_or_one([&] { return run == 0 ? select(t, t) : select(t, t, rng); });
        const DyInterval first = lim.approx(3);
        const bool is_one = first.contains(Dyadic(1));
        ones += is_one ? 1 : 0;
        for (std::int64_t p = 3; p <= 40; ++p) {
            const DyInterval iv = lim.approx(p);
            ASSERT_NE(iv.contains(Dyadic(0)), iv.contains(Dyadic(1))) << "p=" << p;
            ASSERT_EQ(iv.contains(Dyadic(1)), is_one);
        }
    }
    EXPECT_GT(ones, 0);
    EXPECT_LT(ones, 40);
}

TEST(LimitRefine, ConsecutiveCloseness)
{
    EXPECT_TRUE(consecutive_close(CReal(0), rat(1, 2), 0, 20));
    EXPECT_FALSE(consecutive_close(CReal(0), rat(3, 4), 0, 20));
    EXPECT_TRUE(consecutive_close(pow2(-3), pow2(-4), 3, 20));
}

TEST(Rounding, RoundNd)
{
    const mpz_class z = lazyreal::round_nd(rat(5, 2));
    EXPECT_TRUE(z == 2 || z == 3);
    const mpz_class z0 = lazyreal::round_nd(CReal(0));
    EXPECT_TRUE(z0 >= -1 && z0 <= 1);
    const mpz_class z7 = lazyreal::round_nd(CReal(7));
    EXPECT_TRUE(z7 >= 6 && z7 <= 8);
    const mpz_class zs = lazyreal::round_nd(lazyreal::real_sqrt(CReal(2)) * CReal(1000));
    EXPECT_TRUE(zs == 1414 || zs == 1415);
}

TEST(Rounding, DyadicApprox)
{
    const mpz_class a = lazyreal::dyadic_approx(rat(1, 3), 2);
    EXPECT_TRUE(a == 1 || a == 2);
    for (std::int64_t n : {0, 5, 30}) {
        const mpz_class z = lazyreal::dyadic_approx(CReal(0), n);
        EXPECT_TRUE(z >= -1 && z <= 1);
    }
    const mpz_class b = lazyreal::dyadic_approx(CReal(1), 3);
    EXPECT_TRUE(b >= 7 && b <= 9);
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<long> num(-10000, 10000);
    for (int i = 0; i < 200; ++i) {
        const long n = num(rng);
        const mpz_class z = lazyreal::dyadic_approx(rat(n, 999), 12);
        const Rational err = oracle::abs(Rational(n, 999) - Rational(oracle::big(z)) * oracle::pow2(-12));
        ASSERT_LE(err, oracle::pow2(-12));
    }
}

TEST(Decimal, Examples)
{
    EXPECT_EQ(lazyreal::to_decimal(CReal(2), 3), "2.000");
    EXPECT_EQ(lazyreal::to_decimal(rat(1, 4), 2), "0.25");
    EXPECT_EQ(lazyreal::to_decimal(rat(1, 3), 5), "0.33333");
    EXPECT_EQ(lazyreal::to_decimal(rat(-1, 3), 5), "-0.33333");
    EXPECT_EQ(lazyreal::to_decimal(rat(2, 3), 4), "0.6667");
    EXPECT_THROW((void)lazyreal::to_decimal(CReal(1), 0), std::invalid_argument);
}

TEST(DecimalProperty, WithinOneUnitOfLastPlace)
{
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<long> num(-100000, 100000);
    std::uniform_int_distribution<long> den(1, 9999);
    std::uniform_int_distribution<int> digits(1, 40);
    for (int i = 0; i < 300; ++i) {
        const long n = num(rng);
        const long d = den(rng);
        const int k = digits(rng);
        const std::string s = lazyreal::to_decimal(rat(n, d), k);
        const auto dot = s.find('.');
        ASSERT_EQ(s.size() - dot - 1, static_cast<std::size_t>(k));
        const bool negative = s.front() == '-';
        std::string digits_only = s.substr(negative ? 1 : 0);
        digits_only.erase(digits_only.find('.'), 1);
        // no leading zeros: the string constructor would read them as octal
        digits_only.erase(0, std::min(digits_only.find_first_not_of('0'), digits_only.size() - 1));
        const oracle::BigInt magnitude(digits_only);
        const Rational printed(negative ? oracle::BigInt(-magnitude) : magnitude,
                               pow(oracle::BigInt(10), static_cast<unsigned>(k)));
        ASSERT_LE(oracle::abs(printed - Rational(n, d)),
                  Rational(1, oracle::BigInt(pow(oracle::BigInt(10), static_cast<unsigned>(k)))))
            << n << "/" << d << " " << s;
    }
}
