#include <random>

#include <gtest/gtest.h>

#include "lazyreal/dyadic.hpp"
#include "oracle.hpp"

using lazyreal::Dyadic;
using lazyreal::RoundDir;

namespace {

Dyadic dy(long m, std::int64_t e) { return Dyadic(mpz_class(m), e); }

Dyadic random_dyadic(std::mt19937_64& rng)
{
    std::uniform_int_distribution<long> mant(-(1L << 40), 1L << 40);
    std::uniform_int_distribution<int> exp(-80, 80);
    std::uniform_int_distribution<int> limbs(0, 3);
    mpz_class m = mant(rng);
    for (int i = limbs(rng); i > 0; --i) {
        m = m * (mpz_class(1) << 61) + mant(rng);
    }
    return Dyadic(m, exp(rng));
}

} // namespace

TEST(Dyadic, AdditionExamples)
{
    EXPECT_EQ(dy(1, 0) + dy(1, 0), dy(1, 1));
    EXPECT_EQ(dy(1, 1).mantissa(), 1);
    EXPECT_EQ(dy(1, 1).exponent(), 1);
    EXPECT_EQ(dy(1, 0) + dy(-1, 0), Dyadic());
    const Dyadic sum = dy(3, -1) + dy(1, -2);
    EXPECT_EQ(sum.mantissa(), 7);
    EXPECT_EQ(sum.exponent(), -2);
}

TEST(Dyadic, MultiplicationExamples)
{
    EXPECT_EQ(dy(3, -1) * dy(3, -1), dy(9, -2));
    EXPECT_EQ(dy(5, 7) * Dyadic(), Dyadic());
    const Dyadic prod = dy(5, 2) * dy(-3, -4);
    EXPECT_EQ(prod.mantissa(), -15);
    EXPECT_EQ(prod.exponent(), -2);
}

TEST(Dyadic, NegationAndOrder)
{
    EXPECT_EQ(-Dyadic(), Dyadic());
    EXPECT_LT(dy(1, -1), dy(1, 0));
    EXPECT_EQ(dy(3, -1) <=> dy(6, -2), std::strong_ordering::equal);
    EXPECT_EQ(dy(3, -1), dy(6, -2));
}

TEST(Dyadic, CanonicalForm)
{
    const Dyadic d(mpz_class(24), 3);
    EXPECT_EQ(d.mantissa(), 3);
    EXPECT_EQ(d.exponent(), 6);
    const Dyadic z(mpz_class(0), 17);
    EXPECT_EQ(z.exponent(), 0);
    EXPECT_EQ(Dyadic(d.mantissa(), d.exponent()), d);
}

TEST(Dyadic, RoundExamples)
{
    EXPECT_EQ(round_bits(dy(9, -2), 2, RoundDir::Down), dy(1, 1));
    EXPECT_EQ(round_bits(dy(9, -2), 2, RoundDir::Up), dy(5, -1));
    for (std::int64_t p = 1; p <= 70; ++p) {
        EXPECT_EQ(round_bits(Dyadic(1), p, RoundDir::Down), Dyadic(1));
        EXPECT_EQ(round_bits(Dyadic(1), p, RoundDir::Up), Dyadic(1));
    }
    EXPECT_THROW((void)round_bits(Dyadic(3), 0, RoundDir::Up), std::invalid_argument);
}

TEST(Dyadic, RoundToGrid)
{
    EXPECT_EQ(round_to_grid(dy(9, -2), 1, RoundDir::Down), Dyadic(2));
    EXPECT_EQ(round_to_grid(dy(9, -2), 1, RoundDir::Up), dy(5, -1));
    EXPECT_EQ(round_to_grid(dy(-9, -2), 0, RoundDir::Down), Dyadic(-3));
    EXPECT_EQ(round_to_grid(dy(-9, -2), 0, RoundDir::Up), Dyadic(-2));
}

TEST(Dyadic, StringForms)
{
    EXPECT_EQ(dy(-19, -3).to_decimal_string(), "-2.375");
    EXPECT_EQ(Dyadic(40).to_decimal_string(), "40");
    EXPECT_EQ(dy(3, -1).to_hex_string(), "0x3p-1");
    EXPECT_EQ(Dyadic::parse("-2.375"), dy(-19, -3));
    EXPECT_EQ(Dyadic::parse("0x3p-1"), dy(3, -1));
    EXPECT_EQ(Dyadic::parse(dy(-5, 2).to_hex_string()), dy(-5, 2));
    EXPECT_THROW((void)Dyadic::parse("0.1"), std::invalid_argument);
    EXPECT_THROW((void)Dyadic::parse("abc"), std::invalid_argument);
}

TEST(Dyadic, ExponentOverflowThrows)
{
    const Dyadic huge(mpz_class(1), INT64_MAX - 1);
    EXPECT_THROW((void)(huge * huge), std::overflow_error);
}

TEST(DyadicProperty, ArithmeticMatchesRationalOracle)
{
    std::mt19937_64 rng(7);
    for (int i = 0; i < 3000; ++i) {
        const Dyadic a = random_dyadic(rng);
        const Dyadic b = random_dyadic(rng);
        const auto ra = oracle::rational(a);
        const auto rb = oracle::rational(b);
        ASSERT_EQ(oracle::rational(a + b), ra + rb);
        ASSERT_EQ(oracle::rational(a - b), ra - rb);
        ASSERT_EQ(oracle::rational(a * b), ra * rb);
        ASSERT_EQ(a < b, ra < rb);
        ASSERT_EQ(a == b, ra == rb);
    }
}

TEST(DyadicProperty, RoundingBracketsAndIsTight)
{
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::int64_t> bits(1, 120);
    for (int i = 0; i < 3000; ++i) {
        const Dyadic a = random_dyadic(rng);
        const std::int64_t p = bits(rng);
        const Dyadic down = round_bits(a, p, RoundDir::Down);
        const Dyadic up = round_bits(a, p, RoundDir::Up);
        ASSERT_LE(down, a);
        ASSERT_LE(a, up);
        if (a.is_zero()) {
            continue;
        }
        // leading bit plus p more, and within one ulp at that precision
        ASSERT_LE(static_cast<std::int64_t>(mpz_sizeinbase(down.mantissa().get_mpz_t(), 2)), p + 1);
        ASSERT_LE(static_cast<std::int64_t>(mpz_sizeinbase(up.mantissa().get_mpz_t(), 2)), p + 1);
        const auto ulp = oracle::pow2(a.floor_log2() - p);
        ASSERT_LT(oracle::rational(a) - oracle::rational(down), ulp);
        ASSERT_LT(oracle::rational(up) - oracle::rational(a), ulp);
    }
}

TEST(DyadicProperty, NormalizationIsIdempotent)
{
    std::mt19937_64 rng(13);
    for (int i = 0; i < 500; ++i) {
        const Dyadic a = random_dyadic(rng);
        ASSERT_EQ(Dyadic(a.mantissa(), a.exponent()), a);
        ASSERT_TRUE(a.is_zero() ? a.exponent() == 0 : mpz_odd_p(a.mantissa().get_mpz_t()) != 0);
    }
}
