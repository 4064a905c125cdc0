#include "lazyreal/complex.hpp"

#include <array>
#include <optional>

#include "lazyreal/algorithms.hpp"

namespace lazyreal {

Complex operator+(const Complex& x, const Complex& y) { return {x.re + y.re, x.im + y.im}; }

Complex operator-(const Complex& x, const Complex& y) { return {x.re - y.re, x.im - y.im}; }

Complex operator*(const Complex& x, const Complex& y)
{
    return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
}

Complex operator-(const Complex& x) { return {-x.re, -x.im}; }

CReal norm(const Complex& z) { return real_max(real_abs(z.re), real_abs(z.im)); }

Complex csqrt_nonzero(const Complex& z, Effort budget)
{
    const CReal zero;
    const std::array<LazyKleenean, 4> cases{lt(z.re, zero), lt(zero, z.re), lt(z.im, zero), lt(zero, z.im)};
    const std::size_t which = select_any(cases, budget);

    const CReal& a = z.re;
    const CReal& b = z.im;
    const CReal r = real_sqrt(a * a + b * b);
    switch (which) {
    case 0: {
        // a < 0: the imaginary part sqrt((r - a) / 2) is bounded away from 0
        const CReal im = real_sqrt((r - a).scaled(-1));
        return {b / im.scaled(1), im};
    }
    case 1: {
        // a > 0: the real part sqrt((r + a) / 2) is bounded away from 0
        const CReal re = real_sqrt((r + a).scaled(-1));
        return {re, b / re.scaled(1)};
    }
    default: {
        // sign of b known: sqrt((r + a) / 2) + i sgn(b) sqrt((r - a) / 2)
        const CReal re = real_sqrt((r + a).scaled(-1));
        const CReal im = real_sqrt((r - a).scaled(-1));
        return {re, which == 2 ? -im : im};
    }
    }
}

Complex csqrt(const Complex& z)
{
    // Hint: the chosen root once |z| > 0 has been certified, nothing before.
    using Hint = std::optional<Complex>;
    const CReal zero;

    // Element m is 0 while |z| < 2^-2(m+2); then every root has max-norm
    // below 2^(1/4) 2^-(m+2) <= 2^-(m+1), so a later switch to a root stays
    // within the consecutive-closeness bound.
    auto refine = [z, zero](std::int64_t m) -> Hint {
        const CReal eps = CReal::from_dyadic(Dyadic(mpz_class(1), -2 * (m + 2)));
        const LazyKleenean small = lt(-eps, z.re) & lt(z.re, eps) & lt(-eps, z.im) & lt(z.im, eps);
        const LazyKleenean nonzero = lt(z.re, zero) | lt(zero, z.re) | lt(z.im, zero) | lt(zero, z.im);
        if (select(small, nonzero) == Branch::Left) {
            return std::nullopt;
        }
        return csqrt_nonzero(z);
    };

    const Hint seed_hint = refine(0);
    const Complex seed = seed_hint.value_or(Complex{zero, zero});
    return complex_limit_refine<Hint>(
        seed, seed_hint, [refine, zero](std::int64_t n, const Complex& x, const Hint& hint) {
            if (hint) {
                return std::pair{x, hint};
            }
            Hint next = refine(n + 1);
            return std::pair{next.value_or(Complex{zero, zero}), next};
        });
}

} // namespace lazyreal
