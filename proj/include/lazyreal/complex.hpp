#pragma once

#include "lazyreal/creal.hpp"

namespace lazyreal {

/// Complex number as a pair of reals, normed by max(|re|, |im|).
struct Complex {
    CReal re;
    CReal im;
};

Complex operator+(const Complex& x, const Complex& y);
Complex operator-(const Complex& x, const Complex& y);
Complex operator*(const Complex& x, const Complex& y);
Complex operator-(const Complex& x);

/// Maximum norm.
CReal norm(const Complex& z);

/// A square root of z != 0. One of the sign cases re < 0, re > 0, im < 0,
/// im > 0 is certified and selects the formula variant.
Complex csqrt_nonzero(const Complex& z, Effort budget = default_budget());

/// A square root of any z, including 0, as a nondeterministic limit whose
/// terms are 0 while |z| is certifiably tiny and a fixed root afterwards.
Complex csqrt(const Complex& z);

/// Limit of a complex refinement trajectory, componentwise.
template <class Hint>
Complex complex_limit_refine(Complex seed, Hint hint,
                             typename RefinementTrajectory<Complex, Hint>::Step step)
{
    auto trajectory =
        std::make_shared<RefinementTrajectory<Complex, Hint>>(std::move(seed), std::move(hint), std::move(step));
    return Complex{limit([trajectory](std::int64_t n) { return trajectory->at(n).re; }),
                   limit([trajectory](std::int64_t n) { return trajectory->at(n).im; })};
}

} // namespace lazyreal
