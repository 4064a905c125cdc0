#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "lazyreal/dyadic.hpp"
#include "lazyreal/errors.hpp"
#include "lazyreal/interval.hpp"
#include "lazyreal/kleenean.hpp"

namespace lazyreal {

namespace detail {

class RealNode {
public:
    virtual ~RealNode() = default;

    /// Interval of width <= 2^-p containing the represented real.
    virtual DyInterval approx(std::int64_t p) const;

    /// Highest accuracy held in the cache, if any.
    std::optional<std::int64_t> cached_accuracy() const;

protected:
    virtual DyInterval compute(std::int64_t p) const = 0;

private:
    mutable std::mutex mutex_;
    mutable std::optional<DyInterval> cache_;
    mutable std::int64_t cache_accuracy_ = 0;
};

} // namespace detail

/// A real number given by an oracle from accuracy p (bits) to a dyadic
/// interval of width at most 2^-p that contains it.
///
/// Arithmetic builds a shared DAG; evaluation happens on query, with
/// precision iteration inside multiplication and division. Every node caches
/// its tightest interval, so repeated or lower-accuracy queries are cheap.
/// Values are immutable and may be shared across threads.
class CReal {
public:
    CReal();
    CReal(long value); // NOLINT(google-explicit-constructor)
    explicit CReal(std::shared_ptr<const detail::RealNode> node) : node_(std::move(node)) {}

    static CReal from_integer(const mpz_class& z);
    static CReal from_dyadic(const Dyadic& d);
    /// Exact num/den; den must be nonzero.
    static CReal from_rational(const mpz_class& num, const mpz_class& den);
    /// Wrap a raw interval oracle. The oracle must honour the accuracy and
    /// soundness contract; it is cached like any other node.
    static CReal from_approximant(std::function<DyInterval(std::int64_t)> oracle);

    DyInterval approx(std::int64_t p) const { return node_->approx(p); }
    std::optional<std::int64_t> cached_accuracy() const { return node_->cached_accuracy(); }

    /// x * 2^k, exact.
    CReal scaled(std::int64_t k) const;

    friend CReal operator+(const CReal& x, const CReal& y);
    friend CReal operator-(const CReal& x, const CReal& y);
    friend CReal operator*(const CReal& x, const CReal& y);
    /// Throws EffortExhausted on query if y cannot be separated from zero
    /// within the default budget.
    friend CReal operator/(const CReal& x, const CReal& y);
    friend CReal operator-(const CReal& x);

private:
    std::shared_ptr<const detail::RealNode> node_;
};

/// Semi-decision of x < y: True once intervals certify x < y, False once they
/// certify y < x, Bot otherwise. Bot forever when x == y.
LazyKleenean lt(const CReal& x, const CReal& y);
inline LazyKleenean gt(const CReal& x, const CReal& y) { return lt(y, x); }

/// Approximate splitting. Left certifies x < y + eps, Right certifies
/// y < x + eps. Requires eps > 0; otherwise may throw EffortExhausted.
Branch split(const CReal& x, const CReal& y, const CReal& eps, Effort budget = default_budget());

/// Limit of a fast Cauchy sequence, |f(n) - lim| <= 2^-n.
CReal limit(std::function<CReal(std::int64_t)> sequence);

/// Memoized trajectory of a nondeterministic refinement process. Each step
/// sees the point and hint produced by the previous step, so every index is
/// computed once and later indices extend the same choices.
template <class Point, class Hint>
class RefinementTrajectory {
public:
    using Step = std::function<std::pair<Point, Hint>(std::int64_t, const Point&, const Hint&)>;

    RefinementTrajectory(Point seed, Hint hint, Step step) : step_(std::move(step))
    {
        points_.push_back(std::move(seed));
        hints_.push_back(std::move(hint));
    }

    Point at(std::int64_t n)
    {
        std::lock_guard lock(mutex_);
        while (static_cast<std::int64_t>(points_.size()) <= n) {
            const auto i = static_cast<std::int64_t>(points_.size()) - 1;
            auto [next, hint] = step_(i, points_.back(), hints_.back());
            points_.push_back(std::move(next));
            hints_.push_back(std::move(hint));
        }
        return points_[static_cast<std::size_t>(n)];
    }

    Hint hint_at(std::int64_t n)
    {
        at(n);
        std::lock_guard lock(mutex_);
        return hints_[static_cast<std::size_t>(n)];
    }

private:
    std::mutex mutex_;
    Step step_;
    std::vector<Point> points_;
    std::vector<Hint> hints_;
};

template <class Hint>
using RefinementStep = typename RefinementTrajectory<CReal, Hint>::Step;

/// Limit of the sequence x_0 = seed, (x_{n+1}, h_{n+1}) = step(n, x_n, h_n).
/// The step must keep |x_{n+1} - x_n| <= 2^-(n+1); then |x_n - lim| <= 2^-n.
template <class Hint>
CReal limit_refine(CReal seed, Hint hint, RefinementStep<Hint> step)
{
    auto trajectory =
        std::make_shared<RefinementTrajectory<CReal, Hint>>(std::move(seed), std::move(hint), std::move(step));
    return limit([trajectory](std::int64_t n) { return trajectory->at(n); });
}

/// Whether x_n and x_next are consistent with |x_next - x_n| <= 2^-(n+1),
/// judged from intervals at the given accuracy.
bool consecutive_close(const CReal& x_n, const CReal& x_next, std::int64_t n, std::int64_t accuracy);

/// Some integer z with z - 1 < x < z + 1.
mpz_class round_nd(const CReal& x, Effort budget = default_budget());

/// Some integer z with |x - z * 2^-n| <= 2^-n.
mpz_class dyadic_approx(const CReal& x, std::int64_t n, Effort budget = default_budget());

/// Decimal D with |x - D| <= 10^-digits. Requires digits >= 1.
std::string to_decimal(const CReal& x, std::int64_t digits);

/// Accuracy a comparison queries at effort n: n itself for small n, then n
/// rounded up onto a geometric grid so that sweeps over consecutive efforts
/// reuse cached intervals.
std::int64_t comparison_accuracy(Effort n);

} // namespace lazyreal
