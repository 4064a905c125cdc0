#include "lazyreal/kleenean.hpp"

#include <atomic>
#include <limits>

namespace lazyreal {

namespace {

std::atomic<std::uint64_t> g_default_budget{std::uint64_t{1} << 20};

} // namespace

std::uint64_t default_budget() noexcept { return g_default_budget.load(std::memory_order_relaxed); }

void set_default_budget(std::uint64_t budget) noexcept
{
    g_default_budget.store(budget, std::memory_order_relaxed);
}

std::string_view to_string(Kleenean a) noexcept
{
    switch (a) {
    case Kleenean::True:
        return "true";
    case Kleenean::False:
        return "false";
    default:
        return "bot";
    }
}

struct LazyKleenean::State {
    explicit State(Approximant f) : approximant(std::move(f)) {}

    Approximant approximant;
    // smallest effort known to be defined, and the value found there
    std::atomic<Effort> onset{std::numeric_limits<Effort>::max()};
    std::atomic<Kleenean> value{Kleenean::Bot};
};

LazyKleenean::LazyKleenean(Approximant approximant)
    : state_(std::make_shared<State>(std::move(approximant)))
{
}

LazyKleenean LazyKleenean::constant(Kleenean k)
{
    return LazyKleenean([k](Effort) { return k; });
}

Kleenean LazyKleenean::at(Effort n) const
{
    Effort onset = state_->onset.load(std::memory_order_acquire);
    if (onset <= n) {
        return state_->value.load(std::memory_order_relaxed);
    }
    const Kleenean k = state_->approximant(n);
    if (is_defined(k)) {
        state_->value.store(k, std::memory_order_relaxed);
        while (n < onset &&
               !state_->onset.compare_exchange_weak(onset, n, std::memory_order_release,
                                                    std::memory_order_acquire)) {
        }
    }
    return k;
}

LazyKleenean operator!(const LazyKleenean& a)
{
    return LazyKleenean([a](Effort n) { return !a.at(n); });
}

LazyKleenean operator&(const LazyKleenean& a, const LazyKleenean& b)
{
    return LazyKleenean([a, b](Effort n) { return a.at(n) & b.at(n); });
}

LazyKleenean operator|(const LazyKleenean& a, const LazyKleenean& b)
{
    return LazyKleenean([a, b](Effort n) { return a.at(n) | b.at(n); });
}

Branch select(const LazyKleenean& left, const LazyKleenean& right, Effort budget)
{
    for (Effort n = 0; n <= budget; ++n) {
        if (left.at(n) == Kleenean::True) {
            return Branch::Left;
        }
        const Kleenean r = right.at(n);
        if (r == Kleenean::True) {
            return Branch::Right;
        }
        // both refuted: neither can become true at any later effort
        if (r == Kleenean::False && left.at(n) == Kleenean::False) {
            break;
        }
    }
    throw EffortExhausted(budget, "select found no true branch");
}

Branch select(const LazyKleenean& left, const LazyKleenean& right, std::mt19937_64& rng, Effort budget)
{
    for (Effort n = 0; n <= budget; ++n) {
        const bool right_first = (rng() & 1U) != 0;
        const LazyKleenean& first = right_first ? right : left;
        const LazyKleenean& second = right_first ? left : right;
        if (first.at(n) == Kleenean::True) {
            return right_first ? Branch::Right : Branch::Left;
        }
        const Kleenean s = second.at(n);
        if (s == Kleenean::True) {
            return right_first ? Branch::Left : Branch::Right;
        }
        if (s == Kleenean::False && first.at(n) == Kleenean::False) {
            break;
        }
    }
    throw EffortExhausted(budget, "select found no true branch");
}

std::size_t select_any(std::span<const LazyKleenean> options, Effort budget)
{
    for (Effort n = 0; n <= budget; ++n) {
        bool all_false = true;
        for (std::size_t i = 0; i < options.size(); ++i) {
            const Kleenean k = options[i].at(n);
            if (k == Kleenean::True) {
                return i;
            }
            all_false = all_false && k == Kleenean::False;
        }
        if (all_false) {
            break;
        }
    }
    throw EffortExhausted(budget, "select found no true branch");
}

} // namespace lazyreal
