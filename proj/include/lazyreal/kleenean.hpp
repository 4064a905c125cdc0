#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <span>
#include <string_view>

#include "lazyreal/errors.hpp"

namespace lazyreal {

/// Kleene three-valued truth value. Bot is the undecided/diverging value.
enum class Kleenean : std::uint8_t { False, True, Bot };

constexpr Kleenean operator!(Kleenean a) noexcept
{
    switch (a) {
    case Kleenean::True:
        return Kleenean::False;
    case Kleenean::False:
        return Kleenean::True;
    default:
        return Kleenean::Bot;
    }
}

constexpr Kleenean operator&(Kleenean a, Kleenean b) noexcept
{
    if (a == Kleenean::False || b == Kleenean::False) {
        return Kleenean::False;
    }
    if (a == Kleenean::True && b == Kleenean::True) {
        return Kleenean::True;
    }
    return Kleenean::Bot;
}

constexpr Kleenean operator|(Kleenean a, Kleenean b) noexcept
{
    if (a == Kleenean::True || b == Kleenean::True) {
        return Kleenean::True;
    }
    if (a == Kleenean::False && b == Kleenean::False) {
        return Kleenean::False;
    }
    return Kleenean::Bot;
}

constexpr bool is_defined(Kleenean a) noexcept { return a != Kleenean::Bot; }

std::string_view to_string(Kleenean a) noexcept;

using Effort = std::uint64_t;

/// A semi-decision: an effort-indexed sequence of Kleeneans that, once it
/// leaves Bot, keeps that value at every larger effort.
///
/// The wrapped approximant need not be monotone on its own. Answers are
/// memoized so that the first defined answer sticks for all larger efforts;
/// approximants are required never to give True at one effort and False at
/// another. Copies share the memo and are safe to query concurrently.
class LazyKleenean {
public:
    using Approximant = std::function<Kleenean(Effort)>;

    explicit LazyKleenean(Approximant approximant);

    static LazyKleenean constant(Kleenean k);

    Kleenean at(Effort n) const;

    friend LazyKleenean operator!(const LazyKleenean& a);
    friend LazyKleenean operator&(const LazyKleenean& a, const LazyKleenean& b);
    friend LazyKleenean operator|(const LazyKleenean& a, const LazyKleenean& b);

private:
    struct State;
    std::shared_ptr<State> state_;
};

enum class Branch { Left, Right };

/// Returns a branch whose semi-decision reached True at some effort up to
/// the stopping effort. Efforts are visited in lockstep: at effort n the left
/// side is queried, then the right, then n advances. Ties go Left.
/// Throws EffortExhausted when neither side is True by `budget`.
Branch select(const LazyKleenean& left, const LazyKleenean& right, Effort budget = default_budget());

/// Lockstep select with a randomized query order at each effort level. Any
/// returned branch is a valid answer; the generator only picks among them.
Branch select(const LazyKleenean& left, const LazyKleenean& right, std::mt19937_64& rng,
              Effort budget = default_budget());

/// N-way select: index of a semi-decision that reached True.
std::size_t select_any(std::span<const LazyKleenean> options, Effort budget = default_budget());

} // namespace lazyreal
