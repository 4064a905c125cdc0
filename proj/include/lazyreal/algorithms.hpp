#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>

#include "lazyreal/creal.hpp"

namespace lazyreal {

/// max(x, y) as the limit of n -> (x or y), where each term is picked by
/// splitting with tolerance 2^-n.
CReal real_max(const CReal& x, const CReal& y);

CReal real_abs(const CReal& x);

/// pi = 16 atan(1/5) - 4 atan(1/239), as the limit of exact partial sums.
/// Each call builds a fresh, uncached value.
CReal real_pi();

using RealFunction = std::function<CReal(const CReal&)>;

/// Zero of f in (a, b) by trisection, for f continuous with f(a) < 0 < f(b)
/// and exactly one zero in between. Queries throw EffortExhausted when no
/// trisection step can be certified (bad bracket).
CReal ivt_trisect(RealFunction f, const CReal& a, const CReal& b);

/// Bracket [a_i, b_i] after i trisection steps; exposed for testing.
/// The returned pair stays valid while the trisection value is alive.
class Trisection {
public:
    Trisection(RealFunction f, CReal a, CReal b);

    std::pair<CReal, CReal> bracket(std::int64_t step) const;
    /// Midpoint of the bracket after `step` steps.
    CReal midpoint(std::int64_t step) const;
    /// Zero as the limit of the midpoints.
    CReal root() const;

private:
    struct State;
    std::shared_ptr<State> state_;
};

/// heron(x, 0) = 1, heron(x, n+1) = (h + x / h) / 2.
CReal heron(const CReal& x, std::int64_t n);

/// sqrt(x) for 0.25 <= x <= 2 as a limit of Heron iterates.
CReal sqrt_restricted(const CReal& x);

struct ScaledReal {
    std::int64_t z;
    CReal scaled; ///< 4^z * x, inside [0.25, 2]
};

/// Find z with 4^z * x in [0.25, 2], for x > 0.
ScaledReal sqrt_scale(const CReal& x, Effort budget = default_budget());

/// Square root for x >= 0. Queries throw EffortExhausted for x < 0.
CReal real_sqrt(const CReal& x);

} // namespace lazyreal
