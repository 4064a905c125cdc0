#pragma once

#include <cstdint>
#include <string>

#include "lazyreal/dyadic.hpp"

namespace lazyreal {

/// Closed interval [lo, hi] with dyadic endpoints, lo <= hi.
///
/// Addition, subtraction and multiplication are exact on endpoints. Only
/// division rounds, and always outward.
class DyInterval {
public:
    DyInterval() = default;
    /// Throws std::invalid_argument when lo > hi.
    DyInterval(Dyadic lo, Dyadic hi);

    static DyInterval point(const Dyadic& d) { return DyInterval(d, d); }

    const Dyadic& lo() const noexcept { return lo_; }
    const Dyadic& hi() const noexcept { return hi_; }

    Dyadic width() const { return hi_ - lo_; }
    Dyadic midpoint() const { return (lo_ + hi_).shifted(-1); }

    bool contains(const Dyadic& d) const { return lo_ <= d && d <= hi_; }
    bool contains(const DyInterval& other) const { return lo_ <= other.lo_ && other.hi_ <= hi_; }
    bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }

    /// Largest |x| over the interval.
    Dyadic magnitude() const;

    std::string to_string() const;

    friend bool operator==(const DyInterval&, const DyInterval&) = default;

private:
    Dyadic lo_;
    Dyadic hi_;
};

DyInterval operator+(const DyInterval& a, const DyInterval& b);
DyInterval operator-(const DyInterval& a, const DyInterval& b);
DyInterval operator-(const DyInterval& a);
DyInterval operator*(const DyInterval& a, const DyInterval& b);

/// Outward-rounded quotient with endpoints at precision `bits` (see round_bits).
/// Throws DivisorStraddlesZero when 0 is in b.
DyInterval divide(const DyInterval& a, const DyInterval& b, std::int64_t bits);

/// Outward-rounded quotient with endpoints on the grid 2^-q.
DyInterval divide_to_grid(const DyInterval& a, const DyInterval& b, std::int64_t q);

/// Widen endpoints to precision `bits` (see round_bits).
DyInterval round_out(const DyInterval& a, std::int64_t bits);

/// Widen endpoints to multiples of 2^-q.
DyInterval round_out_to_grid(const DyInterval& a, std::int64_t q);

/// Scale both endpoints by 2^k.
DyInterval shifted(const DyInterval& a, std::int64_t k);

/// [lo - r, hi + r]
DyInterval widened(const DyInterval& a, const Dyadic& r);

/// Intersection; the caller guarantees that a and b overlap.
DyInterval intersect(const DyInterval& a, const DyInterval& b);

bool overlaps(const DyInterval& a, const DyInterval& b);

} // namespace lazyreal
