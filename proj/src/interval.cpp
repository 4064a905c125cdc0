#include "lazyreal/interval.hpp"

#include <stdexcept>

#include "lazyreal/errors.hpp"

namespace lazyreal {

DyInterval::DyInterval(Dyadic lo, Dyadic hi) : lo_(std::move(lo)), hi_(std::move(hi))
{
    if (hi_ < lo_) {
        throw std::invalid_argument("interval with lo > hi: [" + lo_.to_decimal_string() + ", " +
                                    hi_.to_decimal_string() + "]");
    }
}

Dyadic DyInterval::magnitude() const
{
    return max(-lo_, hi_);
}

std::string DyInterval::to_string() const
{
    return "[" + lo_.to_decimal_string() + ", " + hi_.to_decimal_string() + "]";
}

DyInterval operator+(const DyInterval& a, const DyInterval& b)
{
    return DyInterval(a.lo() + b.lo(), a.hi() + b.hi());
}

DyInterval operator-(const DyInterval& a, const DyInterval& b)
{
    return DyInterval(a.lo() - b.hi(), a.hi() - b.lo());
}

DyInterval operator-(const DyInterval& a)
{
    return DyInterval(-a.hi(), -a.lo());
}

DyInterval operator*(const DyInterval& a, const DyInterval& b)
{
    // sign-case split keeps the common all-positive case at two products
    if (a.lo().sign() >= 0 && b.lo().sign() >= 0) {
        return DyInterval(a.lo() * b.lo(), a.hi() * b.hi());
    }
    if (a.hi().sign() <= 0 && b.hi().sign() <= 0) {
        return DyInterval(a.hi() * b.hi(), a.lo() * b.lo());
    }
    const Dyadic p1 = a.lo() * b.lo();
    const Dyadic p2 = a.lo() * b.hi();
    const Dyadic p3 = a.hi() * b.lo();
    const Dyadic p4 = a.hi() * b.hi();
    return DyInterval(min(min(p1, p2), min(p3, p4)), max(max(p1, p2), max(p3, p4)));
}

namespace {

template <class DivideFn>
DyInterval divide_with(const DyInterval& a, const DyInterval& b, DivideFn div)
{
    if (b.contains_zero()) {
        throw DivisorStraddlesZero();
    }
    if (b.hi().sign() < 0) {
        return -divide_with(a, -b, div);
    }
    // b > 0: x/y is increasing in x, and its monotonicity in y follows the sign of x
    const Dyadic& lo_den = a.lo().sign() >= 0 ? b.hi() : b.lo();
    const Dyadic& hi_den = a.hi().sign() >= 0 ? b.lo() : b.hi();
    return DyInterval(div(a.lo(), lo_den, RoundDir::Down), div(a.hi(), hi_den, RoundDir::Up));
}

} // namespace

DyInterval divide(const DyInterval& a, const DyInterval& b, std::int64_t bits)
{
    return divide_with(a, b, [bits](const Dyadic& x, const Dyadic& y, RoundDir dir) {
        return divide_bits(x, y, bits, dir);
    });
}

DyInterval divide_to_grid(const DyInterval& a, const DyInterval& b, std::int64_t q)
{
    return divide_with(a, b, [q](const Dyadic& x, const Dyadic& y, RoundDir dir) {
        return lazyreal::divide_to_grid(x, y, q, dir);
    });
}

DyInterval round_out(const DyInterval& a, std::int64_t bits)
{
    return DyInterval(round_bits(a.lo(), bits, RoundDir::Down), round_bits(a.hi(), bits, RoundDir::Up));
}

DyInterval round_out_to_grid(const DyInterval& a, std::int64_t q)
{
    return DyInterval(round_to_grid(a.lo(), q, RoundDir::Down), round_to_grid(a.hi(), q, RoundDir::Up));
}

DyInterval shifted(const DyInterval& a, std::int64_t k)
{
    return DyInterval(a.lo().shifted(k), a.hi().shifted(k));
}

DyInterval widened(const DyInterval& a, const Dyadic& r)
{
    return DyInterval(a.lo() - r, a.hi() + r);
}

bool overlaps(const DyInterval& a, const DyInterval& b)
{
    return !(a.hi() < b.lo() || b.hi() < a.lo());
}

DyInterval intersect(const DyInterval& a, const DyInterval& b)
{
    return DyInterval(max(a.lo(), b.lo()), min(a.hi(), b.hi()));
}

} // namespace lazyreal
