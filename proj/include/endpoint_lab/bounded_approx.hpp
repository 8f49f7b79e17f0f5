#ifndef ENDPOINT_LAB_BOUNDED_APPROX_HPP
#define ENDPOINT_LAB_BOUNDED_APPROX_HPP

#include <endpoint_lab/rational.hpp>

namespace endpoint_lab
{

// An unknown real r known only through |r - value| <= error_bound.
struct bounded_approx {
    rational value;
    rational error_bound;

    static bounded_approx exact(rational v) { return {std::move(v), rational(0)}; }

    rational lower() const { return value - error_bound; }
    rational upper() const { return value + error_bound; }
    bool contains(const rational &r) const { return lower() <= r && r <= upper(); }
};

bounded_approx operator+(const bounded_approx &x, const bounded_approx &y);
bounded_approx operator-(const bounded_approx &x, const bounded_approx &y);
bounded_approx operator-(const bounded_approx &x);
// |xy - x'y'| <= |x| e_y + |y| e_x + e_x e_y.
bounded_approx operator*(const bounded_approx &x, const bounded_approx &y);
bounded_approx scale(const bounded_approx &x, const rational &factor);

// Returns v with |v - sqrt(x)| <= the returned bound <= requested_bound.
// The bound is zero when x is the square of a rational.
bounded_approx sqrt_approx(const rational &x, const rational &requested_bound);

} // namespace endpoint_lab

#endif
