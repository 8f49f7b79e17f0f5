#include <endpoint_lab/stern_brocot.hpp>

namespace endpoint_lab
{

namespace
{

enum class side { below, inside, above };

struct fraction {
    mpz_class num;
    mpz_class den;
};

class locator
{
public:
    locator(const sub_interval &iv, const mpz_class &shift) : m_iv(iv), m_shift(shift) {}

    side locate(const fraction &f) const
    {
        const rational x(mpz_class(f.num + m_shift * f.den), f.den);
        if (x < m_iv.lo() || (x == m_iv.lo() && !m_iv.lo_closed())) {
            return side::below;
        }
        if (m_iv.hi() < x || (x == m_iv.hi() && !m_iv.hi_closed())) {
            return side::above;
        }
        return side::inside;
    }

private:
    const sub_interval &m_iv;
    const mpz_class &m_shift;
};

fraction combine(const fraction &moving, const fraction &fixed, const mpz_class &k)
{
    return {moving.num * k + fixed.num, moving.den * k + fixed.den};
}

// Largest k >= 1 such that combine(toward, from, k) is still on `dir`,
// given that k = 1 is.
mpz_class gallop(const locator &loc, const fraction &toward, const fraction &from, side dir)
{
    mpz_class good = 1;
    mpz_class bad = 2;
    while (loc.locate(combine(toward, from, bad)) == dir) {
        good = bad;
        bad *= 2;
    }
    while (bad - good > 1) {
        mpz_class mid = (good + bad) / 2;
        if (loc.locate(combine(toward, from, mid)) == dir) {
            good = mid;
        } else {
            bad = mid;
        }
    }
    return good;
}

} // namespace

denominator_witness smallest_denominator(const sub_interval &iv)
{
    if (iv.degenerate()) {
        return {iv.lo().den(), iv.lo()};
    }

    mpz_class first_int = iv.lo().ceil();
    if (rational(first_int, mpz_class(1)) == iv.lo() && !iv.lo_closed()) {
        first_int += 1;
    }
    if (iv.contains(rational(first_int, mpz_class(1)))) {
        return {mpz_class(1), rational(first_int, mpz_class(1))};
    }

    // No integer inside: iv sits strictly between shift and shift + 1.
    const mpz_class shift = iv.lo().floor();
    const locator loc(iv, shift);
    fraction left{0, 1};
    fraction right{1, 1};
    for (;;) {
        const fraction med{left.num + right.num, left.den + right.den};
        const side s = loc.locate(med);
        if (s == side::inside) {
            return {med.den, rational(mpz_class(med.num + shift * med.den), med.den)};
        }
        if (s == side::above) {
            const mpz_class k = gallop(loc, left, right, side::above);
            right = combine(left, right, k);
        } else {
            const mpz_class k = gallop(loc, right, left, side::below);
            left = combine(right, left, k);
        }
    }
}

} // namespace endpoint_lab
