#include <endpoint_lab/bounded_approx.hpp>

#include <endpoint_lab/errors.hpp>

namespace endpoint_lab
{

bounded_approx operator+(const bounded_approx &x, const bounded_approx &y)
{
    return {x.value + y.value, x.error_bound + y.error_bound};
}

bounded_approx operator-(const bounded_approx &x, const bounded_approx &y)
{
    return {x.value - y.value, x.error_bound + y.error_bound};
}

bounded_approx operator-(const bounded_approx &x)
{
    return {-x.value, x.error_bound};
}

bounded_approx operator*(const bounded_approx &x, const bounded_approx &y)
{
    return {x.value * y.value,
            abs(x.value) * y.error_bound + abs(y.value) * x.error_bound + x.error_bound * y.error_bound};
}

bounded_approx scale(const bounded_approx &x, const rational &factor)
{
    return {x.value * factor, abs(factor) * x.error_bound};
}

namespace
{

bool perfect_square(const mpz_class &n, mpz_class &root)
{
    if (n < 0) {
        return false;
    }
    mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
    return root * root == n;
}

} // namespace

bounded_approx sqrt_approx(const rational &x, const rational &requested_bound)
{
    if (x.sign() < 0) {
        throw domain_error("sqrt_approx: negative argument " + x.str());
    }
    if (requested_bound.sign() <= 0) {
        throw domain_error("sqrt_approx: error bound must be positive");
    }
    mpz_class rn;
    mpz_class rd;
    if (perfect_square(x.num(), rn) && perfect_square(x.den(), rd)) {
        return bounded_approx::exact(rational(rn, rd));
    }

    // Work on the dyadic grid 1/N with N = 2^k >= 1/(2 * bound). With
    // m = floor(x N^2) and s = isqrt(m): s^2 <= x N^2 < (s+1)^2, so sqrt(x)
    // lies in [s/N, (s+1)/N] and the midpoint is within 1/(2N).
    const rational half_width_target = requested_bound * rational(2);
    mpz_class n = 1;
    while (rational(mpz_class(1), n) > half_width_target) {
        n *= 2;
    }
    const mpz_class scaled = (x * rational(mpz_class(n * n), mpz_class(1))).floor();
    mpz_class s;
    mpz_sqrt(s.get_mpz_t(), scaled.get_mpz_t());
    return {rational(mpz_class(2 * s + 1), mpz_class(2 * n)), rational(mpz_class(1), mpz_class(2 * n))};
}

} // namespace endpoint_lab
