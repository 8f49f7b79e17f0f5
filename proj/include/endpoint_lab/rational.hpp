#ifndef ENDPOINT_LAB_RATIONAL_HPP
#define ENDPOINT_LAB_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace endpoint_lab
{

// Exact arbitrary-precision fraction kept in canonical form: positive
// denominator and gcd(|num|, den) = 1. Immutable once built.
class rational
{
public:
    rational() = default;
    rational(std::int64_t n) : m_value(static_cast<long>(n)) {} // NOLINT(google-explicit-constructor)
    rational(std::int64_t num, std::int64_t den);
    rational(const mpz_class &num, const mpz_class &den);
    explicit rational(mpq_class q);

    // Accepts "p/q" or "p" with optional leading sign. Decimal and
    // exponent forms are rejected.
    static rational parse(std::string_view text);

    const mpz_class &num() const { return m_value.get_num(); }
    const mpz_class &den() const { return m_value.get_den(); }
    const mpq_class &mpq() const { return m_value; }

    int sign() const { return sgn(m_value); }
    bool is_zero() const { return sign() == 0; }
    bool is_integer() const { return den() == 1; }

    // "p/q", or "p" for integers.
    std::string str() const { return m_value.get_str(); }
    double to_double() const { return m_value.get_d(); }

    mpz_class floor() const;
    mpz_class ceil() const;

    friend rational operator+(const rational &x, const rational &y) { return rational(mpq_class(x.m_value + y.m_value)); }
    friend rational operator-(const rational &x, const rational &y) { return rational(mpq_class(x.m_value - y.m_value)); }
    friend rational operator*(const rational &x, const rational &y) { return rational(mpq_class(x.m_value * y.m_value)); }
    friend rational operator/(const rational &x, const rational &y);
    friend rational operator-(const rational &x) { return rational(mpq_class(-x.m_value)); }

    rational &operator+=(const rational &y) { return *this = *this + y; }
    rational &operator-=(const rational &y) { return *this = *this - y; }
    rational &operator*=(const rational &y) { return *this = *this * y; }
    rational &operator/=(const rational &y) { return *this = *this / y; }

    friend bool operator==(const rational &x, const rational &y) { return x.m_value == y.m_value; }
    friend std::strong_ordering operator<=>(const rational &x, const rational &y)
    {
        const int c = cmp(x.m_value, y.m_value);
        return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    mpq_class m_value{0};
};

std::ostream &operator<<(std::ostream &os, const rational &r);

rational abs(const rational &r);
rational pow(const rational &base, int exponent);
const rational &min(const rational &x, const rational &y);
const rational &max(const rational &x, const rational &y);
rational midpoint(const rational &x, const rational &y);

} // namespace endpoint_lab

#endif
