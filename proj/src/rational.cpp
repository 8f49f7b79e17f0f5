#include <endpoint_lab/rational.hpp>

#include <cctype>
#include <ostream>

#include <endpoint_lab/errors.hpp>

namespace endpoint_lab
{

namespace
{

bool is_integer_literal(std::string_view s)
{
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        s.remove_prefix(1);
    }
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

mpz_class parse_integer(std::string_view s)
{
    std::string digits(s);
    if (!digits.empty() && digits.front() == '+') {
        digits.erase(0, 1);
    }
    return mpz_class(digits, 10);
}

} // namespace

rational::rational(std::int64_t num, std::int64_t den) : rational(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den))) {}

rational::rational(const mpz_class &num, const mpz_class &den)
{
    if (den == 0) {
        throw domain_error("rational: zero denominator");
    }
    m_value = mpq_class(num, den);
    m_value.canonicalize();
}

rational::rational(mpq_class q) : m_value(std::move(q))
{
    m_value.canonicalize();
}

rational rational::parse(std::string_view text)
{
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
        text.remove_prefix(1);
    }
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
        text.remove_suffix(1);
    }
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        if (!is_integer_literal(text)) {
            throw parse_error("not an exact rational (expected \"p/q\" or \"p\"): \"" + std::string(text) + "\"");
        }
        return rational(parse_integer(text), mpz_class(1));
    }
    const auto num = text.substr(0, slash);
    const auto den = text.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den)) {
        throw parse_error("not an exact rational (expected \"p/q\" or \"p\"): \"" + std::string(text) + "\"");
    }
    return rational(parse_integer(num), parse_integer(den));
}

mpz_class rational::floor() const
{
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), num().get_mpz_t(), den().get_mpz_t());
    return q;
}

mpz_class rational::ceil() const
{
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), num().get_mpz_t(), den().get_mpz_t());
    return q;
}

rational operator/(const rational &x, const rational &y)
{
    if (y.is_zero()) {
        throw domain_error("rational: division by zero");
    }
    return rational(mpq_class(x.m_value / y.m_value));
}

std::ostream &operator<<(std::ostream &os, const rational &r)
{
    return os << r.str();
}

rational abs(const rational &r)
{
    return r.sign() < 0 ? -r : r;
}

rational pow(const rational &base, int exponent)
{
    if (exponent < 0) {
        if (base.is_zero()) {
            throw domain_error("rational: zero raised to a negative power");
        }
        return rational(1) / pow(base, -exponent);
    }
    mpz_class n;
    mpz_class d;
    mpz_pow_ui(n.get_mpz_t(), base.num().get_mpz_t(), static_cast<unsigned long>(exponent));
    mpz_pow_ui(d.get_mpz_t(), base.den().get_mpz_t(), static_cast<unsigned long>(exponent));
    return rational(n, d);
}

const rational &min(const rational &x, const rational &y)
{
    return y < x ? y : x;
}

const rational &max(const rational &x, const rational &y)
{
    return x < y ? y : x;
}

rational midpoint(const rational &x, const rational &y)
{
    return (x + y) / rational(2);
}

} // namespace endpoint_lab
