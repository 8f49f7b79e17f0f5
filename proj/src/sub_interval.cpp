#include <endpoint_lab/sub_interval.hpp>

#include <endpoint_lab/errors.hpp>

namespace endpoint_lab
{

sub_interval::sub_interval(rational lo, rational hi, bool lo_closed, bool hi_closed)
    : m_lo(std::move(lo)), m_hi(std::move(hi)), m_lo_closed(lo_closed), m_hi_closed(hi_closed)
{
    if (m_hi < m_lo || (m_lo == m_hi && !(m_lo_closed && m_hi_closed))) {
        throw domain_error("empty interval " + str());
    }
}

bool sub_interval::contains(const rational &x) const
{
    const bool above_lo = m_lo_closed ? m_lo <= x : m_lo < x;
    const bool below_hi = m_hi_closed ? x <= m_hi : x < m_hi;
    return above_lo && below_hi;
}

std::string sub_interval::str() const
{
    return std::string(m_lo_closed ? "[" : "(") + m_lo.str() + ", " + m_hi.str() + (m_hi_closed ? "]" : ")");
}

} // namespace endpoint_lab
