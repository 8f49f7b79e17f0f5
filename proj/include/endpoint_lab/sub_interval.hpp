#ifndef ENDPOINT_LAB_SUB_INTERVAL_HPP
#define ENDPOINT_LAB_SUB_INTERVAL_HPP

#include <string>

#include <endpoint_lab/rational.hpp>

namespace endpoint_lab
{

// Interval with independently open or closed ends. A point interval is
// closed at both ends; an empty interval cannot be constructed.
class sub_interval
{
public:
    sub_interval(rational lo, rational hi, bool lo_closed, bool hi_closed);

    static sub_interval closed(rational lo, rational hi) { return {std::move(lo), std::move(hi), true, true}; }
    static sub_interval right_open(rational lo, rational hi) { return {std::move(lo), std::move(hi), true, false}; }
    static sub_interval left_open(rational lo, rational hi) { return {std::move(lo), std::move(hi), false, true}; }
    static sub_interval open(rational lo, rational hi) { return {std::move(lo), std::move(hi), false, false}; }
    static sub_interval point(const rational &x) { return {x, x, true, true}; }

    const rational &lo() const { return m_lo; }
    const rational &hi() const { return m_hi; }
    bool lo_closed() const { return m_lo_closed; }
    bool hi_closed() const { return m_hi_closed; }
    bool degenerate() const { return m_lo == m_hi; }

    bool contains(const rational &x) const;
    // True when every point of this interval lies in [a, b].
    bool inside(const rational &a, const rational &b) const { return a <= m_lo && m_hi <= b; }

    std::string str() const;

private:
    rational m_lo;
    rational m_hi;
    bool m_lo_closed;
    bool m_hi_closed;
};

} // namespace endpoint_lab

#endif
