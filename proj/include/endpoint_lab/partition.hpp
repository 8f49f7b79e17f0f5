#ifndef ENDPOINT_LAB_PARTITION_HPP
#define ENDPOINT_LAB_PARTITION_HPP

#include <cstddef>
#include <vector>

#include <endpoint_lab/rational.hpp>

namespace endpoint_lab
{

// Strictly increasing a = x_0 < x_1 < ... < x_n = b with n >= 1.
class partition
{
public:
    explicit partition(std::vector<rational> points);

    const std::vector<rational> &points() const { return m_points; }
    const rational &a() const { return m_points.front(); }
    const rational &b() const { return m_points.back(); }
    // Number of subintervals n.
    std::size_t cells() const { return m_points.size() - 1; }
    // x_k for 0 <= k <= n.
    const rational &operator[](std::size_t k) const { return m_points[k]; }

    friend bool operator==(const partition &, const partition &) = default;

private:
    std::vector<rational> m_points;
};

// x_k = a + k (b - a) / n.
partition uniform_partition(const rational &a, const rational &b, std::size_t n);

rational mesh(const partition &p);

// Sorted union of the points of two partitions of the same interval.
partition refine(const partition &p, const partition &q);

// Concatenation of partitions of consecutive intervals.
partition stitch(const std::vector<partition> &parts);

} // namespace endpoint_lab

#endif
