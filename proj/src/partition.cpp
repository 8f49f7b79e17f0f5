#include <endpoint_lab/partition.hpp>

#include <algorithm>
#include <iterator>

#include <endpoint_lab/errors.hpp>

namespace endpoint_lab
{

partition::partition(std::vector<rational> points) : m_points(std::move(points))
{
    if (m_points.size() < 2) {
        throw domain_error("partition: needs at least two points");
    }
    for (std::size_t i = 1; i < m_points.size(); ++i) {
        if (!(m_points[i - 1] < m_points[i])) {
            throw domain_error("partition: points must be strictly increasing (" + m_points[i - 1].str()
                               + " then " + m_points[i].str() + ")");
        }
    }
}

partition uniform_partition(const rational &a, const rational &b, std::size_t n)
{
    if (n == 0) {
        throw domain_error("uniform_partition: n must be positive");
    }
    if (!(a < b)) {
        throw domain_error("uniform_partition: requires a < b");
    }
    const rational step = (b - a) / rational(static_cast<std::int64_t>(n));
    std::vector<rational> pts;
    pts.reserve(n + 1);
    for (std::size_t k = 0; k < n; ++k) {
        pts.push_back(a + step * rational(static_cast<std::int64_t>(k)));
    }
    pts.push_back(b);
    return partition(std::move(pts));
}

rational mesh(const partition &p)
{
    rational best(0);
    for (std::size_t k = 1; k < p.points().size(); ++k) {
        best = max(best, p[k] - p[k - 1]);
    }
    return best;
}

partition refine(const partition &p, const partition &q)
{
    if (p.a() != q.a() || p.b() != q.b()) {
        throw domain_error("refine: partitions cover different intervals");
    }
    std::vector<rational> merged;
    merged.reserve(p.points().size() + q.points().size());
    std::set_union(p.points().begin(), p.points().end(), q.points().begin(), q.points().end(),
                   std::back_inserter(merged));
    return partition(std::move(merged));
}

partition stitch(const std::vector<partition> &parts)
{
    if (parts.empty()) {
        throw domain_error("stitch: nothing to stitch");
    }
    std::vector<rational> pts = parts.front().points();
    for (std::size_t i = 1; i < parts.size(); ++i) {
        if (parts[i].a() != pts.back()) {
            throw domain_error("stitch: partitions are not consecutive at " + pts.back().str());
        }
        pts.insert(pts.end(), parts[i].points().begin() + 1, parts[i].points().end());
    }
    return partition(std::move(pts));
}

} // namespace endpoint_lab
