#include <endpoint_lab/sums.hpp>

#include <endpoint_lab/errors.hpp>

namespace endpoint_lab
{

sample_rule sample_rule::convex(rational t)
{
    sample_rule r(kind::convex);
    r.m_t = std::move(t);
    return r;
}

sample_rule sample_rule::table(std::vector<table_entry> entries, rational fallback_t)
{
    sample_rule r(kind::table);
    r.m_table = std::move(entries);
    r.m_t = std::move(fallback_t);
    return r;
}

sample_rule sample_rule::parse(const std::string &text)
{
    if (text == "right") {
        return right();
    }
    if (text == "left") {
        return left();
    }
    if (text == "midpoint") {
        return midpoint();
    }
    const std::string prefix = "convex:";
    if (text.rfind(prefix, 0) == 0) {
        return convex(rational::parse(text.substr(prefix.size())));
    }
    throw parse_error("unknown sample rule \"" + text + "\" (expected right, left, midpoint or convex:<t>)");
}

std::string sample_rule::name() const
{
    switch (m_kind) {
    case kind::right:
        return "right";
    case kind::left:
        return "left";
    case kind::midpoint:
        return "midpoint";
    case kind::convex:
        return "convex:" + m_t.str();
    case kind::table:
        return "table(fallback convex:" + m_t.str() + ")";
    }
    return "unknown";
}

rational sample_rule::select(const rational &x, const rational &y) const
{
    rational out;
    switch (m_kind) {
    case kind::right:
        out = y;
        break;
    case kind::left:
        out = x;
        break;
    case kind::midpoint:
        out = endpoint_lab::midpoint(x, y);
        break;
    case kind::convex:
        out = (rational(1) - m_t) * x + m_t * y;
        break;
    case kind::table: {
        out = (rational(1) - m_t) * x + m_t * y;
        for (const auto &e : m_table) {
            if (e.x == x && e.y == y) {
                out = e.point;
                break;
            }
        }
        break;
    }
    }
    if (out < x || y < out) {
        throw rule_violation("sample rule " + name() + " chose " + out.str() + " outside [" + x.str() + ", " + y.str() + "]");
    }
    return out;
}

namespace
{

void check_covers(const function_model &f, const partition &p)
{
    if (p.a() != f.a() || p.b() != f.b()) {
        throw domain_error("partition of [" + p.a().str() + ", " + p.b().str() + "] does not match the domain ["
                           + f.a().str() + ", " + f.b().str() + "]");
    }
}

} // namespace

rational riemann_sum(const function_model &f, const partition &p, const sample_rule &rule)
{
    check_covers(f, p);
    rational total(0);
    for (std::size_t k = 1; k <= p.cells(); ++k) {
        total += f.eval(rule.select(p[k - 1], p[k])) * (p[k] - p[k - 1]);
    }
    return total;
}

rational upper_darboux(const function_model &f, const partition &p)
{
    check_covers(f, p);
    rational total(0);
    for (std::size_t k = 1; k <= p.cells(); ++k) {
        total += f.sup_on(sub_interval::closed(p[k - 1], p[k])) * (p[k] - p[k - 1]);
    }
    return total;
}

rational lower_darboux(const function_model &f, const partition &p)
{
    check_covers(f, p);
    rational total(0);
    for (std::size_t k = 1; k <= p.cells(); ++k) {
        total += f.inf_on(sub_interval::closed(p[k - 1], p[k])) * (p[k] - p[k - 1]);
    }
    return total;
}

std::vector<darboux_pair> darboux_gap_probe(const function_model &f, std::size_t depth)
{
    if (depth == 0) {
        throw domain_error("darboux_gap_probe: depth must be positive");
    }
    std::vector<darboux_pair> out;
    std::size_t pieces = 1;
    for (std::size_t j = 1; j <= depth; ++j) {
        pieces *= 2;
        const partition p = uniform_partition(f.a(), f.b(), pieces);
        out.push_back({j, upper_darboux(f, p), lower_darboux(f, p)});
    }
    return out;
}

} // namespace endpoint_lab
