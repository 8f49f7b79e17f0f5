#ifndef ENDPOINT_LAB_SUMS_HPP
#define ENDPOINT_LAB_SUMS_HPP

#include <cstddef>
#include <string>
#include <vector>

#include <endpoint_lab/function_model.hpp>
#include <endpoint_lab/partition.hpp>
#include <endpoint_lab/rational.hpp>

namespace endpoint_lab
{

// Sample-point policy for Riemann sums. Every selection is checked to lie
// in its closed subinterval [x, y]; a violation throws rule_violation.
class sample_rule
{
public:
    enum class kind { right, left, midpoint, convex, table };

    struct table_entry {
        rational x;
        rational y;
        rational point;
    };

    static sample_rule right() { return sample_rule(kind::right); }
    static sample_rule left() { return sample_rule(kind::left); }
    static sample_rule midpoint() { return sample_rule(kind::midpoint); }
    // psi(x, y) = (1 - t) x + t y
    static sample_rule convex(rational t);
    // Listed (x, y) pairs map to their point; others fall back to convex(t).
    static sample_rule table(std::vector<table_entry> entries, rational fallback_t);

    // "right", "left", "midpoint", "convex:<t>".
    static sample_rule parse(const std::string &text);

    kind rule_kind() const { return m_kind; }
    const rational &t() const { return m_t; }
    std::string name() const;

    rational select(const rational &x, const rational &y) const;

private:
    explicit sample_rule(kind k) : m_kind(k) {}

    kind m_kind;
    rational m_t{0};
    std::vector<table_entry> m_table;
};

// sum_k f(x_k*) (x_k - x_{k-1}) with x_k* chosen by the rule.
rational riemann_sum(const function_model &f, const partition &p, const sample_rule &rule);
// sum_k sup(f, [x_{k-1}, x_k]) (x_k - x_{k-1}) over closed subintervals.
rational upper_darboux(const function_model &f, const partition &p);
rational lower_darboux(const function_model &f, const partition &p);

struct darboux_pair {
    std::size_t depth;
    rational upper;
    rational lower;
};

// (U, L) on uniform partitions with 2^j pieces, j = 1..depth.
std::vector<darboux_pair> darboux_gap_probe(const function_model &f, std::size_t depth);

} // namespace endpoint_lab

#endif
