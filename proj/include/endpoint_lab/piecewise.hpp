#ifndef ENDPOINT_LAB_PIECEWISE_HPP
#define ENDPOINT_LAB_PIECEWISE_HPP

#include <cstddef>
#include <vector>

#include <endpoint_lab/rational.hpp>
#include <endpoint_lab/sub_interval.hpp>

namespace endpoint_lab
{

// offset + coeff * x^degree, used only on intervals where it is monotone
// (no sign change for even degrees, no pole for negative degrees).
struct monotone_map {
    rational offset;
    rational coeff;
    int degree = 0;

    static monotone_map constant(rational c) { return {std::move(c), rational(0), 0}; }
    static monotone_map linear(rational p, rational q) { return {std::move(p), std::move(q), 1}; }

    rational operator()(const rational &x) const;
    bool is_constant() const { return coeff.is_zero() || degree == 0; }
    monotone_map affine(const rational &alpha, const rational &beta) const;

    friend bool operator==(const monotone_map &, const monotone_map &) = default;
};

// A function on [t_0, t_m] given by a monotone map on each open piece
// (t_i, t_{i+1}) and an explicit value at every knot t_i. Values at knots
// may differ from the one-sided limits of the neighbouring maps (jumps).
class piecewise
{
public:
    piecewise(std::vector<rational> knots, std::vector<monotone_map> pieces, std::vector<rational> knot_values);

    // Single map on [lo, hi], knot values taken from the map.
    static piecewise single(const rational &lo, const rational &hi, const monotone_map &map);

    const std::vector<rational> &knots() const { return m_knots; }
    const std::vector<monotone_map> &pieces() const { return m_pieces; }
    const std::vector<rational> &knot_values() const { return m_knot_values; }
    const rational &lo() const { return m_knots.front(); }
    const rational &hi() const { return m_knots.back(); }

    rational eval(const rational &x) const;
    rational sup(const sub_interval &iv) const;
    rational inf(const sub_interval &iv) const;

    // Some x in iv with eval(x) > threshold. Attained candidates are tried
    // left to right; one-sided limits are approached by halving toward the
    // limit point at most `budget` times.
    rational point_above(const sub_interval &iv, const rational &threshold, int budget) const;

    // Replaces the value at x, splitting the piece containing x if needed.
    piecewise with_value_at(const rational &x, const rational &value) const;

    piecewise restrict(const rational &lo, const rational &hi) const;
    piecewise affine(const rational &alpha, const rational &beta) const;
    piecewise negated() const { return affine(rational(-1), rational(0)); }

    // x -> sup of this function over [x, hi].
    piecewise running_sup() const;

    // Piece index for the open piece containing x (x strictly inside).
    std::size_t piece_index(const rational &x) const;

private:
    struct element {
        rational lo;
        rational hi;
        bool is_point;
        bool included;
    };
    std::vector<element> elements(const sub_interval &iv) const;
    void check_domain(const sub_interval &iv) const;

    std::vector<rational> m_knots;
    std::vector<monotone_map> m_pieces;
    std::vector<rational> m_knot_values;
};

} // namespace endpoint_lab

#endif
