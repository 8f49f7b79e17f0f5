#include <endpoint_lab/piecewise.hpp>

#include <algorithm>
#include <iterator>

#include <endpoint_lab/errors.hpp>

namespace endpoint_lab
{

rational monotone_map::operator()(const rational &x) const
{
    if (is_constant()) {
        return offset + (degree == 0 ? coeff : rational(0));
    }
    return offset + coeff * pow(x, degree);
}

monotone_map monotone_map::affine(const rational &alpha, const rational &beta) const
{
    if (is_constant()) {
        return constant(alpha * (*this)(rational(0)) + beta);
    }
    return {alpha * offset + beta, alpha * coeff, degree};
}

namespace
{

void check_piece(const rational &lo, const rational &hi, const monotone_map &map)
{
    if (map.is_constant()) {
        return;
    }
    if (map.degree < 0 && lo <= rational(0) && rational(0) <= hi) {
        throw domain_error("unbounded model: x^" + std::to_string(map.degree) + " has a pole in [" + lo.str() + ", "
                           + hi.str() + "]");
    }
    if (map.degree % 2 == 0 && lo < rational(0) && rational(0) < hi) {
        throw domain_error("monomial x^" + std::to_string(map.degree) + " is not monotone on [" + lo.str() + ", "
                           + hi.str() + "] (straddles 0)");
    }
}

// Exact rational solution of c^n = w (n >= 1) with the sign of c fixed by
// `sign_hint` for even n. Throws when the root is irrational.
rational exact_root(const rational &w, int n, int sign_hint)
{
    if (n == 1) {
        return w;
    }
    if (n % 2 == 0 && w.sign() < 0) {
        throw domain_error("running sup: no real crossing point");
    }
    mpz_class abs_num = w.num() < 0 ? mpz_class(-w.num()) : w.num();
    mpz_class rn;
    mpz_class rd;
    const bool exact_num = mpz_root(rn.get_mpz_t(), abs_num.get_mpz_t(), static_cast<unsigned long>(n)) != 0;
    const bool exact_den = mpz_root(rd.get_mpz_t(), w.den().get_mpz_t(), static_cast<unsigned long>(n)) != 0;
    if (!exact_num || !exact_den) {
        throw domain_error("running sup: crossing point (" + w.str() + ")^(1/" + std::to_string(n)
                           + ") is irrational and cannot be represented exactly");
    }
    int sign = n % 2 == 1 ? w.sign() : sign_hint;
    if (sign < 0) {
        rn = -rn;
    }
    return rational(rn, rd);
}

// c in (lo, hi) with map(c) == level, for a strictly monotone map.
rational crossing(const monotone_map &map, const rational &lo, const rational &hi, const rational &level)
{
    const rational w = (level - map.offset) / map.coeff;
    const int hint = midpoint(lo, hi).sign();
    rational c = map.degree > 0 ? exact_root(w, map.degree, hint) : rational(1) / exact_root(w, -map.degree, hint);
    if (!(lo < c && c < hi)) {
        throw domain_error("running sup: crossing point outside its piece");
    }
    return c;
}

} // namespace

piecewise::piecewise(std::vector<rational> knots, std::vector<monotone_map> pieces, std::vector<rational> knot_values)
    : m_knots(std::move(knots)), m_pieces(std::move(pieces)), m_knot_values(std::move(knot_values))
{
    if (m_knots.size() < 2 || m_pieces.size() + 1 != m_knots.size() || m_knot_values.size() != m_knots.size()) {
        throw domain_error("piecewise: need m >= 1 pieces, m + 1 knots and m + 1 knot values");
    }
    for (std::size_t i = 0; i + 1 < m_knots.size(); ++i) {
        if (!(m_knots[i] < m_knots[i + 1])) {
            throw domain_error("piecewise: knots must be strictly increasing");
        }
        check_piece(m_knots[i], m_knots[i + 1], m_pieces[i]);
    }
}

piecewise piecewise::single(const rational &lo, const rational &hi, const monotone_map &map)
{
    check_piece(lo, hi, map);
    return piecewise({lo, hi}, {map}, {map(lo), map(hi)});
}

std::size_t piecewise::piece_index(const rational &x) const
{
    const auto it = std::upper_bound(m_knots.begin(), m_knots.end(), x);
    const auto idx = static_cast<std::size_t>(std::distance(m_knots.begin(), it));
    return std::clamp<std::size_t>(idx == 0 ? 0 : idx - 1, 0, m_pieces.size() - 1);
}

void piecewise::check_domain(const sub_interval &iv) const
{
    if (!iv.inside(lo(), hi())) {
        throw domain_error("interval " + iv.str() + " is outside the domain [" + lo().str() + ", " + hi().str() + "]");
    }
}

rational piecewise::eval(const rational &x) const
{
    if (x < lo() || hi() < x) {
        throw domain_error("point " + x.str() + " is outside the domain [" + lo().str() + ", " + hi().str() + "]");
    }
    const auto it = std::lower_bound(m_knots.begin(), m_knots.end(), x);
    if (it != m_knots.end() && *it == x) {
        return m_knot_values[static_cast<std::size_t>(std::distance(m_knots.begin(), it))];
    }
    return m_pieces[piece_index(x)](x);
}

std::vector<piecewise::element> piecewise::elements(const sub_interval &iv) const
{
    check_domain(iv);
    std::vector<element> out;
    if (iv.degenerate()) {
        out.push_back({iv.lo(), iv.lo(), true, true});
        return out;
    }
    std::vector<std::pair<rational, bool>> points;
    points.emplace_back(iv.lo(), iv.lo_closed());
    for (const auto &k : m_knots) {
        if (iv.lo() < k && k < iv.hi()) {
            points.emplace_back(k, true);
        }
    }
    points.emplace_back(iv.hi(), iv.hi_closed());
    for (std::size_t i = 0; i < points.size(); ++i) {
        out.push_back({points[i].first, points[i].first, true, points[i].second});
        if (i + 1 < points.size()) {
            out.push_back({points[i].first, points[i + 1].first, false, true});
        }
    }
    return out;
}

rational piecewise::sup(const sub_interval &iv) const
{
    bool first = true;
    rational best;
    const auto consider = [&](const rational &v) {
        if (first || best < v) {
            best = v;
            first = false;
        }
    };
    for (const auto &e : elements(iv)) {
        if (e.is_point) {
            if (e.included) {
                consider(eval(e.lo));
            }
        } else {
            const auto &map = m_pieces[piece_index(midpoint(e.lo, e.hi))];
            consider(map(e.lo));
            consider(map(e.hi));
        }
    }
    return best;
}

rational piecewise::inf(const sub_interval &iv) const
{
    return -negated().sup(iv);
}

rational piecewise::point_above(const sub_interval &iv, const rational &threshold, int budget) const
{
    for (const auto &e : elements(iv)) {
        if (e.is_point) {
            if (e.included && eval(e.lo) > threshold) {
                return e.lo;
            }
            continue;
        }
        const auto &map = m_pieces[piece_index(midpoint(e.lo, e.hi))];
        const rational width = e.hi - e.lo;
        if (map(e.lo) > threshold) {
            rational step = width;
            for (int j = 0; j < budget; ++j) {
                step /= rational(2);
                const rational x = e.lo + step;
                if (map(x) > threshold) {
                    return x;
                }
            }
        }
        if (map(e.hi) > threshold) {
            rational step = width;
            for (int j = 0; j < budget; ++j) {
                step /= rational(2);
                const rational x = e.hi - step;
                if (map(x) > threshold) {
                    return x;
                }
            }
        }
    }
    throw oracle_defect("no point of " + iv.str() + " exceeds " + threshold.str() + " within the search budget");
}

piecewise piecewise::with_value_at(const rational &x, const rational &value) const
{
    if (x < lo() || hi() < x) {
        throw domain_error("value override at " + x.str() + " is outside the domain");
    }
    auto knots = m_knots;
    auto pieces = m_pieces;
    auto values = m_knot_values;
    const auto it = std::lower_bound(knots.begin(), knots.end(), x);
    const auto pos = static_cast<std::size_t>(std::distance(knots.begin(), it));
    if (it != knots.end() && *it == x) {
        values[pos] = value;
    } else {
        const std::size_t piece = pos - 1;
        knots.insert(knots.begin() + static_cast<std::ptrdiff_t>(pos), x);
        pieces.insert(pieces.begin() + static_cast<std::ptrdiff_t>(piece), pieces[piece]);
        values.insert(values.begin() + static_cast<std::ptrdiff_t>(pos), value);
    }
    return piecewise(std::move(knots), std::move(pieces), std::move(values));
}

piecewise piecewise::restrict(const rational &new_lo, const rational &new_hi) const
{
    if (!(new_lo < new_hi) || new_lo < lo() || hi() < new_hi) {
        throw domain_error("restriction [" + new_lo.str() + ", " + new_hi.str() + "] is not a nondegenerate subinterval");
    }
    std::vector<rational> knots{new_lo};
    std::vector<rational> values{eval(new_lo)};
    for (std::size_t i = 0; i < m_knots.size(); ++i) {
        if (new_lo < m_knots[i] && m_knots[i] < new_hi) {
            knots.push_back(m_knots[i]);
            values.push_back(m_knot_values[i]);
        }
    }
    knots.push_back(new_hi);
    values.push_back(eval(new_hi));
    std::vector<monotone_map> pieces;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        pieces.push_back(m_pieces[piece_index(midpoint(knots[i], knots[i + 1]))]);
    }
    return piecewise(std::move(knots), std::move(pieces), std::move(values));
}

piecewise piecewise::affine(const rational &alpha, const rational &beta) const
{
    std::vector<monotone_map> pieces;
    pieces.reserve(m_pieces.size());
    for (const auto &p : m_pieces) {
        pieces.push_back(p.affine(alpha, beta));
    }
    std::vector<rational> values;
    values.reserve(m_knot_values.size());
    for (const auto &v : m_knot_values) {
        values.push_back(alpha * v + beta);
    }
    return piecewise(m_knots, std::move(pieces), std::move(values));
}

piecewise piecewise::running_sup() const
{
    // Built right to left, reversed at the end.
    std::vector<rational> knots{hi()};
    std::vector<rational> values{m_knot_values.back()};
    std::vector<monotone_map> pieces;
    rational level = m_knot_values.back();

    for (std::size_t i = m_pieces.size(); i-- > 0;) {
        const rational &left = m_knots[i];
        const rational &right = m_knots[i + 1];
        const auto &map = m_pieces[i];
        const rational at_left = map(left);
        const rational at_right = map(right);

        monotone_map near_left = monotone_map::constant(level);
        if (at_left >= at_right) {
            // Non-increasing piece: g = max(map, level) on (left, right).
            if (at_right >= level) {
                near_left = map;
            } else if (at_left > level) {
                const rational c = crossing(map, left, right, level);
                pieces.push_back(monotone_map::constant(level));
                knots.push_back(c);
                values.push_back(level);
                near_left = map;
            }
        } else {
            // Increasing piece: its sup over [x, right) is the unattained limit at right.
            near_left = monotone_map::constant(max(at_right, level));
        }
        pieces.push_back(near_left);
        level = max(m_knot_values[i], near_left(left));
        knots.push_back(left);
        values.push_back(level);
    }

    std::reverse(knots.begin(), knots.end());
    std::reverse(values.begin(), values.end());
    std::reverse(pieces.begin(), pieces.end());

    // Merge neighbours that share a map and are continuous across the knot.
    std::vector<rational> mk{knots.front()};
    std::vector<rational> mv{values.front()};
    std::vector<monotone_map> mp{pieces.front()};
    for (std::size_t i = 1; i < pieces.size(); ++i) {
        const auto &prev = mp.back();
        const bool same = prev == pieces[i] || (prev.is_constant() && pieces[i].is_constant() && prev(knots[i]) == pieces[i](knots[i]));
        if (same && prev(knots[i]) == values[i]) {
            continue;
        }
        mk.push_back(knots[i]);
        mv.push_back(values[i]);
        mp.push_back(pieces[i]);
    }
    mk.push_back(knots.back());
    mv.push_back(values.back());
    return piecewise(std::move(mk), std::move(mp), std::move(mv));
}

} // namespace endpoint_lab
