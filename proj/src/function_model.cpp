#include <endpoint_lab/function_model.hpp>

#include <algorithm>

#include <endpoint_lab/errors.hpp>
#include <endpoint_lab/stern_brocot.hpp>

namespace endpoint_lab
{

namespace
{

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

rational any_rational_in(const sub_interval &iv)
{
    if (iv.lo_closed()) {
        return iv.lo();
    }
    if (iv.hi_closed()) {
        return iv.hi();
    }
    return midpoint(iv.lo(), iv.hi());
}

rational thomae_value(const thomae &t, const rational &x)
{
    if (x.is_zero()) {
        return t.at_zero;
    }
    return rational(mpz_class(1), x.den());
}

// The part of iv away from 0 (nondegenerate iv, lo >= 0).
sub_interval positive_part(const sub_interval &iv)
{
    if (iv.lo().is_zero()) {
        return sub_interval(iv.lo(), iv.hi(), false, iv.hi_closed());
    }
    return iv;
}

piecewise thomae_running_sup(const thomae &t, const rational &a, const rational &b)
{
    // Scan leftwards from b through the record-breaking (smaller
    // denominator) fractions; g is constant between consecutive records.
    std::vector<rational> knots{b};
    std::vector<rational> values{thomae_value(t, b)};
    std::vector<monotone_map> pieces;
    rational cur = b;
    mpz_class q = b.den();
    for (;;) {
        bool found = false;
        rational best;
        for (mpz_class s = 1; s < q; ++s) {
            const mpz_class p = (cur * rational(s, mpz_class(1))).ceil() - 1;
            const rational cand(p, s);
            if (cand.sign() > 0 && a <= cand && (!found || best < cand)) {
                best = cand;
                found = true;
            }
        }
        if (!found) {
            break;
        }
        pieces.push_back(monotone_map::constant(rational(mpz_class(1), q)));
        knots.push_back(best);
        values.push_back(rational(mpz_class(1), best.den()));
        cur = best;
        q = best.den();
    }
    if (a < cur) {
        pieces.push_back(monotone_map::constant(rational(mpz_class(1), q)));
        knots.push_back(a);
        values.push_back(a.is_zero() ? max(t.at_zero, rational(mpz_class(1), q)) : rational(mpz_class(1), q));
    }
    std::reverse(knots.begin(), knots.end());
    std::reverse(values.begin(), values.end());
    std::reverse(pieces.begin(), pieces.end());
    return piecewise(std::move(knots), std::move(pieces), std::move(values));
}

} // namespace

function_model::function_model(model_base base, rational a, rational b)
    : m_base(std::move(base)), m_a(std::move(a)), m_b(std::move(b))
{
    if (!(m_a < m_b)) {
        throw domain_error("domain [" + m_a.str() + ", " + m_b.str() + "] must satisfy a < b");
    }
}

function_model function_model::make_piecewise(piecewise pw)
{
    rational a = pw.lo();
    rational b = pw.hi();
    return function_model(std::move(pw), std::move(a), std::move(b));
}

function_model function_model::make_dirichlet(const rational &hi, const rational &lo, const rational &a, const rational &b)
{
    if (!(lo < hi)) {
        throw domain_error("dirichlet: requires hi > lo");
    }
    return function_model(dirichlet_indicator{hi, lo}, a, b);
}

function_model function_model::make_thomae(const rational &at_zero, const rational &a, const rational &b)
{
    if (a < rational(0) || rational(1) < b) {
        throw domain_error("thomae: domain must lie within [0, 1]");
    }
    return function_model(thomae{at_zero}, a, b);
}

void function_model::check_interval(const sub_interval &iv) const
{
    if (!iv.inside(m_a, m_b)) {
        throw domain_error("interval " + iv.str() + " is outside the domain [" + m_a.str() + ", " + m_b.str() + "]");
    }
}

rational function_model::base_eval(const rational &x) const
{
    if (x < m_a || m_b < x) {
        throw domain_error("point " + x.str() + " is outside the domain [" + m_a.str() + ", " + m_b.str() + "]");
    }
    return std::visit(overloaded{[&](const piecewise &pw) { return pw.eval(x); },
                                 [&](const dirichlet_indicator &d) { return d.hi; },
                                 [&](const thomae &t) { return thomae_value(t, x); }},
                      m_base);
}

rational function_model::base_sup(const sub_interval &iv) const
{
    check_interval(iv);
    if (iv.degenerate()) {
        return base_eval(iv.lo());
    }
    return std::visit(overloaded{[&](const piecewise &pw) { return pw.sup(iv); },
                                 [&](const dirichlet_indicator &d) { return d.hi; },
                                 [&](const thomae &t) {
                                     const auto w = smallest_denominator(positive_part(iv));
                                     rational best(mpz_class(1), w.denominator);
                                     if (iv.contains(rational(0))) {
                                         best = max(best, t.at_zero);
                                     }
                                     return best;
                                 }},
                      m_base);
}

rational function_model::base_inf(const sub_interval &iv) const
{
    check_interval(iv);
    if (iv.degenerate()) {
        return base_eval(iv.lo());
    }
    return std::visit(overloaded{[&](const piecewise &pw) { return pw.inf(iv); },
                                 [&](const dirichlet_indicator &d) { return d.lo; },
                                 [&](const thomae &t) {
                                     rational best(0);
                                     if (iv.contains(rational(0))) {
                                         best = min(best, t.at_zero);
                                     }
                                     return best;
                                 }},
                      m_base);
}

rational function_model::base_point_above(const sub_interval &iv, const rational &threshold, int budget) const
{
    check_interval(iv);
    if (iv.degenerate()) {
        if (base_eval(iv.lo()) > threshold) {
            return iv.lo();
        }
        throw oracle_defect("point interval " + iv.str() + " does not exceed " + threshold.str());
    }
    return std::visit(
        overloaded{[&](const piecewise &pw) { return pw.point_above(iv, threshold, budget); },
                   [&](const dirichlet_indicator &d) {
                       if (d.hi > threshold) {
                           return any_rational_in(iv);
                       }
                       throw oracle_defect("dirichlet: no point exceeds " + threshold.str());
                   },
                   [&](const thomae &t) {
                       if (iv.contains(rational(0)) && t.at_zero > threshold) {
                           return rational(0);
                       }
                       const auto w = smallest_denominator(positive_part(iv));
                       if (rational(mpz_class(1), w.denominator) > threshold) {
                           return w.witness;
                       }
                       throw oracle_defect("thomae: no point of " + iv.str() + " exceeds " + threshold.str());
                   }},
        m_base);
}

rational function_model::base_point_below(const sub_interval &iv, const rational &threshold, int budget) const
{
    check_interval(iv);
    if (iv.degenerate()) {
        if (base_eval(iv.lo()) < threshold) {
            return iv.lo();
        }
        throw oracle_defect("point interval " + iv.str() + " is not below " + threshold.str());
    }
    return std::visit(
        overloaded{[&](const piecewise &pw) { return pw.negated().point_above(iv, -threshold, budget); },
                   [&](const dirichlet_indicator &d) -> rational {
                       if (d.hi < threshold) {
                           return any_rational_in(iv);
                       }
                       throw oracle_defect("dirichlet: values below " + threshold.str()
                                           + " occur only at irrational points, which have no exact representation");
                   },
                   [&](const thomae &t) {
                       if (iv.lo_closed() && thomae_value(t, iv.lo()) < threshold) {
                           return iv.lo();
                       }
                       if (threshold.sign() > 0) {
                           // Odd numerator over 2^j: reduced denominator exactly 2^j.
                           const rational width = iv.hi() - iv.lo();
                           mpz_class n = 1;
                           while (rational(mpz_class(1), n) >= threshold || rational(n, mpz_class(1)) * width < rational(4)) {
                               n *= 2;
                           }
                           mpz_class m = (iv.lo() * rational(n, mpz_class(1))).floor() + 1;
                           if (m % 2 == 0) {
                               m += 1;
                           }
                           const rational x(m, n);
                           if (iv.contains(x) && thomae_value(t, x) < threshold) {
                               return x;
                           }
                       }
                       if (iv.hi_closed() && thomae_value(t, iv.hi()) < threshold) {
                           return iv.hi();
                       }
                       throw oracle_defect("thomae: no point of " + iv.str() + " is below " + threshold.str());
                   }},
        m_base);
}

piecewise function_model::base_running_sup() const
{
    return std::visit(overloaded{[&](const piecewise &pw) { return pw.running_sup(); },
                                 [&](const dirichlet_indicator &d) {
                                     return piecewise::single(m_a, m_b, monotone_map::constant(d.hi));
                                 },
                                 [&](const thomae &t) { return thomae_running_sup(t, m_a, m_b); }},
                      m_base);
}

piecewise function_model::base_running_inf() const
{
    return std::visit(overloaded{[&](const piecewise &pw) { return pw.negated().running_sup().negated(); },
                                 [&](const dirichlet_indicator &d) {
                                     return piecewise({m_a, m_b}, {monotone_map::constant(d.lo)}, {d.lo, d.hi});
                                 },
                                 [&](const thomae &t) {
                                     const rational at_a = m_a.is_zero() ? min(rational(0), t.at_zero) : rational(0);
                                     return piecewise({m_a, m_b}, {monotone_map::constant(rational(0))},
                                                      {at_a, thomae_value(t, m_b)});
                                 }},
                      m_base);
}

rational function_model::eval(const rational &x) const
{
    return m_alpha * base_eval(x) + m_beta;
}

rational function_model::sup_on(const sub_interval &iv) const
{
    if (m_alpha.sign() > 0) {
        return m_alpha * base_sup(iv) + m_beta;
    }
    if (m_alpha.sign() < 0) {
        return m_alpha * base_inf(iv) + m_beta;
    }
    check_interval(iv);
    return m_beta;
}

rational function_model::inf_on(const sub_interval &iv) const
{
    if (m_alpha.sign() > 0) {
        return m_alpha * base_inf(iv) + m_beta;
    }
    if (m_alpha.sign() < 0) {
        return m_alpha * base_sup(iv) + m_beta;
    }
    check_interval(iv);
    return m_beta;
}

rational function_model::near_max_point(const sub_interval &iv, const rational &target, const rational &eta,
                                        int budget) const
{
    if (eta.sign() <= 0) {
        throw domain_error("near_max_point: eta must be positive");
    }
    const rational threshold = target - eta;
    if (m_alpha.sign() == 0) {
        check_interval(iv);
        if (m_beta > threshold) {
            return any_rational_in(iv);
        }
        throw oracle_defect("constant model does not exceed " + threshold.str());
    }
    const rational base_threshold = (threshold - m_beta) / m_alpha;
    return m_alpha.sign() > 0 ? base_point_above(iv, base_threshold, budget)
                              : base_point_below(iv, base_threshold, budget);
}

g_representation function_model::running_sup() const
{
    if (m_alpha.sign() > 0) {
        return g_representation(base_running_sup().affine(m_alpha, m_beta));
    }
    if (m_alpha.sign() < 0) {
        return g_representation(base_running_inf().affine(m_alpha, m_beta));
    }
    return g_representation(piecewise::single(m_a, m_b, monotone_map::constant(m_beta)));
}

function_model function_model::affine(const rational &alpha, const rational &beta) const
{
    function_model out = *this;
    out.m_alpha = alpha * m_alpha;
    out.m_beta = alpha * m_beta + beta;
    return out;
}

function_model function_model::restrict(const rational &lo, const rational &hi) const
{
    if (!(lo < hi) || lo < m_a || m_b < hi) {
        throw domain_error("restriction [" + lo.str() + ", " + hi.str() + "] is not a nondegenerate subinterval");
    }
    function_model out = *this;
    if (const auto *pw = std::get_if<piecewise>(&m_base)) {
        out.m_base = pw->restrict(lo, hi);
    }
    out.m_a = lo;
    out.m_b = hi;
    return out;
}

bool function_model::darboux_integrable() const
{
    return m_alpha.is_zero() || !std::holds_alternative<dirichlet_indicator>(m_base);
}

std::string function_model::kind() const
{
    const std::string base = std::visit(overloaded{[](const piecewise &) { return std::string("piecewise"); },
                                                   [](const dirichlet_indicator &) { return std::string("dirichlet"); },
                                                   [](const thomae &) { return std::string("thomae"); }},
                                        m_base);
    if (m_alpha == rational(1) && m_beta.is_zero()) {
        return base;
    }
    if (m_alpha == rational(-1) && m_beta.is_zero()) {
        return "negate(" + base + ")";
    }
    return "affine(" + base + ")";
}

g_representation::g_representation(piecewise pw) : m_pw(std::move(pw))
{
    const auto &knots = m_pw.knots();
    const auto &values = m_pw.knot_values();
    const auto &pieces = m_pw.pieces();
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const rational left = pieces[i](knots[i]);
        const rational right = pieces[i](knots[i + 1]);
        if (right > left || values[i] < left || right < values[i + 1]) {
            throw domain_error("running sup representation is not non-increasing near " + knots[i].str());
        }
    }
}

rational g_representation::level_left_edge(const sub_interval &iv, const rational &level) const
{
    if (!iv.lo_closed() || !iv.hi_closed()) {
        throw domain_error("level_left_edge: interval must be closed");
    }
    if (eval(iv.hi()) != level) {
        throw domain_error("level_left_edge: level " + level.str() + " differs from g(" + iv.hi().str() + ")");
    }
    // g is non-increasing and level = min over iv, so the level set is a
    // final segment of iv; scan points and open gaps left to right.
    std::vector<rational> points{iv.lo()};
    for (const auto &k : m_pw.knots()) {
        if (iv.lo() < k && k < iv.hi()) {
            points.push_back(k);
        }
    }
    if (iv.hi() != iv.lo()) {
        points.push_back(iv.hi());
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (eval(points[i]) == level) {
            return points[i];
        }
        if (i + 1 < points.size()) {
            const auto &map = m_pw.pieces()[m_pw.piece_index(midpoint(points[i], points[i + 1]))];
            if (map.is_constant() && map(points[i]) == level) {
                return points[i];
            }
        }
    }
    return iv.hi();
}

rational near_g_match_point(const function_model &f, const g_representation &g, const sub_interval &window,
                            const rational &eta, int budget)
{
    if (window.lo_closed() || window.hi_closed() || window.degenerate()) {
        throw domain_error("near_g_match_point: window must be a nondegenerate open interval");
    }
    if (eta.sign() <= 0) {
        throw domain_error("near_g_match_point: eta must be positive");
    }
    // For u >= w, g(u) <= g(w); a point of [w, hi) with f > g(w) - eta works.
    rational step = window.hi() - window.lo();
    for (int j = 0; j < budget; ++j) {
        step /= rational(2);
        const rational w = window.hi() - step;
        const auto iv = sub_interval::right_open(w, window.hi());
        const rational target = g.eval(w);
        if (f.sup_on(iv) > target - eta) {
            try {
                return f.near_max_point(iv, target, eta, budget);
            } catch (const oracle_defect &) {
                continue;
            }
        }
    }
    throw oracle_defect("near_g_match_point: no point of " + window.str() + " within " + eta.str()
                        + " of the running sup after " + std::to_string(budget) + " window shrinks");
}

} // namespace endpoint_lab
