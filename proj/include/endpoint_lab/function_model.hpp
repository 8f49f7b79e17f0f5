#ifndef ENDPOINT_LAB_FUNCTION_MODEL_HPP
#define ENDPOINT_LAB_FUNCTION_MODEL_HPP

#include <string>
#include <variant>

#include <endpoint_lab/piecewise.hpp>
#include <endpoint_lab/rational.hpp>
#include <endpoint_lab/sub_interval.hpp>

namespace endpoint_lab
{

inline constexpr int default_search_budget = 64;

// hi on rationals, lo on irrationals; hi > lo.
struct dirichlet_indicator {
    rational hi;
    rational lo;
};

// 1/q at reduced p/q > 0, at_zero at 0, 0 at irrationals. Domain within [0, 1].
struct thomae {
    rational at_zero{1};
};

using model_base = std::variant<piecewise, dirichlet_indicator, thomae>;

class g_representation;

// A bounded function on [a, b] from the closed corpus: alpha * base + beta
// with base a piecewise-monotone map, a Dirichlet indicator or Thomae's
// function. Negation and affine images only touch (alpha, beta).
class function_model
{
public:
    static function_model make_piecewise(piecewise pw);
    static function_model make_dirichlet(const rational &hi, const rational &lo, const rational &a, const rational &b);
    static function_model make_thomae(const rational &at_zero, const rational &a, const rational &b);

    const rational &a() const { return m_a; }
    const rational &b() const { return m_b; }
    sub_interval domain() const { return sub_interval::closed(m_a, m_b); }
    const model_base &base() const { return m_base; }
    const rational &alpha() const { return m_alpha; }
    const rational &beta() const { return m_beta; }

    rational eval(const rational &x) const;
    rational sup_on(const sub_interval &iv) const;
    rational inf_on(const sub_interval &iv) const;

    // Some x in iv with f(x) > target - eta.
    rational near_max_point(const sub_interval &iv, const rational &target, const rational &eta,
                            int budget = default_search_budget) const;

    g_representation running_sup() const;

    function_model negate() const { return affine(rational(-1), rational(0)); }
    // x -> alpha * f(x) + beta
    function_model affine(const rational &alpha, const rational &beta) const;
    function_model restrict(const rational &lo, const rational &hi) const;

    bool darboux_integrable() const;
    std::string kind() const;

private:
    function_model(model_base base, rational a, rational b);

    rational base_eval(const rational &x) const;
    rational base_sup(const sub_interval &iv) const;
    rational base_inf(const sub_interval &iv) const;
    rational base_point_above(const sub_interval &iv, const rational &threshold, int budget) const;
    rational base_point_below(const sub_interval &iv, const rational &threshold, int budget) const;
    piecewise base_running_sup() const;
    piecewise base_running_inf() const;
    void check_interval(const sub_interval &iv) const;

    model_base m_base;
    rational m_a;
    rational m_b;
    rational m_alpha{1};
    rational m_beta{0};
};

// Explicit piecewise form of g(x) = sup(f, [x, b]); non-increasing.
class g_representation
{
public:
    explicit g_representation(piecewise pw);

    const piecewise &pieces() const { return m_pw; }
    rational eval(const rational &x) const { return m_pw.eval(x); }
    const rational &a() const { return m_pw.lo(); }
    const rational &b() const { return m_pw.hi(); }

    // inf { x in iv : g(x) = level } for closed iv; requires level = g(iv.hi).
    rational level_left_edge(const sub_interval &iv, const rational &level) const;

private:
    piecewise m_pw;
};

// Some u in the open window with f(u) > g(u) - eta, searching subwindows
// [w, window.hi) with w halving toward the right end.
rational near_g_match_point(const function_model &f, const g_representation &g, const sub_interval &window,
                            const rational &eta, int budget = default_search_budget);

} // namespace endpoint_lab

#endif
