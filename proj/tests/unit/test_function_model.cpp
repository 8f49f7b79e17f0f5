#include <doctest.h>

#include <endpoint_lab/errors.hpp>
#include <endpoint_lab/function_dsl.hpp>
#include <endpoint_lab/function_model.hpp>
#include <endpoint_lab/stern_brocot.hpp>

#include "support.hpp"

using namespace endpoint_lab;
using support::corpus;
using support::dsl;
using support::r;

namespace
{

const char *const decreasing_text = R"({"kind":"linear","p":"1","q":"-1","domain":["0","1"]})";

function_model thomae_on(const rational &a, const rational &b)
{
    return function_model::make_thomae(r(1), a, b);
}

} // namespace

TEST_CASE("parse_function accepts the documented kinds")
{
    const function_model f = dsl(decreasing_text);
    CHECK(f.eval(r(1, 4)) == r(3, 4));
    CHECK(f.a() == r(0));
    CHECK(f.b() == r(1));

    const function_model d = dsl(R"({"kind":"dirichlet","hi":"1","lo":"0","domain":["0","1"]})");
    CHECK(d.kind() == "dirichlet");
    CHECK(d.eval(r(1, 3)) == r(1));

    const function_model m = dsl(R"({"kind":"monomial","coeff":"2","degree":2,"domain":["1","3"]})");
    CHECK(m.eval(r(3, 2)) == r(9, 2));

    const function_model n = dsl(R"({"kind":"negate","of":{"kind":"constant","value":"3","domain":["0","1"]}})");
    CHECK(n.eval(r(1, 2)) == r(-3));

    const function_model aff = dsl(R"({"kind":"affine","alpha":"2","beta":"1/2","of":{"kind":"thomae"}})");
    CHECK(aff.eval(r(1, 3)) == r(7, 6));
}

TEST_CASE("parse_function rejects malformed and invalid documents")
{
    CHECK_THROWS_AS(dsl("{\"kind\": \"linear\""), parse_error);
    CHECK_THROWS_AS(dsl("[1, 2]"), parse_error);
    CHECK_THROWS_AS(dsl(R"({"kind":"spline","domain":["0","1"]})"), parse_error);
    CHECK_THROWS_AS(dsl(R"({"kind":"linear","p":"1","domain":["0","1"]})"), parse_error);
    CHECK_THROWS_AS(dsl(R"({"kind":"linear","p":"0.5","q":"1","domain":["0","1"]})"), parse_error);
    CHECK_THROWS_AS(dsl(R"({"kind":"constant","value":"1","domain":["1","0"]})"), domain_error);
    // x^-1 has a pole at 0: unbounded on [-1, 1].
    CHECK_THROWS_AS(dsl(R"({"kind":"monomial","degree":-1,"domain":["-1","1"]})"), domain_error);
    CHECK_THROWS_AS(dsl(R"({"kind":"monomial","degree":-1,"domain":["0","1"]})"), domain_error);
    // x^2 is not monotone across 0.
    CHECK_THROWS_AS(dsl(R"({"kind":"monomial","degree":2,"domain":["-1","1"]})"), domain_error);
    CHECK_THROWS_AS(dsl(R"({"kind":"dirichlet","hi":"0","lo":"1","domain":["0","1"]})"), domain_error);
    CHECK_THROWS_AS(dsl(R"({"kind":"thomae","domain":["0","2"]})"), domain_error);
    CHECK_THROWS_AS(dsl(R"({"kind":"piecewise","pieces":[
        {"kind":"constant","value":"0","domain":["0","1/2"]},
        {"kind":"constant","value":"1","domain":["2/3","1"]}]})"),
                    domain_error);
}

TEST_CASE("eval examples")
{
    CHECK(corpus("thomae").eval(r(3, 6)) == r(1, 2));
    CHECK(corpus("thomae").eval(r(0)) == r(1));
    CHECK(corpus("thomae").eval(r(1)) == r(1));
    CHECK(corpus("dirichlet").eval(r(1, 3)) == r(1));
    CHECK(corpus("decreasing").eval(r(1, 4)) == r(3, 4));
    const function_model step = corpus("step");
    CHECK(step.eval(r(1, 2)) == r(1, 8));
    CHECK(step.eval(r(3, 4)) == r(3, 8));
    CHECK(step.eval(r(5, 8)) == r(1, 4));
    CHECK(step.eval(r(1)) == r(0));
    CHECK_THROWS_AS(corpus("decreasing").eval(r(2)), domain_error);
}

TEST_CASE("sup_on and inf_on examples")
{
    CHECK(corpus("dirichlet").sup_on(sub_interval::closed(r(1, 3), r(1, 2))) == r(1));
    CHECK(corpus("dirichlet").inf_on(sub_interval::closed(r(1, 3), r(1, 2))) == r(0));
    CHECK(corpus("decreasing").sup_on(sub_interval::closed(r(1, 4), r(1, 2))) == r(3, 4));
    const function_model t = corpus("thomae");
    CHECK(t.sup_on(sub_interval::right_open(r(1, 3), r(1, 2))) == r(1, 3));
    CHECK(t.sup_on(sub_interval::closed(r(1, 3), r(1, 2))) == r(1, 2));
    CHECK(t.inf_on(sub_interval::closed(r(1, 3), r(1, 2))) == r(0));
    CHECK(t.inf_on(sub_interval::point(r(1, 3))) == r(1, 3));

    // Open ends keep the limit from inside but drop an override at the end.
    const function_model step = corpus("step");
    CHECK(step.sup_on(sub_interval::right_open(r(1, 4), r(1, 2))) == r(1, 2));
    CHECK(step.sup_on(sub_interval::open(r(1, 2), r(3, 4))) == r(1, 4));
    CHECK(step.sup_on(sub_interval::closed(r(1, 2), r(3, 4))) == r(3, 8));
    CHECK(step.inf_on(sub_interval::closed(r(1, 4), r(1, 2))) == r(1, 8));
}

TEST_CASE("smallest_denominator examples")
{
    auto w = smallest_denominator(sub_interval::closed(r(1, 3), r(1, 2)));
    CHECK(w.denominator == 2);
    CHECK(w.witness == r(1, 2));
    w = smallest_denominator(sub_interval::closed(r(3, 10), r(17, 50)));
    CHECK(w.denominator == 3);
    CHECK(w.witness == r(1, 3));
    w = smallest_denominator(sub_interval::closed(r(0), r(1)));
    CHECK(w.denominator == 1);
    CHECK(w.witness == r(0));
    w = smallest_denominator(sub_interval::open(r(0), r(1)));
    CHECK(w.denominator == 2);
    CHECK(w.witness == r(1, 2));
}

TEST_CASE("smallest_denominator agrees with brute force")
{
    support::sampler s(21);
    for (int i = 0; i < 400; ++i) {
        const sub_interval c = s.closed_in(r(0), r(1), 60);
        const bool lo_closed = s.integer(0, 1) == 1;
        const bool hi_closed = s.integer(0, 1) == 1;
        const sub_interval iv(c.lo(), c.hi(), lo_closed, hi_closed);
        const auto got = smallest_denominator(iv);
        const auto want = support::brute_smallest_denominator(iv, 200);
        REQUIRE(want.first > 0);
        CHECK(got.denominator == want.first);
        CHECK(got.witness == want.second);
    }
}

TEST_CASE("Thomae sup_on agrees with denominator-bounded brute force")
{
    const function_model t = corpus("thomae");
    support::sampler s(22);
    for (int i = 0; i < 50; ++i) {
        const sub_interval iv = s.closed_in(r(0), r(1), 80);
        const rational sup = t.sup_on(iv);
        const std::int64_t q = (r(1) / sup).num().get_si();
        CHECK(sup == support::thomae_brute_sup(iv, q));
        CHECK(sup == support::thomae_brute_sup(iv, 2 * q + 7));
    }
}

TEST_CASE("near_max_point examples")
{
    const rational x = corpus("dirichlet").near_max_point(sub_interval::right_open(r(1, 4), r(1, 2)), r(1), r(1, 10));
    CHECK(r(1, 4) <= x);
    CHECK(x < r(1, 2));

    const function_model dec = corpus("decreasing");
    const rational y = dec.near_max_point(sub_interval::right_open(r(0), r(1, 2)), r(1), r(1, 10));
    CHECK(y < r(1, 10));
    CHECK(dec.eval(y) > r(9, 10));

    CHECK(corpus("thomae").near_max_point(sub_interval::closed(r(1, 3), r(1, 2)), r(1, 2), r(1, 100)) == r(1, 2));

    // The supremum over [1/4, 1/2) is the limit 1/2, approached from the left.
    const function_model step = corpus("step");
    const rational z = step.near_max_point(sub_interval::right_open(r(1, 4), r(1, 2)), r(1, 2), r(1, 1000));
    CHECK(z < r(1, 2));
    CHECK(step.eval(z) > r(1, 2) - r(1, 1000));
}

TEST_CASE("near_max_point reports an exhausted search as a defect")
{
    // -Dirichlet is 0 only at irrationals; no rational point gets within 1/10 of 0.
    const function_model nd = corpus("dirichlet").negate();
    CHECK_THROWS_AS(nd.near_max_point(sub_interval::right_open(r(0), r(1)), r(0), r(1, 10)), oracle_defect);
}

TEST_CASE("running_sup examples")
{
    const auto g_inc = corpus("increasing").running_sup();
    const auto g_dec = corpus("decreasing").running_sup();
    const auto g_tent = corpus("tent").running_sup();
    const auto g_dir = corpus("dirichlet").running_sup();
    for (std::int64_t k = 0; k <= 16; ++k) {
        const rational x(k, 16);
        CHECK(g_inc.eval(x) == r(1));
        CHECK(g_dec.eval(x) == r(1) - x);
        CHECK(g_tent.eval(x) == (x <= r(1, 2) ? r(1, 2) : r(1) - x));
        CHECK(g_dir.eval(x) == r(1));
    }
    const auto g_step = corpus("step").running_sup();
    CHECK(g_step.eval(r(1, 4)) == r(1, 2));
    CHECK(g_step.eval(r(1, 2)) == r(3, 8));
    CHECK(g_step.eval(r(3, 4)) == r(3, 8));
    CHECK(g_step.eval(r(7, 8)) == r(0));
}

TEST_CASE("running_sup matches pointwise sup_on for every corpus function")
{
    support::sampler s(23);
    for (const auto &name : support::corpus_names()) {
        CAPTURE(name);
        for (const function_model &f : {corpus(name), corpus(name).negate()}) {
            const auto g = f.running_sup();
            CHECK(g.eval(f.b()) == f.eval(f.b()));
            std::vector<rational> xs;
            for (int i = 0; i < 100; ++i) {
                xs.push_back(s.in(f.a(), f.b(), 120));
            }
            std::sort(xs.begin(), xs.end());
            for (std::size_t i = 0; i < xs.size(); ++i) {
                const rational &x = xs[i];
                CHECK(g.eval(x) == f.sup_on(sub_interval::closed(x, f.b())));
                CHECK(g.eval(x) >= f.eval(x));
                if (i > 0) {
                    CHECK(g.eval(xs[i - 1]) >= g.eval(x));
                }
            }
        }
    }
}

TEST_CASE("level_left_edge examples")
{
    const auto g_dec = corpus("decreasing").running_sup();
    CHECK(g_dec.level_left_edge(sub_interval::closed(r(1, 4), r(1, 2)), r(1, 2)) == r(1, 2));
    const auto g_const = corpus("constant").running_sup();
    CHECK(g_const.level_left_edge(sub_interval::closed(r(1, 5), r(2, 3)), r(5)) == r(1, 5));
    const auto g_tent = corpus("tent").running_sup();
    CHECK(g_tent.level_left_edge(sub_interval::closed(r(1, 4), r(1, 2)), r(1, 2)) == r(1, 4));
    // g of the step function is 1/2 on [0, 1/2) and 3/8 on [1/2, 3/4]: the level 3/8 starts at 1/2.
    const auto g_step = corpus("step").running_sup();
    CHECK(g_step.level_left_edge(sub_interval::closed(r(3, 8), r(5, 8)), r(3, 8)) == r(1, 2));
}

TEST_CASE("level_left_edge is the left edge of the level set")
{
    support::sampler s(24);
    for (const auto &name : support::corpus_names()) {
        CAPTURE(name);
        const function_model f = corpus(name);
        const auto g = f.running_sup();
        for (int i = 0; i < 40; ++i) {
            const sub_interval iv = s.closed_in(f.a(), f.b(), 40);
            const rational level = g.eval(iv.hi());
            const rational z = g.level_left_edge(iv, level);
            CHECK(iv.lo() <= z);
            CHECK(z <= iv.hi());
            CHECK(g.eval(z) >= level);
            for (int j = 0; j < 10 && iv.lo() < z; ++j) {
                const rational before = s.in(iv.lo(), z, 50);
                if (before < z) {
                    CHECK(g.eval(before) > level);
                }
            }
            if (z < iv.hi()) {
                CHECK(g.eval(midpoint(z, iv.hi())) == level);
            }
        }
    }
}

TEST_CASE("near_g_match_point examples")
{
    const function_model dec = corpus("decreasing");
    const auto g_dec = dec.running_sup();
    const rational u = near_g_match_point(dec, g_dec, sub_interval::open(r(1, 4), r(1, 2)), r(1, 100));
    CHECK(r(1, 4) < u);
    CHECK(u < r(1, 2));

    const function_model dir = corpus("dirichlet");
    const rational v = near_g_match_point(dir, dir.running_sup(), sub_interval::open(r(1, 4), r(1, 2)), r(1, 100));
    CHECK(r(1, 4) < v);
    CHECK(v < r(1, 2));
    CHECK(dir.eval(v) == r(1));
}

TEST_CASE("near_g_match_point on Thomae near 1/3")
{
    const sub_interval window = sub_interval::open(r(1, 3) - r(1, 100), r(1, 3));
    // Brute force: the least denominator inside the window is 34 (11/34).
    CHECK(support::brute_smallest_denominator(window, 200).first == 34);

    // On [0, 1], g = 1 on (0, 1]; f(u) > 3/4 would need an integer in the window.
    const function_model t = corpus("thomae");
    CHECK_THROWS_AS(near_g_match_point(t, t.running_sup(), window, r(1, 4)), oracle_defect);

    // On [0, 1/3], g = 1/3 near 1/3; f(u) > 1/12 would need a denominator below 12.
    const function_model t3 = thomae_on(r(0), r(1, 3));
    const auto g3 = t3.running_sup();
    CHECK_THROWS_AS(near_g_match_point(t3, g3, window, r(1, 4)), oracle_defect);

    // With eta = 1/3 any rational qualifies.
    const rational u = near_g_match_point(t3, g3, window, r(1, 3));
    CHECK(window.contains(u));
    CHECK(t3.eval(u) > g3.eval(u) - r(1, 3));
    CHECK(t3.eval(u) == support::thomae_brute_sup(sub_interval::point(u), 200));
}

TEST_CASE("negate examples and duality")
{
    const function_model c = dsl(R"({"kind":"constant","value":"3","domain":["0","1"]})").negate();
    CHECK(c.eval(r(1, 7)) == r(-3));
    CHECK(corpus("dirichlet").negate().eval(r(1, 2)) == r(-1));
    CHECK(corpus("increasing").negate().sup_on(sub_interval::closed(r(0), r(1))) == r(0));
    CHECK(corpus("increasing").inf_on(sub_interval::closed(r(0), r(1))) == r(0));

    support::sampler s(25);
    for (const auto &name : support::corpus_names()) {
        CAPTURE(name);
        const function_model f = corpus(name);
        const function_model nf = f.negate();
        const function_model nnf = nf.negate();
        for (int i = 0; i < 30; ++i) {
            const rational x = s.in(f.a(), f.b(), 64);
            CHECK(nf.eval(x) == -f.eval(x));
            CHECK(nnf.eval(x) == f.eval(x));
            const sub_interval iv = s.closed_in(f.a(), f.b(), 64);
            CHECK(nf.sup_on(iv) == -f.inf_on(iv));
            CHECK(nf.inf_on(iv) == -f.sup_on(iv));
        }
    }
}

TEST_CASE("extrema sandwich over samples")
{
    support::sampler s(26);
    for (const auto &name : support::corpus_names()) {
        CAPTURE(name);
        const function_model f = corpus(name);
        for (int i = 0; i < 30; ++i) {
            const sub_interval iv = s.closed_in(f.a(), f.b(), 64);
            const rational sup = f.sup_on(iv);
            const rational inf = f.inf_on(iv);
            CHECK(inf <= sup);
            for (int j = 0; j < 20; ++j) {
                const rational x = s.in(iv.lo(), iv.hi(), 64);
                CHECK(f.eval(x) <= sup);
                CHECK(f.eval(x) >= inf);
            }
            CHECK(f.eval(iv.lo()) <= sup);
            CHECK(f.eval(iv.hi()) <= sup);
        }
    }
}

TEST_CASE("describe round-trips through parse_function")
{
    support::sampler s(27);
    for (const auto &name : support::corpus_names()) {
        CAPTURE(name);
        const function_model f = corpus(name);
        for (const function_model &g : {f, f.negate(), f.affine(r(3, 2), r(-1, 4)), f.restrict(r(1, 5), r(4, 5))}) {
            const function_model back = function_from_json(describe(g));
            CHECK(describe(back) == describe(g));
            for (int i = 0; i < 20; ++i) {
                const rational x = s.in(g.a(), g.b(), 64);
                CHECK(back.eval(x) == g.eval(x));
            }
        }
    }
}
