#include <algorithm>

#include <endpoint_lab/errors.hpp>
#include <endpoint_lab/lemma.hpp>
#include <endpoint_lab/sums.hpp>

namespace endpoint_lab
{

namespace
{

[[noreturn]] void corrupt(const std::string &what)
{
    throw certificate_corruption("certificate corrupted: " + what);
}

void expect_equal(const rational &stored, const rational &recomputed, const std::string &what)
{
    if (stored != recomputed) {
        corrupt(what + " is " + stored.str() + ", recomputed " + recomputed.str());
    }
}

void expect(bool ok, const std::string &what)
{
    if (!ok) {
        corrupt(what);
    }
}

bool has(const std::vector<std::size_t> &v, std::size_t k)
{
    return std::find(v.begin(), v.end(), k) != v.end();
}

std::string at_k(std::size_t k)
{
    return " (k = " + std::to_string(k) + ")";
}

} // namespace

bool verification_report::all_passed() const
{
    return gate_passed && internal_split_ok
           && std::all_of(group_bound_ok.begin(), group_bound_ok.end(), [](bool b) { return b; });
}

verification_report verify_certificate(const function_model &f, const lemma_certificate &cert)
{
    expect(cert.schema_version == certificate_schema_version, "unsupported schema_version");
    const rational &a = f.a();
    const rational &b = f.b();
    const rational &eps = cert.epsilon_internal;
    expect(cert.epsilon_public.sign() > 0, "epsilon_public must be positive");
    expect(eps.sign() > 0, "epsilon_internal must be positive");

    const rational range = f.sup_on(f.domain()) - f.inf_on(f.domain());
    expect_equal(cert.range_bound, range, "range_bound");

    const partition &p = cert.seed;
    expect(p.a() == a && p.b() == b, "seed partition does not span the domain");
    if (range.is_zero()) {
        expect(!cert.delta1 && !cert.delta2 && !cert.delta, "deltas must be absent for a constant function");
        expect(p.cells() == 1, "seed partition must be {a, b} for a constant function");
    } else {
        expect(cert.delta1 && cert.delta2 && cert.delta, "deltas missing");
        expect_equal(*cert.delta1, eps / range, "delta1");
        expect_equal(*cert.delta2, eps / range, "delta2");
        expect_equal(*cert.delta, min(*cert.delta1, *cert.delta2), "delta");
        expect(mesh(p) < *cert.delta / rational(2), "seed partition mesh is not below delta / 2");
    }
    const std::size_t n = p.cells();

    const g_representation g = f.running_sup();
    expect(cert.g_values.size() == n + 1, "g_values has the wrong length");
    for (std::size_t k = 0; k <= n; ++k) {
        expect_equal(cert.g_values[k], g.eval(p[k]), "g(x_" + std::to_string(k) + ")");
    }
    const auto &gv = cert.g_values;

    index_classes cls;
    for (std::size_t k = 1; k <= n; ++k) {
        (gv[k - 1] == gv[k] ? cls.constant : cls.drop).push_back(k);
    }
    for (std::size_t k : cls.drop) {
        if (k != n && !has(cls.drop, k + 1)) {
            cls.run_end.push_back(k);
        }
    }
    std::vector<std::optional<rational>> z(n + 1);
    for (std::size_t k : cls.run_end) {
        z[k] = g.level_left_edge(sub_interval::closed(p[k - 1], p[k]), gv[k]);
        (g.eval(*z[k]) == gv[k] ? cls.run_end_attained : cls.run_end_jump).push_back(k);
    }
    expect(cls == cert.classes, "index classes differ from the recomputed classification");

    const rational eta = eps / (b - a);
    expect(cert.chosen.size() == cls.drop.size(), "one chosen-point record per drop index expected");
    const std::optional<rational> radius = cls.run_end.empty() || range.is_zero()
                                               ? std::nullopt
                                               : std::optional<rational>(eps / (range * rational(static_cast<std::int64_t>(cls.run_end.size()))));
    for (std::size_t i = 0; i < cert.chosen.size(); ++i) {
        const auto &c = cert.chosen[i];
        const std::size_t k = cls.drop[i];
        expect(c.k == k, "chosen points out of order" + at_k(k));
        const bool attained = has(cls.run_end_attained, k);
        const bool jump = has(cls.run_end_jump, k);

        expect(c.z.has_value() == (attained || jump), "z presence" + at_k(k));
        if (c.z) {
            expect_equal(*c.z, *z[k], "z" + at_k(k));
        }
        expect(c.u.has_value() == attained, "u presence" + at_k(k));
        expect(c.v.has_value() == jump, "v presence" + at_k(k));

        expect(p[k - 1] <= c.y && c.y < p[k], "y outside [x_{k-1}, x_k)" + at_k(k));
        expect(f.eval(c.y) > gv[k - 1] - eta, "f(y) not within eta of g(x_{k-1})" + at_k(k));
        if (attained) {
            expect(c.y < *c.z, "y must lie left of z" + at_k(k));
            expect(c.y < *c.u && *c.u < *c.z, "u outside (y, z)" + at_k(k));
            expect(*c.z - *c.u < *radius, "u too far from z" + at_k(k));
            expect(f.eval(*c.u) > g.eval(*c.u) - eta, "f(u) not within eta of g(u)" + at_k(k));
        }
        if (jump) {
            expect(c.y <= *c.z, "y must not exceed z" + at_k(k));
            expect(*c.z < *c.v && *c.v < p[k], "v outside (z, x_k)" + at_k(k));
            expect(*c.v - *c.z < *radius, "v too far from z" + at_k(k));
        }
    }

    std::array<std::vector<rational>, 4> groups;
    groups[0] = {a, b};
    for (const auto &c : cert.chosen) {
        const bool prev_drop = c.k > 1 && has(cls.drop, c.k - 1);
        groups[prev_drop ? 3 : 1].push_back(c.y);
        if (c.u) {
            groups[2].push_back(*c.z);
            groups[3].push_back(*c.u);
        }
        if (c.v) {
            groups[2].push_back(*c.v);
            if (*c.z != c.y) {
                groups[3].push_back(*c.z);
            }
        }
    }
    std::vector<rational> all;
    for (std::size_t i = 0; i < 4; ++i) {
        auto &grp = groups[i];
        std::sort(grp.begin(), grp.end());
        grp.erase(std::unique(grp.begin(), grp.end()), grp.end());
        expect(grp == cert.groups[i], "group Q" + std::to_string(i) + " differs from the chosen points");
        all.insert(all.end(), grp.begin(), grp.end());
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    expect(all == cert.q.points(), "partition is not the union of the groups");

    const auto &qs = cert.q.points();
    expect(cert.ledger.size() == qs.size(), "ledger has the wrong length");
    std::array<rational, 4> sums{rational(0), rational(0), rational(0), rational(0)};
    rational total(0);
    for (std::size_t i = 0; i < qs.size(); ++i) {
        const auto &e = cert.ledger[i];
        const rational &q = qs[i];
        const rational &prev = i == 0 ? qs[0] : qs[i - 1];
        const std::string tag = " of ledger entry q = " + q.str();
        expect_equal(e.q, q, "point" + tag);
        expect_equal(e.q_prev, prev, "predecessor" + tag);
        const rational sup = f.sup_on(sub_interval::closed(prev, q));
        const rational value = f.eval(q);
        expect_equal(e.sup, sup, "sup" + tag);
        expect_equal(e.value, value, "value" + tag);
        expect_equal(e.gap, (sup - value) * (q - prev), "E_q" + tag);
        int group = -1;
        for (int gi = 0; gi < 4 && group < 0; ++gi) {
            const auto &grp = groups[static_cast<std::size_t>(gi)];
            if (std::binary_search(grp.begin(), grp.end(), q)) {
                group = gi;
            }
        }
        expect(e.group == group, "group attribution" + tag);
        sums[static_cast<std::size_t>(group)] += e.gap;
        total += e.gap;
    }
    for (std::size_t i = 0; i < 4; ++i) {
        expect_equal(cert.group_sums[i], sums[i], "group sum Q" + std::to_string(i));
    }
    expect_equal(cert.total_gap, total, "total_gap");
    const rational upper = upper_darboux(f, cert.q);
    const rational right = riemann_sum(f, cert.q, sample_rule::right());
    expect_equal(cert.upper_sum, upper, "upper_sum");
    expect_equal(cert.right_sum, right, "right_sum");
    expect_equal(total, upper - right, "total_gap versus U(f,Q) - R(f,Q)");

    verification_report report;
    report.epsilon = cert.epsilon_public;
    report.total_gap = total;
    report.upper_sum = upper;
    report.right_sum = right;
    report.gate_passed = total < cert.epsilon_public;
    report.internal_split_ok = eps * rational(6) == cert.epsilon_public;
    report.group_bounds = {eps, eps, eps, eps * rational(3)};
    for (std::size_t i = 0; i < 4; ++i) {
        report.group_bound_ok[i] = sums[i] < report.group_bounds[i];
    }
    return report;
}

} // namespace endpoint_lab
