// One line per acceptance criterion; exit status 0 only when all eight pass.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <endpoint_lab/errors.hpp>
#include <endpoint_lab/harness.hpp>
#include <endpoint_lab/lemma.hpp>
#include <endpoint_lab/stern_brocot.hpp>
#include <endpoint_lab/sums.hpp>

#include "support.hpp"

using namespace endpoint_lab;
using support::corpus;
using support::r;

namespace
{

struct outcome {
    std::size_t passed = 0;
    std::size_t total = 0;
    std::vector<std::string> failures;

    void record(bool ok, const std::string &what)
    {
        ++total;
        if (ok) {
            ++passed;
        } else {
            failures.push_back(what);
        }
    }
    bool ok() const { return passed == total && total > 0; }
};

const std::vector<rational> &epsilons()
{
    static const std::vector<rational> eps{r(1), r(1, 10), r(1, 100)};
    return eps;
}

std::string tag(const std::string &name, const rational &eps)
{
    return name + " eps=" + eps.str();
}

outcome lemma_gate()
{
    outcome out;
    for (const auto &name : support::corpus_names()) {
        const function_model f = corpus(name);
        for (const auto &eps : epsilons()) {
            try {
                const partition q = construct_lemma_partition(f, eps).q;
                const rational gap = upper_darboux(f, q) - riemann_sum(f, q, sample_rule::right());
                out.record(gap < eps, tag(name, eps) + ": U - R = " + gap.str());
            } catch (const std::exception &e) {
                out.record(false, tag(name, eps) + ": " + e.what());
            }
        }
    }
    return out;
}

outcome corollary_gate()
{
    outcome out;
    for (const auto &name : support::corpus_names()) {
        const function_model f = corpus(name);
        for (const auto &eps : epsilons()) {
            try {
                const partition q = construct_corollary_partition(f, eps).q;
                const rational gap = riemann_sum(f, q, sample_rule::right()) - lower_darboux(f, q);
                out.record(gap < eps, tag(name, eps) + ": R - L = " + gap.str());
            } catch (const std::exception &e) {
                out.record(false, tag(name, eps) + ": " + e.what());
            }
        }
    }
    return out;
}

outcome theorem_gate()
{
    outcome out;
    for (const auto &name : support::corpus_names()) {
        const function_model f = corpus(name);
        if (!f.darboux_integrable()) {
            continue;
        }
        for (const rational &eps : {r(1), r(1, 10)}) {
            for (std::size_t n : {1, 2, 4}) {
                const std::string what = tag(name, eps) + " n=" + std::to_string(n);
                try {
                    const theorem_report t = theorem_check(f, eps, n);
                    const rational upper = upper_darboux(f, t.q_upper);
                    const rational lower = lower_darboux(f, t.q_lower);
                    rational stitched(0);
                    for (std::size_t k = 0; k < n; ++k) {
                        stitched += upper_darboux(f.restrict(t.seed[k], t.seed[k + 1]), t.upper_certificates[k].q);
                    }
                    const rational gap = upper - lower;
                    const bool ok = gap < eps * r(4) && stitched == upper;
                    out.record(ok, what + ": U(Q^U) - L(Q^L) = " + gap.str() + " vs 4 eps = " + (eps * r(4)).str()
                                       + (stitched == upper ? "" : ", stitching identity broken"));
                } catch (const std::exception &e) {
                    out.record(false, what + ": " + e.what());
                }
            }
        }
    }
    return out;
}

bool detected(const function_model &f, const lemma_certificate &bad)
{
    try {
        verify_certificate(f, bad);
    } catch (const certificate_corruption &) {
        return true;
    }
    return false;
}

// Positions to tamper with: all of them for small certificates, an even
// spread of 40 otherwise.
std::vector<std::size_t> positions(std::size_t size)
{
    std::vector<std::size_t> out;
    const std::size_t step = size <= 40 ? 1 : size / 40;
    for (std::size_t i = 0; i < size; i += step) {
        out.push_back(i);
    }
    if (size > 0 && out.back() != size - 1) {
        out.push_back(size - 1);
    }
    return out;
}

void certificate_checks(outcome &out, const function_model &f, const lemma_certificate &cert, const std::string &what)
{
    const verification_report rep = verify_certificate(f, cert);
    out.record(rep.gate_passed && rep.internal_split_ok, what + ": fresh certificate");
    for (const rational &d : {r(1, 1000), r(-1, 1000)}) {
        for (std::size_t i : positions(cert.ledger.size())) {
            auto bad = cert;
            bad.ledger[i].gap += d;
            out.record(detected(f, bad), what + ": E_q tamper at " + std::to_string(i) + " by " + d.str());
        }
        for (std::size_t i : positions(cert.chosen.size())) {
            const auto &c = cert.chosen[i];
            std::vector<std::function<void(chosen_points &)>> edits{[&d](chosen_points &p) { p.y += d; }};
            if (c.z) {
                edits.emplace_back([&d](chosen_points &p) { *p.z += d; });
            }
            if (c.u) {
                edits.emplace_back([&d](chosen_points &p) { *p.u += d; });
            }
            if (c.v) {
                edits.emplace_back([&d](chosen_points &p) { *p.v += d; });
            }
            for (const auto &edit : edits) {
                auto bad = cert;
                edit(bad.chosen[i]);
                out.record(detected(f, bad), what + ": chosen point tamper at k=" + std::to_string(c.k) + " by " + d.str());
            }
        }
    }
}

outcome certificate_integrity()
{
    outcome out;
    for (const auto &name : support::corpus_names()) {
        const function_model f = corpus(name);
        for (const auto &eps : epsilons()) {
            try {
                certificate_checks(out, f, construct_lemma_partition(f, eps).certificate, "lemma " + tag(name, eps));
            } catch (const std::exception &e) {
                out.record(false, "lemma " + tag(name, eps) + ": " + e.what());
            }
            // The corollary construction cannot produce -Dirichlet certificates (criterion 2).
            if (!f.darboux_integrable()) {
                continue;
            }
            try {
                certificate_checks(out, f.negate(), construct_corollary_partition(f, eps).certificate,
                                   "corollary " + tag(name, eps));
            } catch (const std::exception &e) {
                out.record(false, "corollary " + tag(name, eps) + ": " + e.what());
            }
        }
    }
    return out;
}

outcome counterexample()
{
    outcome out;
    for (const auto &row : regular_endpoint_counterexample({1, 5, 64, 1000})) {
        out.record(row.right_sum == r(1) && row.upper - row.lower == r(1),
                   "n=" + std::to_string(row.n) + ": R = " + row.right_sum.str() + ", U - L = " + (row.upper - row.lower).str());
    }
    return out;
}

outcome oracle_equivalence()
{
    outcome out;
    const function_model t = corpus("thomae");
    support::sampler s(2024);
    for (int i = 0; i < 50; ++i) {
        const sub_interval iv = s.closed_in(r(0), r(1), 100);
        const rational sup = t.sup_on(iv);
        const std::int64_t q = smallest_denominator(iv).denominator.get_si();
        out.record(sup == support::thomae_brute_sup(iv, q) && sup == support::thomae_brute_sup(iv, 3 * q + 10),
                   "Thomae sup on " + iv.str() + " = " + sup.str());
    }
    for (const auto &name : support::corpus_names()) {
        const function_model f = corpus(name);
        const auto g = f.running_sup();
        std::size_t agree = 0;
        for (int i = 0; i < 100; ++i) {
            const rational x = s.in(f.a(), f.b(), 200);
            agree += g.eval(x) == f.sup_on(sub_interval::closed(x, f.b())) ? 1 : 0;
        }
        out.record(agree == 100, name + ": running_sup agrees at " + std::to_string(agree) + "/100 points");

        const auto rows = darboux_gap_probe(f, 10);
        bool monotone = rows.size() == 10;
        for (std::size_t j = 1; j < rows.size(); ++j) {
            monotone = monotone && rows[j].upper <= rows[j - 1].upper && rows[j].lower >= rows[j - 1].lower;
        }
        out.record(monotone, name + ": darboux_gap_probe monotone at depth 10");
    }
    return out;
}

outcome unbounded()
{
    outcome out;
    const unbounded_report rep = unbounded_demo({r(1, 4)}, {100, 10000}, r(1, 1000));
    const auto &s100 = rep.sums[0];
    const auto &s10k = rep.sums[1];
    out.record(r(184, 100) <= s100.right_sum.lower() && s100.right_sum.upper() <= r(187, 100),
               "n=100 sum in [" + std::to_string(s100.right_sum.lower().to_double()) + ", "
                   + std::to_string(s100.right_sum.upper().to_double()) + "]");
    out.record(s10k.residual.upper() < s100.residual.lower(),
               "residual at n=10000 below residual at n=100 as certified intervals");
    const auto &quarter = rep.integrals[0].integral;
    out.record(quarter.value == r(1) && quarter.error_bound.is_zero(), "integral from 1/4 to 1 = " + quarter.value.str());
    return out;
}

outcome sandwich()
{
    outcome out;
    support::sampler s(808);
    for (int i = 0; i < 200; ++i) {
        const auto &name = support::corpus_names()[static_cast<std::size_t>(s.integer(0, 6))];
        const function_model f = corpus(name);
        auto random_partition = [&]() {
            std::vector<rational> xs{f.a(), f.b()};
            const auto inner = s.integer(0, 12);
            for (std::int64_t j = 0; j < inner; ++j) {
                xs.push_back(s.in(f.a(), f.b(), 100));
            }
            std::sort(xs.begin(), xs.end());
            xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
            return partition(xs);
        };
        const partition p = random_partition();
        sample_rule rule = sample_rule::right();
        switch (s.integer(0, 3)) {
        case 0:
            break;
        case 1:
            rule = sample_rule::left();
            break;
        case 2:
            rule = sample_rule::midpoint();
            break;
        default:
            rule = sample_rule::convex(s.in(r(0), r(1), 16));
        }
        const rational lower = lower_darboux(f, p);
        const rational upper = upper_darboux(f, p);
        const rational sum = riemann_sum(f, p, rule);
        const partition fine = refine(p, random_partition());
        const bool ok = lower <= sum && sum <= upper && upper_darboux(f, fine) <= upper && lower_darboux(f, fine) >= lower;
        out.record(ok, name + " with " + rule.name() + " on " + std::to_string(p.cells()) + " cells");
    }
    return out;
}

} // namespace

int main()
{
    struct criterion {
        int id;
        const char *name;
        outcome (*run)();
    };
    const criterion criteria[] = {
        {1, "lemma gate", lemma_gate},
        {2, "corollary gate", corollary_gate},
        {3, "theorem gate", theorem_gate},
        {4, "certificate integrity", certificate_integrity},
        {5, "counterexample", counterexample},
        {6, "oracle equivalence", oracle_equivalence},
        {7, "unbounded demo", unbounded},
        {8, "sum sandwich and refinement", sandwich},
    };

    bool all = true;
    for (const auto &c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        const outcome o = c.run();
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        all = all && o.ok();
        std::ostringstream line;
        line << (o.ok() ? "PASS" : "FAIL") << "  criterion " << c.id << " (" << c.name << "): " << o.passed << "/"
             << o.total << " checks";
        line.precision(2);
        line << std::fixed << " in " << secs << "s";
        std::cout << line.str() << '\n';
        for (const auto &f : o.failures) {
            std::cout << "        failed: " << f << '\n';
        }
    }
    return all ? 0 : 1;
}
