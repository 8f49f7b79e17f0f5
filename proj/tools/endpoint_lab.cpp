#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <endpoint_lab/errors.hpp>
#include <endpoint_lab/function_dsl.hpp>
#include <endpoint_lab/harness.hpp>
#include <endpoint_lab/lemma.hpp>
#include <endpoint_lab/sums.hpp>

namespace fs = std::filesystem;
using namespace endpoint_lab;
using nlohmann::json;

namespace
{

enum exit_code { exit_ok = 0, exit_gate = 1, exit_input = 2, exit_defect = 3 };

struct options {
    std::string fn;
    std::string epsilon;
    std::string out = "out";
    std::string format = "json";
    std::string cert;
    std::string rule = "right";
    std::string error_bound = "1/1000";
    std::vector<std::size_t> n_values;
    std::vector<std::string> meshes;
    std::vector<std::string> c_values;
    std::size_t seed_n = 0;
    std::size_t depth = 10;
};

std::string slurp(const fs::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw parse_error("cannot read " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// --fn takes a file path or the DSL document itself.
function_model load_function(const std::string &source)
{
    if (source.empty()) {
        throw parse_error("--fn is required");
    }
    const auto first = source.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && source[first] == '{') {
        return parse_function(source);
    }
    return parse_function(slurp(source));
}

rational parse_epsilon(const std::string &text)
{
    if (text.empty()) {
        throw parse_error("--epsilon is required");
    }
    const rational eps = rational::parse(text);
    if (eps.sign() <= 0) {
        throw domain_error("epsilon must be positive");
    }
    return eps;
}

std::vector<rational> parse_rationals(const std::vector<std::string> &texts)
{
    std::vector<rational> out;
    for (const auto &t : texts) {
        out.push_back(rational::parse(t));
    }
    return out;
}

fs::path output_dir(const options &opt)
{
    const char *env = std::getenv("ENDPOINT_LAB_OUT");
    fs::path dir = env && *env ? fs::path(env) : fs::path(opt.out);
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path &path, const std::string &text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw parse_error("cannot write " + path.string());
    }
    out << text;
    std::cout << "wrote " << path.string() << '\n';
}

bool want_json(const options &opt)
{
    return opt.format == "json" || opt.format == "both";
}

bool want_csv(const options &opt)
{
    return opt.format == "csv" || opt.format == "both";
}

std::string ledger_csv(const lemma_certificate &cert)
{
    std::ostringstream out;
    out << "q,q_prev,sup,value,gap,group\n";
    for (const auto &e : cert.ledger) {
        out << e.q.str() << ',' << e.q_prev.str() << ',' << e.sup.str() << ',' << e.value.str() << ','
            << e.gap.str() << ',' << e.group << '\n';
    }
    return out.str();
}

int emit(const options &opt, const experiment_report &report)
{
    const fs::path dir = output_dir(opt);
    if (want_json(opt)) {
        write_file(dir / (report.experiment + "_report.json"), report.to_json().dump(2) + "\n");
    }
    if (want_csv(opt)) {
        write_file(dir / (report.experiment + "_report.csv"), report.to_csv());
    }
    for (const auto &g : report.gates) {
        std::cout << (g.passed ? "PASS " : "FAIL ") << g.name << ": " << g.detail << '\n';
    }
    return report.all_passed() ? exit_ok : exit_gate;
}

void print_groups(const lemma_certificate &cert, const verification_report &rep)
{
    for (std::size_t i = 0; i < 4; ++i) {
        std::cout << "  group Q" << i << ": sum " << cert.group_sums[i].str() << (rep.group_bound_ok[i] ? " < " : " >= ")
                  << rep.group_bounds[i].str() << '\n';
    }
}

int run_lemma(const options &opt, bool corollary)
{
    const function_model f = load_function(opt.fn);
    const rational eps = parse_epsilon(opt.epsilon);
    const lemma_result res = corollary ? construct_corollary_partition(f, eps) : construct_lemma_partition(f, eps);
    const function_model &engine_f = corollary ? f.negate() : f;
    const verification_report rep = verify_certificate(engine_f, res.certificate);

    const std::string name = corollary ? "corollary" : "lemma";
    const fs::path dir = output_dir(opt);
    if (want_json(opt)) {
        write_file(dir / (name + "_certificate.json"), certificate_to_json(engine_f, res.certificate).dump(2) + "\n");
    }
    if (want_csv(opt)) {
        write_file(dir / (name + "_ledger.csv"), ledger_csv(res.certificate));
    }

    const auto &cert = res.certificate;
    std::cout << name << ": |Q| = " << res.q.points().size() << ", seed cells = " << cert.seed.cells()
              << ", |D| = " << cert.classes.drop.size() << ", |D'| = " << cert.classes.run_end.size() << '\n';
    print_groups(cert, rep);

    rational gap = cert.total_gap;
    std::string lhs = "U(f,Q) - R(f,Q,re)";
    if (corollary) {
        gap = riemann_sum(f, res.q, sample_rule::right()) - lower_darboux(f, res.q);
        lhs = "R(f,Q,re) - L(f,Q)";
    }
    if (gap < eps) {
        std::cout << "PASS " << lhs << " = " << gap.str() << " < " << eps.str() << '\n';
        return exit_ok;
    }
    std::cout << "FAIL " << lhs << " = " << gap.str() << " >= " << eps.str() << '\n';
    return exit_gate;
}

int run_verify(const options &opt)
{
    if (opt.cert.empty()) {
        throw parse_error("--cert is required");
    }
    json doc;
    try {
        doc = json::parse(slurp(opt.cert));
    } catch (const json::parse_error &e) {
        throw parse_error(std::string("certificate is not valid JSON: ") + e.what());
    }
    const lemma_certificate cert = certificate_from_json(doc);
    if (!doc.contains("function")) {
        throw parse_error("certificate: missing field \"function\"");
    }
    const function_model embedded = function_from_json(doc.at("function"));

    // A corollary certificate is a certificate for -f; accept either form of --fn.
    function_model f = embedded;
    if (!opt.fn.empty()) {
        const function_model given = load_function(opt.fn);
        if (describe(given) == doc.at("function")) {
            f = given;
        } else if (describe(given.negate()) == doc.at("function")) {
            f = given.negate();
            std::cout << "certificate is for -f (corollary construction)\n";
        } else {
            throw parse_error("certificate was produced for a different function than --fn");
        }
    }

    verification_report rep;
    try {
        rep = verify_certificate(f, cert);
    } catch (const certificate_corruption &e) {
        std::cout << "FAIL " << e.what() << '\n';
        return exit_gate;
    }
    std::cout << "all stored values match their recomputation\n";
    print_groups(cert, rep);
    if (!rep.internal_split_ok) {
        std::cout << "note: epsilon_internal " << cert.epsilon_internal.str() << " is not epsilon_public / 6\n";
    }
    const std::string rel = rep.gate_passed ? " < " : " >= ";
    std::cout << (rep.gate_passed ? "PASS" : "FAIL") << " U(f,Q) - R(f,Q,re) = " << rep.total_gap.str() << rel
              << rep.epsilon.str() << '\n';
    return rep.gate_passed ? exit_ok : exit_gate;
}

int run_theorem(const options &opt)
{
    const function_model f = load_function(opt.fn);
    const rational eps = parse_epsilon(opt.epsilon);
    std::size_t n = opt.seed_n;
    if (n == 0) {
        n = opt.n_values.empty() ? 1 : opt.n_values.front();
    }
    const theorem_report r = theorem_check(f, eps, n);
    std::cout << "theorem: |Q^U| = " << r.q_upper.points().size() << ", |Q^L| = " << r.q_lower.points().size()
              << ", U(f,Q^U) = " << r.upper.str() << ", L(f,Q^L) = " << r.lower.str() << '\n';
    return emit(opt, make_report(f, r, n));
}

int run_probe(const options &opt)
{
    const function_model f = load_function(opt.fn);
    std::vector<rational> schedule = parse_rationals(opt.meshes);
    if (schedule.empty()) {
        schedule = {rational(1, 4), rational(1, 16), rational(1, 64)};
    }
    return emit(opt, make_report(f, right_endpoint_limit_probe(f, schedule)));
}

int run_counterexample(const options &opt)
{
    std::vector<std::size_t> ns = opt.n_values;
    if (ns.empty()) {
        ns = {1, 5, 64, 1000};
    }
    return emit(opt, make_report(regular_endpoint_counterexample(ns)));
}

int run_unbounded(const options &opt)
{
    std::vector<rational> cs = parse_rationals(opt.c_values);
    if (cs.empty()) {
        cs = {rational(1, 4), rational(1, 100), rational(1, 10000)};
    }
    std::vector<std::size_t> ns = opt.n_values;
    if (ns.empty()) {
        ns = {100, 10000};
    }
    const rational budget = rational::parse(opt.error_bound);
    const unbounded_report r = unbounded_demo(cs, ns, budget);
    for (const auto &s : r.sums) {
        std::cout << "n = " << s.n << ": right sum " << s.right_sum.value.to_double() << " +- "
                  << s.right_sum.error_bound.to_double() << ", residual " << s.residual.value.to_double() << '\n';
    }
    return emit(opt, make_report(r));
}

int run_psi(const options &opt)
{
    const function_model f = load_function(opt.fn);
    std::vector<std::size_t> ns = opt.n_values;
    if (ns.empty()) {
        ns = {2, 4, 8, 16, 32, 64};
    }
    const sample_rule rule = sample_rule::parse(opt.rule);
    const psi_experiment_report r = psi_experiment(f, rule, ns, opt.depth);
    std::cout << "reference " << r.reference.str() << " (bracket width " << r.reference_width.str() << " at depth "
              << r.reference_depth << ")\n";
    return emit(opt, make_report(f, r));
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Exact-arithmetic partition constructions for right-endpoint Riemann sums"};
    app.require_subcommand(1);
    options opt;

    auto add_fn = [&opt](CLI::App *sub) {
        sub->add_option("--fn", opt.fn, "function DSL file or inline JSON document")->required();
    };
    auto add_eps = [&opt](CLI::App *sub) {
        sub->add_option("--epsilon", opt.epsilon, "tolerance as an exact rational p/q")->required();
    };
    auto add_output = [&opt](CLI::App *sub) {
        sub->add_option("--out", opt.out, "output directory (ENDPOINT_LAB_OUT overrides)");
        sub->add_option("--format", opt.format, "artifact format")->check(CLI::IsMember({"json", "csv", "both"}));
    };
    auto add_ns = [&opt](CLI::App *sub, const std::string &help) {
        sub->add_option("--n", opt.n_values, help)->delimiter(',')->check(CLI::PositiveNumber);
    };

    auto *lemma = app.add_subcommand("lemma", "build Q with U(f,Q) - R(f,Q,re) < epsilon and write its certificate");
    auto *corollary = app.add_subcommand("corollary", "build Q with R(f,Q,re) - L(f,Q) < epsilon via -f");
    for (auto *sub : {lemma, corollary}) {
        add_fn(sub);
        add_eps(sub);
        add_output(sub);
    }

    auto *verify = app.add_subcommand("verify", "recompute a certificate exactly and check its gate");
    verify->add_option("--cert", opt.cert, "certificate JSON")->required();
    verify->add_option("--fn", opt.fn, "function the certificate claims (default: the embedded one)");

    auto *theorem = app.add_subcommand("theorem", "stitch lemma and corollary partitions over n uniform cells");
    add_fn(theorem);
    add_eps(theorem);
    add_output(theorem);
    theorem->add_option("--seed-partition-n", opt.seed_n, "number of uniform seed cells")->check(CLI::PositiveNumber);
    add_ns(theorem, "synonym for --seed-partition-n");

    auto *psi = app.add_subcommand("psi", "sample-rule sums on uniform partitions against a Darboux bracket");
    add_fn(psi);
    add_output(psi);
    add_ns(psi, "partition sizes (comma separated or repeated)");
    psi->add_option("--rule", opt.rule, "right, left, midpoint or convex:t");
    psi->add_option("--depth", opt.depth, "reference depth (2^depth cells)")->check(CLI::Range(1, 20));

    auto *counter = app.add_subcommand("counterexample", "Dirichlet function under uniform right-endpoint sums");
    add_output(counter);
    add_ns(counter, "partition sizes (comma separated or repeated)");

    auto *unbounded = app.add_subcommand("unbounded", "right-endpoint sums of x^(-1/2) with error bounds");
    add_output(unbounded);
    add_ns(unbounded, "partition sizes (comma separated or repeated)");
    unbounded->add_option("--c", opt.c_values, "lower limits c in (0, 1) as p/q")->delimiter(',');
    unbounded->add_option("--error-bound", opt.error_bound, "total error bound per reported value, p/q");

    auto *probe = app.add_subcommand("probe", "spread of right-endpoint sums over partitions below each mesh bound");
    add_fn(probe);
    add_output(probe);
    probe->add_option("--mesh", opt.meshes, "strictly decreasing mesh bounds as p/q")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return exit_input;
    }

    try {
        if (*lemma) {
            return run_lemma(opt, false);
        }
        if (*corollary) {
            return run_lemma(opt, true);
        }
        if (*verify) {
            return run_verify(opt);
        }
        if (*theorem) {
            return run_theorem(opt);
        }
        if (*psi) {
            return run_psi(opt);
        }
        if (*counter) {
            return run_counterexample(opt);
        }
        if (*unbounded) {
            return run_unbounded(opt);
        }
        return run_probe(opt);
    } catch (const oracle_defect &e) {
        std::cerr << "oracle defect: " << e.what() << '\n';
        return exit_defect;
    } catch (const certificate_corruption &e) {
        std::cerr << e.what() << '\n';
        return exit_gate;
    } catch (const endpoint_lab::error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_input;
    } catch (const fs::filesystem_error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_input;
    }
}
