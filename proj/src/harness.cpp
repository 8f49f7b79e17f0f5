#include <endpoint_lab/harness.hpp>

#include <algorithm>
#include <sstream>

#include <endpoint_lab/errors.hpp>
#include <endpoint_lab/function_dsl.hpp>

namespace endpoint_lab
{

using nlohmann::json;

namespace
{

constexpr int report_schema_version = 1;

rational from_size(std::size_t n)
{
    return rational(static_cast<std::int64_t>(n));
}

json points_json(const partition &p)
{
    json out = json::array();
    for (const auto &x : p.points()) {
        out.push_back(to_json(x));
    }
    return out;
}

json approx_json(const bounded_approx &x)
{
    return {{"value", to_json(x.value)}, {"error_bound", to_json(x.error_bound)}, {"decimal", x.value.to_double()}};
}

std::string csv_escape(const std::string &cell)
{
    if (cell.find_first_of(",\"\n") == std::string::npos) {
        return cell;
    }
    std::string out = "\"";
    for (char c : cell) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

std::string less_than(const std::string &lhs, const rational &l, const rational &r)
{
    return lhs + " = " + l.str() + (l < r ? " < " : " >= ") + r.str();
}

} // namespace

bool experiment_report::all_passed() const
{
    return std::all_of(gates.begin(), gates.end(), [](const gate &g) { return g.passed; });
}

nlohmann::json experiment_report::to_json() const
{
    json g = json::array();
    for (const auto &x : gates) {
        g.push_back({{"name", x.name}, {"passed", x.passed}, {"detail", x.detail}});
    }
    return {{"schema_version", report_schema_version},
            {"experiment", experiment},
            {"inputs", inputs},
            {"outputs", outputs},
            {"gates", g},
            {"all_passed", all_passed()}};
}

std::string experiment_report::to_csv() const
{
    std::ostringstream out;
    auto line = [&out](const std::vector<std::string> &cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            out << (i ? "," : "") << csv_escape(cells[i]);
        }
        out << '\n';
    };
    line(csv_header);
    for (const auto &row : csv_rows) {
        line(row);
    }
    return out.str();
}

theorem_report theorem_check(const function_model &f, const rational &epsilon, std::size_t n)
{
    if (epsilon.sign() <= 0) {
        throw domain_error("epsilon must be positive");
    }
    if (n == 0) {
        throw domain_error("seed partition needs n >= 1 pieces");
    }
    theorem_report r;
    r.epsilon = epsilon;
    r.bound = epsilon * rational(4);
    r.seed = uniform_partition(f.a(), f.b(), n);
    const rational share = epsilon / from_size(n);

    std::vector<partition> uppers;
    std::vector<partition> lowers;
    r.stitched_upper = rational(0);
    for (std::size_t k = 1; k <= n; ++k) {
        const function_model piece = f.restrict(r.seed[k - 1], r.seed[k]);
        lemma_result up = construct_lemma_partition(piece, share);
        lemma_result lo = construct_corollary_partition(piece, share);
        r.stitched_upper += upper_darboux(piece, up.q);
        uppers.push_back(up.q);
        lowers.push_back(lo.q);
        r.upper_certificates.push_back(std::move(up.certificate));
        r.lower_certificates.push_back(std::move(lo.certificate));
    }
    r.q_upper = stitch(uppers);
    r.q_lower = stitch(lowers);
    r.upper = upper_darboux(f, r.q_upper);
    r.right_upper = riemann_sum(f, r.q_upper, sample_rule::right());
    r.right_lower = riemann_sum(f, r.q_lower, sample_rule::right());
    r.lower = lower_darboux(f, r.q_lower);
    r.final_gap = r.upper - r.lower;
    return r;
}

std::vector<partition> probe_family(const rational &a, const rational &b, const rational &h)
{
    const rational len = b - a;
    const mpz_class m_z = (len / h).ceil();
    if (!m_z.fits_slong_p() || m_z > 10'000'000) {
        throw domain_error("mesh bound " + h.str() + " is too small to probe");
    }
    const auto m = static_cast<std::size_t>(m_z.get_si());
    std::vector<partition> family{uniform_partition(a, b, m)};
    const rational cell = len / from_size(2 * m);
    for (std::int64_t j = 0; j < 3; ++j) {
        std::vector<rational> pts{a};
        const rational shift = cell * rational(j, 3);
        for (std::size_t i = 1; i < 2 * m; ++i) {
            pts.push_back(a + cell * from_size(i) + shift);
        }
        pts.push_back(b);
        family.emplace_back(std::move(pts));
    }
    return family;
}

std::vector<probe_row> right_endpoint_limit_probe(const function_model &f, const std::vector<rational> &mesh_schedule)
{
    for (std::size_t i = 0; i < mesh_schedule.size(); ++i) {
        if (mesh_schedule[i].sign() <= 0) {
            throw domain_error("mesh bounds must be positive");
        }
        if (i > 0 && !(mesh_schedule[i] < mesh_schedule[i - 1])) {
            throw domain_error("mesh schedule must be strictly decreasing");
        }
    }
    std::vector<probe_row> rows;
    for (const auto &h : mesh_schedule) {
        probe_row row;
        row.mesh_bound = h;
        const auto family = probe_family(f.a(), f.b(), h);
        row.family_size = family.size();
        row.largest_mesh = rational(0);
        bool first = true;
        for (const auto &p : family) {
            const rational s = riemann_sum(f, p, sample_rule::right());
            row.largest_mesh = max(row.largest_mesh, mesh(p));
            if (first) {
                row.min_sum = s;
                row.max_sum = s;
                first = false;
            } else {
                row.min_sum = min(row.min_sum, s);
                row.max_sum = max(row.max_sum, s);
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<counterexample_row> regular_endpoint_counterexample(const std::vector<std::size_t> &n_values)
{
    const function_model f = function_model::make_dirichlet(rational(1), rational(0), rational(0), rational(1));
    std::vector<counterexample_row> rows;
    for (std::size_t n : n_values) {
        const partition p = uniform_partition(f.a(), f.b(), n);
        rows.push_back({n, riemann_sum(f, p, sample_rule::right()), upper_darboux(f, p), lower_darboux(f, p)});
    }
    return rows;
}

unbounded_report unbounded_demo(const std::vector<rational> &c_values, const std::vector<std::size_t> &n_values,
                                const rational &error_budget)
{
    if (error_budget.sign() <= 0) {
        throw domain_error("error budget must be positive");
    }
    unbounded_report r;
    r.error_budget = error_budget;
    const bounded_approx two = bounded_approx::exact(rational(2));
    for (std::size_t n : n_values) {
        if (n == 0) {
            throw domain_error("n must be positive");
        }
        // (1/n) f(k/n) = (1/n) sqrt(n/k) = sqrt(1/(n k))
        const rational per_term = error_budget / from_size(n);
        bounded_approx sum = bounded_approx::exact(rational(0));
        const rational n_r = from_size(n);
        for (std::size_t k = 1; k <= n; ++k) {
            sum = sum + sqrt_approx(rational(1) / (n_r * from_size(k)), per_term);
        }
        r.sums.push_back({n, sum, two - sum});
    }
    for (const auto &c : c_values) {
        if (c.sign() <= 0 || c >= rational(1)) {
            throw domain_error("c = " + c.str() + " must lie in (0, 1)");
        }
        const bounded_approx root = sqrt_approx(c, error_budget / rational(2));
        const bounded_approx integral = two - scale(root, rational(2));
        r.integrals.push_back({c, integral, scale(root, rational(2))});
    }
    return r;
}

psi_experiment_report psi_experiment(const function_model &f, const sample_rule &rule,
                                     const std::vector<std::size_t> &n_values, std::size_t reference_depth)
{
    if (reference_depth == 0) {
        throw domain_error("reference depth must be >= 1");
    }
    psi_experiment_report r;
    r.rule = rule.name();
    r.reference_depth = reference_depth;
    const darboux_pair deepest = darboux_gap_probe(f, reference_depth).back();
    r.reference = midpoint(deepest.lower, deepest.upper);
    r.reference_width = deepest.upper - deepest.lower;
    for (std::size_t n : n_values) {
        const partition p = uniform_partition(f.a(), f.b(), n);
        psi_row row;
        row.n = n;
        row.sum = riemann_sum(f, p, rule);
        row.lower = lower_darboux(f, p);
        row.upper = upper_darboux(f, p);
        row.residual = row.sum - r.reference;
        r.rows.push_back(std::move(row));
    }
    return r;
}

experiment_report make_report(const function_model &f, const theorem_report &r, std::size_t n)
{
    experiment_report out;
    out.experiment = "theorem";
    out.inputs = {{"function", describe(f)}, {"epsilon", to_json(r.epsilon)}, {"n", n}};
    json cells = json::array();
    out.csv_header = {"k", "x_prev", "x", "q_upper_points", "q_lower_points", "upper_gap", "lower_gap"};
    for (std::size_t k = 0; k < r.upper_certificates.size(); ++k) {
        const auto &uc = r.upper_certificates[k];
        const auto &lc = r.lower_certificates[k];
        cells.push_back({{"k", k + 1},
                         {"interval", {to_json(r.seed[k]), to_json(r.seed[k + 1])}},
                         {"q_upper", points_json(uc.q)},
                         {"q_lower", points_json(lc.q)},
                         {"upper_gap", to_json(uc.total_gap)},
                         {"lower_gap", to_json(lc.total_gap)}});
        out.csv_rows.push_back({std::to_string(k + 1), r.seed[k].str(), r.seed[k + 1].str(),
                                std::to_string(uc.q.points().size()), std::to_string(lc.q.points().size()),
                                uc.total_gap.str(), lc.total_gap.str()});
    }
    out.outputs = {{"seed_partition", points_json(r.seed)},
                   {"cells", cells},
                   {"q_upper", points_json(r.q_upper)},
                   {"q_lower", points_json(r.q_lower)},
                   {"upper_sum", to_json(r.upper)},
                   {"right_sum_upper", to_json(r.right_upper)},
                   {"right_sum_lower", to_json(r.right_lower)},
                   {"lower_sum", to_json(r.lower)},
                   {"stitched_upper", to_json(r.stitched_upper)},
                   {"final_gap", to_json(r.final_gap)},
                   {"bound", to_json(r.bound)}};
    out.gates.push_back({"final_gap", r.gate_passed(), less_than("U(f,Q^U) - L(f,Q^L)", r.final_gap, r.bound)});
    out.gates.push_back({"stitching", r.stitching_ok(),
                         "U(f,Q^U) = " + r.upper.str() + (r.stitching_ok() ? " = " : " != ") + "sum_k U(f,Q_k^U) = "
                             + r.stitched_upper.str()});
    return out;
}

experiment_report make_report(const function_model &f, const std::vector<probe_row> &rows)
{
    experiment_report out;
    out.experiment = "probe";
    json schedule = json::array();
    json table = json::array();
    out.csv_header = {"mesh_bound", "family_size", "largest_mesh", "min_sum", "max_sum", "spread"};
    bool meshes_ok = true;
    for (const auto &r : rows) {
        schedule.push_back(to_json(r.mesh_bound));
        table.push_back({{"mesh_bound", to_json(r.mesh_bound)},
                         {"family_size", r.family_size},
                         {"largest_mesh", to_json(r.largest_mesh)},
                         {"min_sum", to_json(r.min_sum)},
                         {"max_sum", to_json(r.max_sum)},
                         {"spread", to_json(r.spread())}});
        out.csv_rows.push_back({r.mesh_bound.str(), std::to_string(r.family_size), r.largest_mesh.str(),
                                r.min_sum.str(), r.max_sum.str(), r.spread().str()});
        meshes_ok = meshes_ok && r.largest_mesh <= r.mesh_bound;
    }
    out.inputs = {{"function", describe(f)}, {"mesh_schedule", schedule}};
    out.outputs = {{"rows", table}};
    out.gates.push_back({"family_mesh", meshes_ok, "every probed partition has mesh <= its bound"});
    return out;
}

experiment_report make_report(const std::vector<counterexample_row> &rows)
{
    experiment_report out;
    out.experiment = "counterexample";
    json ns = json::array();
    json table = json::array();
    out.csv_header = {"n", "right_sum", "upper", "lower", "darboux_gap"};
    bool sums_one = true;
    bool gaps_one = true;
    for (const auto &r : rows) {
        const rational gap = r.upper - r.lower;
        ns.push_back(r.n);
        table.push_back({{"n", r.n},
                         {"right_sum", to_json(r.right_sum)},
                         {"upper", to_json(r.upper)},
                         {"lower", to_json(r.lower)},
                         {"darboux_gap", to_json(gap)}});
        out.csv_rows.push_back({std::to_string(r.n), r.right_sum.str(), r.upper.str(), r.lower.str(), gap.str()});
        sums_one = sums_one && r.right_sum == rational(1);
        gaps_one = gaps_one && gap == rational(1);
    }
    out.inputs = {{"function", {{"kind", "dirichlet"}, {"hi", "1"}, {"lo", "0"}, {"domain", {"0", "1"}}}},
                  {"n_values", ns}};
    out.outputs = {{"rows", table}};
    out.gates.push_back({"right_sums_equal_1", sums_one, "R(f, uniform_n, re) = 1 for every probed n"});
    out.gates.push_back({"darboux_gap_equals_1", gaps_one, "U(f,P) - L(f,P) = 1 for every probed n"});
    return out;
}

experiment_report make_report(const unbounded_report &r)
{
    experiment_report out;
    out.experiment = "unbounded";
    json ns = json::array();
    json cs = json::array();
    json sums = json::array();
    json integrals = json::array();
    out.csv_header = {"quantity", "parameter", "value", "error_bound", "decimal", "residual", "residual_error_bound"};
    bool bounds_ok = true;
    bool decreasing = true;
    for (std::size_t i = 0; i < r.sums.size(); ++i) {
        const auto &s = r.sums[i];
        ns.push_back(s.n);
        sums.push_back({{"n", s.n}, {"right_sum", approx_json(s.right_sum)}, {"residual", approx_json(s.residual)}});
        out.csv_rows.push_back({"right_sum", std::to_string(s.n), s.right_sum.value.str(), s.right_sum.error_bound.str(),
                                std::to_string(s.right_sum.value.to_double()), s.residual.value.str(),
                                s.residual.error_bound.str()});
        bounds_ok = bounds_ok && s.right_sum.error_bound <= r.error_budget;
        if (i > 0 && s.n > r.sums[i - 1].n) {
            decreasing = decreasing && s.residual.upper() < r.sums[i - 1].residual.lower();
        }
    }
    for (const auto &c : r.integrals) {
        cs.push_back(to_json(c.c));
        integrals.push_back({{"c", to_json(c.c)}, {"integral", approx_json(c.integral)}, {"residual", approx_json(c.residual)}});
        out.csv_rows.push_back({"integral_c_to_1", c.c.str(), c.integral.value.str(), c.integral.error_bound.str(),
                                std::to_string(c.integral.value.to_double()), c.residual.value.str(),
                                c.residual.error_bound.str()});
        bounds_ok = bounds_ok && c.integral.error_bound <= r.error_budget;
    }
    out.inputs = {{"function", "x^(-1/2) on (0, 1], 0 at 0"},
                  {"n_values", ns},
                  {"c_values", cs},
                  {"error_budget", to_json(r.error_budget)}};
    out.outputs = {{"right_sums", sums}, {"integrals", integrals}, {"limit", "2"}};
    out.gates.push_back({"error_bounds", bounds_ok, "every error bound <= " + r.error_budget.str()});
    out.gates.push_back({"residuals_decrease", decreasing,
                         "residual 2 - sum strictly decreases (as certified intervals) as n increases"});
    return out;
}

experiment_report make_report(const function_model &f, const psi_experiment_report &r)
{
    experiment_report out;
    out.experiment = "psi";
    json ns = json::array();
    json table = json::array();
    out.csv_header = {"n", "sum", "lower", "upper", "residual", "within_bracket"};
    bool inside = true;
    for (const auto &row : r.rows) {
        ns.push_back(row.n);
        table.push_back({{"n", row.n},
                         {"sum", to_json(row.sum)},
                         {"lower", to_json(row.lower)},
                         {"upper", to_json(row.upper)},
                         {"residual", to_json(row.residual)},
                         {"within_bracket", row.within_bracket()}});
        out.csv_rows.push_back({std::to_string(row.n), row.sum.str(), row.lower.str(), row.upper.str(),
                                row.residual.str(), row.within_bracket() ? "true" : "false"});
        inside = inside && row.within_bracket();
    }
    out.inputs = {{"function", describe(f)}, {"rule", r.rule}, {"n_values", ns}, {"reference_depth", r.reference_depth}};
    out.outputs = {{"reference", to_json(r.reference)}, {"reference_width", to_json(r.reference_width)}, {"rows", table}};
    out.gates.push_back({"sandwich", inside, "L(f,P_n) <= sum <= U(f,P_n) for every n"});
    return out;
}

} // namespace endpoint_lab
