#include <endpoint_lab/lemma.hpp>

#include <algorithm>
#include <set>

#include <endpoint_lab/errors.hpp>
#include <endpoint_lab/function_dsl.hpp>
#include <endpoint_lab/sums.hpp>

namespace endpoint_lab
{

namespace
{

bool contains(const std::vector<std::size_t> &sorted, std::size_t k)
{
    return std::binary_search(sorted.begin(), sorted.end(), k);
}

std::vector<rational> sorted_unique(std::vector<rational> pts)
{
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

void fill_ledger(const function_model &f, lemma_certificate &cert)
{
    std::vector<rational> all;
    for (const auto &g : cert.groups) {
        all.insert(all.end(), g.begin(), g.end());
    }
    cert.q = partition(sorted_unique(std::move(all)));

    cert.ledger.clear();
    cert.group_sums = {rational(0), rational(0), rational(0), rational(0)};
    cert.total_gap = rational(0);
    const auto &pts = cert.q.points();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        ledger_entry e;
        e.q = pts[i];
        e.q_prev = i == 0 ? pts[0] : pts[i - 1];
        e.sup = f.sup_on(sub_interval::closed(e.q_prev, e.q));
        e.value = f.eval(e.q);
        e.gap = (e.sup - e.value) * (e.q - e.q_prev);
        for (int g = 0; g < 4; ++g) {
            const auto &grp = cert.groups[static_cast<std::size_t>(g)];
            if (std::binary_search(grp.begin(), grp.end(), e.q)) {
                e.group = g;
                break;
            }
        }
        cert.group_sums[static_cast<std::size_t>(e.group)] += e.gap;
        cert.total_gap += e.gap;
        cert.ledger.push_back(std::move(e));
    }
    cert.upper_sum = upper_darboux(f, cert.q);
    cert.right_sum = riemann_sum(f, cert.q, sample_rule::right());
    if (cert.upper_sum - cert.right_sum != cert.total_gap) {
        throw error("internal: ledger total differs from U(f,Q) - R(f,Q)");
    }
}

} // namespace

lemma_result construct_lemma_partition(const function_model &f, const rational &epsilon)
{
    if (epsilon.sign() <= 0) {
        throw domain_error("epsilon must be positive");
    }
    const rational &a = f.a();
    const rational &b = f.b();

    lemma_certificate cert;
    cert.epsilon_public = epsilon;
    cert.epsilon_internal = epsilon / rational(6);
    const rational &eps = cert.epsilon_internal;
    cert.range_bound = f.sup_on(f.domain()) - f.inf_on(f.domain());
    const rational &range = cert.range_bound;

    const g_representation g = f.running_sup();

    if (range.is_zero()) {
        cert.seed = partition({a, b});
        cert.g_values = {g.eval(a), g.eval(b)};
        cert.classes.constant = {1};
        cert.groups[0] = {a, b};
        fill_ledger(f, cert);
        return {cert.q, std::move(cert)};
    }

    // Monotone g: U(g,P) - L(g,P) <= (g(a) - g(b)) mesh <= range * mesh, so a
    // mesh below eps / range keeps every Riemann sum of g within eps of its integral.
    cert.delta1 = eps / range;
    cert.delta2 = eps / range;
    cert.delta = min(*cert.delta1, *cert.delta2);
    const mpz_class pieces = (rational(2) * (b - a) / *cert.delta).ceil() + 1;
    if (!pieces.fits_ulong_p()) {
        throw domain_error("epsilon too small: seed partition would need " + pieces.get_str() + " pieces");
    }
    cert.seed = uniform_partition(a, b, pieces.get_ui());
    const partition &p = cert.seed;
    const std::size_t n = p.cells();

    cert.g_values.reserve(n + 1);
    for (const auto &x : p.points()) {
        cert.g_values.push_back(g.eval(x));
    }
    const auto &gv = cert.g_values;

    auto &cls = cert.classes;
    for (std::size_t k = 1; k <= n; ++k) {
        (gv[k - 1] == gv[k] ? cls.constant : cls.drop).push_back(k);
    }
    for (std::size_t k : cls.drop) {
        if (k != n && !contains(cls.drop, k + 1)) {
            cls.run_end.push_back(k);
        }
    }

    std::vector<std::optional<rational>> z(n + 1);
    for (std::size_t k : cls.run_end) {
        z[k] = g.level_left_edge(sub_interval::closed(p[k - 1], p[k]), gv[k]);
        (g.eval(*z[k]) == gv[k] ? cls.run_end_attained : cls.run_end_jump).push_back(k);
    }

    const rational eta = eps / (b - a);
    for (std::size_t k : cls.drop) {
        chosen_points c;
        c.k = k;
        c.z = z[k];
        std::optional<sub_interval> window;
        if (contains(cls.run_end_attained, k)) {
            window = sub_interval::right_open(p[k - 1], *z[k]);
        } else if (contains(cls.run_end_jump, k)) {
            window = sub_interval::closed(p[k - 1], *z[k]);
        } else {
            window = sub_interval::right_open(p[k - 1], p[k]);
        }
        c.y = f.near_max_point(*window, gv[k - 1], eta);
        cert.chosen.push_back(std::move(c));
    }

    if (!cls.run_end.empty()) {
        const rational radius = eps / (range * rational(static_cast<std::int64_t>(cls.run_end.size())));
        for (auto &c : cert.chosen) {
            if (contains(cls.run_end_attained, c.k)) {
                const auto window = sub_interval::open(max(c.y, *c.z - radius), *c.z);
                c.u = near_g_match_point(f, g, window, eta);
            } else if (contains(cls.run_end_jump, c.k)) {
                c.v = midpoint(*c.z, min(p[c.k], *c.z + radius));
            }
        }
    }

    cert.groups[0] = {a, b};
    for (const auto &c : cert.chosen) {
        const bool prev_drop = c.k > 1 && contains(cls.drop, c.k - 1);
        (prev_drop ? cert.groups[3] : cert.groups[1]).push_back(c.y);
        if (c.u) {
            cert.groups[2].push_back(*c.z);
            cert.groups[3].push_back(*c.u);
        }
        if (c.v) {
            cert.groups[2].push_back(*c.v);
            if (*c.z != c.y) {
                cert.groups[3].push_back(*c.z);
            }
        }
    }
    for (auto &grp : cert.groups) {
        grp = sorted_unique(std::move(grp));
    }
    fill_ledger(f, cert);
    return {cert.q, std::move(cert)};
}

lemma_result construct_corollary_partition(const function_model &f, const rational &epsilon)
{
    return construct_lemma_partition(f.negate(), epsilon);
}

// JSON ----------------------------------------------------------------------

namespace
{

using nlohmann::json;

json points_json(const std::vector<rational> &pts)
{
    json out = json::array();
    for (const auto &p : pts) {
        out.push_back(p.str());
    }
    return out;
}

json optional_json(const std::optional<rational> &r)
{
    return r ? json(r->str()) : json(nullptr);
}

rational parse_r(const json &j)
{
    if (!j.is_string()) {
        throw parse_error("certificate: expected a \"p/q\" string, got " + j.dump());
    }
    return rational::parse(j.get<std::string>());
}

std::optional<rational> parse_optional(const json &j)
{
    if (j.is_null()) {
        return std::nullopt;
    }
    return parse_r(j);
}

std::vector<rational> parse_points(const json &j)
{
    if (!j.is_array()) {
        throw parse_error("certificate: expected an array of points");
    }
    std::vector<rational> out;
    for (const auto &e : j) {
        out.push_back(parse_r(e));
    }
    return out;
}

std::vector<std::size_t> parse_indices(const json &j)
{
    if (!j.is_array()) {
        throw parse_error("certificate: expected an array of indices");
    }
    std::vector<std::size_t> out;
    for (const auto &e : j) {
        if (!e.is_number_unsigned()) {
            throw parse_error("certificate: index must be a positive integer");
        }
        out.push_back(e.get<std::size_t>());
    }
    return out;
}

const json &at(const json &obj, const char *key)
{
    const auto it = obj.find(key);
    if (it == obj.end()) {
        throw parse_error(std::string("certificate: missing field \"") + key + "\"");
    }
    return *it;
}

} // namespace

nlohmann::json certificate_to_json(const function_model &f, const lemma_certificate &cert)
{
    json classes = {{"constant", cert.classes.constant},
                    {"drop", cert.classes.drop},
                    {"run_end", cert.classes.run_end},
                    {"run_end_attained", cert.classes.run_end_attained},
                    {"run_end_jump", cert.classes.run_end_jump}};
    json chosen = json::array();
    for (const auto &c : cert.chosen) {
        json e = {{"k", c.k}, {"y", c.y.str()}};
        if (c.z) {
            e["z"] = c.z->str();
        }
        if (c.u) {
            e["u"] = c.u->str();
        }
        if (c.v) {
            e["v"] = c.v->str();
        }
        chosen.push_back(std::move(e));
    }
    json groups = json::array();
    for (const auto &g : cert.groups) {
        groups.push_back(points_json(g));
    }
    json ledger = json::array();
    for (const auto &e : cert.ledger) {
        ledger.push_back({{"q", e.q.str()},
                          {"q_prev", e.q_prev.str()},
                          {"sup", e.sup.str()},
                          {"value", e.value.str()},
                          {"gap", e.gap.str()},
                          {"group", e.group}});
    }
    json sums = json::array();
    for (const auto &s : cert.group_sums) {
        sums.push_back(s.str());
    }
    return {{"schema_version", cert.schema_version},
            {"function", describe(f)},
            {"epsilon_public", cert.epsilon_public.str()},
            {"epsilon_internal", cert.epsilon_internal.str()},
            {"range_bound", cert.range_bound.str()},
            {"delta1", optional_json(cert.delta1)},
            {"delta2", optional_json(cert.delta2)},
            {"delta", optional_json(cert.delta)},
            {"seed_partition", points_json(cert.seed.points())},
            {"g_values", points_json(cert.g_values)},
            {"classes", classes},
            {"chosen_points", chosen},
            {"groups", groups},
            {"partition", points_json(cert.q.points())},
            {"ledger", ledger},
            {"group_sums", sums},
            {"total_gap", cert.total_gap.str()},
            {"upper_sum", cert.upper_sum.str()},
            {"right_sum", cert.right_sum.str()}};
}

lemma_certificate certificate_from_json(const nlohmann::json &doc)
{
    if (!doc.is_object()) {
        throw parse_error("certificate: expected a JSON object");
    }
    lemma_certificate cert;
    const json &version = at(doc, "schema_version");
    if (!version.is_number_integer()) {
        throw parse_error("certificate: schema_version must be an integer");
    }
    cert.schema_version = version.get<int>();
    if (cert.schema_version != certificate_schema_version) {
        throw parse_error("certificate: unsupported schema_version " + std::to_string(cert.schema_version));
    }
    cert.epsilon_public = parse_r(at(doc, "epsilon_public"));
    cert.epsilon_internal = parse_r(at(doc, "epsilon_internal"));
    cert.range_bound = parse_r(at(doc, "range_bound"));
    cert.delta1 = parse_optional(at(doc, "delta1"));
    cert.delta2 = parse_optional(at(doc, "delta2"));
    cert.delta = parse_optional(at(doc, "delta"));
    cert.seed = partition(parse_points(at(doc, "seed_partition")));
    cert.g_values = parse_points(at(doc, "g_values"));

    const json &classes = at(doc, "classes");
    cert.classes.constant = parse_indices(at(classes, "constant"));
    cert.classes.drop = parse_indices(at(classes, "drop"));
    cert.classes.run_end = parse_indices(at(classes, "run_end"));
    cert.classes.run_end_attained = parse_indices(at(classes, "run_end_attained"));
    cert.classes.run_end_jump = parse_indices(at(classes, "run_end_jump"));

    for (const auto &e : at(doc, "chosen_points")) {
        chosen_points c;
        const json &k = at(e, "k");
        if (!k.is_number_unsigned()) {
            throw parse_error("certificate: chosen point index must be a positive integer");
        }
        c.k = k.get<std::size_t>();
        c.y = parse_r(at(e, "y"));
        c.z = e.contains("z") ? parse_optional(e.at("z")) : std::nullopt;
        c.u = e.contains("u") ? parse_optional(e.at("u")) : std::nullopt;
        c.v = e.contains("v") ? parse_optional(e.at("v")) : std::nullopt;
        cert.chosen.push_back(std::move(c));
    }

    const json &groups = at(doc, "groups");
    if (!groups.is_array() || groups.size() != 4) {
        throw parse_error("certificate: \"groups\" must hold four point arrays");
    }
    for (std::size_t i = 0; i < 4; ++i) {
        cert.groups[i] = parse_points(groups[i]);
    }
    cert.q = partition(parse_points(at(doc, "partition")));

    for (const auto &e : at(doc, "ledger")) {
        ledger_entry l;
        l.q = parse_r(at(e, "q"));
        l.q_prev = parse_r(at(e, "q_prev"));
        l.sup = parse_r(at(e, "sup"));
        l.value = parse_r(at(e, "value"));
        l.gap = parse_r(at(e, "gap"));
        const json &grp = at(e, "group");
        if (!grp.is_number_integer()) {
            throw parse_error("certificate: ledger group must be an integer");
        }
        l.group = grp.get<int>();
        cert.ledger.push_back(std::move(l));
    }
    const json &sums = at(doc, "group_sums");
    if (!sums.is_array() || sums.size() != 4) {
        throw parse_error("certificate: \"group_sums\" must hold four values");
    }
    for (std::size_t i = 0; i < 4; ++i) {
        cert.group_sums[i] = parse_r(sums[i]);
    }
    cert.total_gap = parse_r(at(doc, "total_gap"));
    cert.upper_sum = parse_r(at(doc, "upper_sum"));
    cert.right_sum = parse_r(at(doc, "right_sum"));
    return cert;
}

} // namespace endpoint_lab
