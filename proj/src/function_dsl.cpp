#include <endpoint_lab/function_dsl.hpp>

#include <string>

#include <endpoint_lab/errors.hpp>

namespace endpoint_lab
{

using nlohmann::json;

nlohmann::json to_json(const rational &r)
{
    return r.str();
}

rational rational_from_json(const json &j)
{
    if (j.is_string()) {
        return rational::parse(j.get<std::string>());
    }
    if (j.is_number_integer()) {
        return rational(j.get<std::int64_t>());
    }
    throw parse_error("expected a rational \"p/q\" string, got " + j.dump());
}

namespace
{

const json &field(const json &obj, const char *name)
{
    const auto it = obj.find(name);
    if (it == obj.end()) {
        throw parse_error(std::string("missing field \"") + name + "\" in " + obj.dump());
    }
    return *it;
}

rational rational_field(const json &obj, const char *name, const rational &fallback)
{
    return obj.contains(name) ? rational_from_json(obj.at(name)) : fallback;
}

int int_field(const json &obj, const char *name)
{
    const json &v = field(obj, name);
    if (v.is_number_integer()) {
        return v.get<int>();
    }
    if (v.is_string()) {
        const rational r = rational::parse(v.get<std::string>());
        if (r.is_integer() && r.num().fits_sint_p()) {
            return static_cast<int>(r.num().get_si());
        }
    }
    throw parse_error(std::string("field \"") + name + "\" must be an integer");
}

std::pair<rational, rational> domain_field(const json &obj)
{
    const json &d = field(obj, "domain");
    if (!d.is_array() || d.size() != 2) {
        throw parse_error("\"domain\" must be a two-element array [\"a\", \"b\"]");
    }
    rational a = rational_from_json(d[0]);
    rational b = rational_from_json(d[1]);
    if (!(a < b)) {
        throw domain_error("domain [" + a.str() + ", " + b.str() + "] must satisfy a < b");
    }
    return {std::move(a), std::move(b)};
}

std::string kind_of(const json &obj)
{
    if (!obj.is_object()) {
        throw parse_error("function description must be a JSON object");
    }
    const json &k = field(obj, "kind");
    if (!k.is_string()) {
        throw parse_error("\"kind\" must be a string");
    }
    return k.get<std::string>();
}

bool is_elementary(const std::string &kind)
{
    return kind == "constant" || kind == "linear" || kind == "monomial";
}

monotone_map parse_map(const json &obj, const std::string &kind)
{
    if (kind == "constant") {
        return monotone_map::constant(rational_from_json(field(obj, "value")));
    }
    if (kind == "linear") {
        return monotone_map::linear(rational_from_json(field(obj, "p")), rational_from_json(field(obj, "q")));
    }
    return {rational_field(obj, "offset", rational(0)), rational_field(obj, "coeff", rational(1)), int_field(obj, "degree")};
}

json map_json(const monotone_map &m, const rational &a, const rational &b)
{
    json out;
    if (m.is_constant()) {
        out = {{"kind", "constant"}, {"value", to_json(m(a))}};
    } else if (m.degree == 1) {
        out = {{"kind", "linear"}, {"p", to_json(m.offset)}, {"q", to_json(m.coeff)}};
    } else {
        out = {{"kind", "monomial"}, {"offset", to_json(m.offset)}, {"coeff", to_json(m.coeff)}, {"degree", m.degree}};
    }
    out["domain"] = json::array({to_json(a), to_json(b)});
    return out;
}

// Default knot values: the map of the piece to the right, the last map at b.
rational default_knot_value(const std::vector<rational> &knots, const std::vector<monotone_map> &maps, std::size_t i)
{
    return i < maps.size() ? maps[i](knots[i]) : maps.back()(knots[i]);
}

function_model parse_piecewise(const json &obj)
{
    const json &pieces = field(obj, "pieces");
    if (!pieces.is_array() || pieces.empty()) {
        throw parse_error("\"pieces\" must be a non-empty array");
    }
    std::vector<rational> knots;
    std::vector<monotone_map> maps;
    for (const auto &p : pieces) {
        const std::string kind = kind_of(p);
        if (!is_elementary(kind)) {
            throw parse_error("piece kind must be constant, linear or monomial, got \"" + kind + "\"");
        }
        auto [lo, hi] = domain_field(p);
        if (knots.empty()) {
            knots.push_back(lo);
        } else if (knots.back() != lo) {
            throw domain_error("pieces must be contiguous: gap or overlap at " + knots.back().str() + " / " + lo.str());
        }
        knots.push_back(hi);
        maps.push_back(parse_map(p, kind));
    }
    if (obj.contains("domain")) {
        auto [a, b] = domain_field(obj);
        if (a != knots.front() || b != knots.back()) {
            throw domain_error("piecewise domain does not match the span of its pieces");
        }
    }
    std::vector<rational> values;
    for (std::size_t i = 0; i < knots.size(); ++i) {
        values.push_back(default_knot_value(knots, maps, i));
    }
    piecewise pw(std::move(knots), std::move(maps), std::move(values));
    if (obj.contains("values")) {
        const json &overrides = obj.at("values");
        if (!overrides.is_array()) {
            throw parse_error("\"values\" must be an array of {\"at\", \"value\"} objects");
        }
        for (const auto &o : overrides) {
            pw = pw.with_value_at(rational_from_json(field(o, "at")), rational_from_json(field(o, "value")));
        }
    }
    return function_model::make_piecewise(std::move(pw));
}

} // namespace

function_model parse_function(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        throw parse_error(std::string("function DSL syntax error: ") + e.what());
    }
    return function_from_json(doc);
}

function_model function_from_json(const json &doc)
{
    const std::string kind = kind_of(doc);
    if (is_elementary(kind)) {
        auto [a, b] = domain_field(doc);
        return function_model::make_piecewise(piecewise::single(a, b, parse_map(doc, kind)));
    }
    if (kind == "piecewise") {
        return parse_piecewise(doc);
    }
    if (kind == "dirichlet") {
        auto [a, b] = domain_field(doc);
        return function_model::make_dirichlet(rational_from_json(field(doc, "hi")), rational_from_json(field(doc, "lo")), a, b);
    }
    if (kind == "thomae") {
        rational a(0);
        rational b(1);
        if (doc.contains("domain")) {
            std::tie(a, b) = domain_field(doc);
        }
        return function_model::make_thomae(rational_field(doc, "v0", rational(1)), a, b);
    }
    if (kind == "negate") {
        return function_from_json(field(doc, "of")).negate();
    }
    if (kind == "affine") {
        return function_from_json(field(doc, "of")).affine(rational_field(doc, "alpha", rational(1)), rational_field(doc, "beta", rational(0)));
    }
    throw parse_error("unknown function kind \"" + kind + "\"");
}

json describe(const function_model &f)
{
    json base;
    const json domain = json::array({to_json(f.a()), to_json(f.b())});
    if (const auto *pw = std::get_if<piecewise>(&f.base())) {
        const auto &knots = pw->knots();
        const auto &maps = pw->pieces();
        if (maps.size() == 1 && pw->knot_values()[0] == maps[0](knots[0]) && pw->knot_values()[1] == maps[0](knots[1])) {
            base = map_json(maps[0], knots[0], knots[1]);
        } else {
            json pieces = json::array();
            for (std::size_t i = 0; i < maps.size(); ++i) {
                pieces.push_back(map_json(maps[i], knots[i], knots[i + 1]));
            }
            json values = json::array();
            for (std::size_t i = 0; i < knots.size(); ++i) {
                if (pw->knot_values()[i] != default_knot_value(knots, maps, i)) {
                    values.push_back({{"at", to_json(knots[i])}, {"value", to_json(pw->knot_values()[i])}});
                }
            }
            base = {{"kind", "piecewise"}, {"domain", domain}, {"pieces", pieces}};
            if (!values.empty()) {
                base["values"] = values;
            }
        }
    } else if (const auto *d = std::get_if<dirichlet_indicator>(&f.base())) {
        base = {{"kind", "dirichlet"}, {"hi", to_json(d->hi)}, {"lo", to_json(d->lo)}, {"domain", domain}};
    } else {
        const auto &t = std::get<thomae>(f.base());
        base = {{"kind", "thomae"}, {"v0", to_json(t.at_zero)}, {"domain", domain}};
    }
    if (f.alpha() == rational(1) && f.beta().is_zero()) {
        return base;
    }
    if (f.alpha() == rational(-1) && f.beta().is_zero()) {
        return {{"kind", "negate"}, {"of", base}};
    }
    return {{"kind", "affine"}, {"alpha", to_json(f.alpha())}, {"beta", to_json(f.beta())}, {"of", base}};
}

} // namespace endpoint_lab
