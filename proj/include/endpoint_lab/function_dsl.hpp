#ifndef ENDPOINT_LAB_FUNCTION_DSL_HPP
#define ENDPOINT_LAB_FUNCTION_DSL_HPP

#include <string_view>

#include <json.hpp>

#include <endpoint_lab/function_model.hpp>
#include <endpoint_lab/rational.hpp>

namespace endpoint_lab
{

// Rationals travel as "p/q" strings; plain JSON integers are accepted on input.
nlohmann::json to_json(const rational &r);
rational rational_from_json(const nlohmann::json &j);

// Function DSL, see schema/function.schema.json. Throws parse_error on
// malformed documents and domain_error on invalid or unbounded models.
function_model parse_function(std::string_view text);
function_model function_from_json(const nlohmann::json &doc);

// Canonical DSL document; parse_function(describe(f)) agrees with f everywhere.
nlohmann::json describe(const function_model &f);

} // namespace endpoint_lab

#endif
