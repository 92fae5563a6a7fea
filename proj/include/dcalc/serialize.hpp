#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

#include "dcalc/census.hpp"
#include "dcalc/field.hpp"
#include "dcalc/function.hpp"
#include "dcalc/matching.hpp"

// JSON wire formats. Emission uses ordered objects so identical inputs give
// byte-identical output; parsing is strict and reports failures as
// ParseError (or the field-construction error kinds).
namespace dcalc::io {

using Json = nlohmann::ordered_json;

// {"p":3,"n":2,"modulus":[1,0,1]}
Json field_to_json(const Field& field);
Field field_from_json(const Json& j);

// Exactly one of {"table":[...]}, {"poly":[[c0],[c1],...]} (or a poly
// string), {"anf":{"basis":[[...],...],"components":[{"(i1,..,in)":c},...]}}.
struct ParsedFunction {
  FunctionTable table;
  std::optional<MultivariateAnf> anf;  // present for the "anf" form
};

ParsedFunction function_from_json(const Field& field, const Json& j);

Json table_to_json(const FunctionTable& table);
Json poly_to_json(const UnivariatePoly& poly);
Json anf_to_json(const MultivariateAnf& anf);

// "(2,1)" for exponent vector (2, 1).
std::string exponent_key(std::span<const std::uint32_t> exponents);
std::vector<std::uint32_t> parse_exponent_key(std::string_view key, int n);

// {"p":5,"star":true,"method":"dp","counts":[[...],...]}
Json census_to_json(const CensusTable& table);

// {"status":"ok"|"no_match","g":{...},"witness":{"j":..,"w":[..]},"verified":true}
Json match_report_to_json(const MatchResult& result);

// Text starting with '{' is read as a JSON function document, anything else
// as a polynomial string.
ParsedFunction parse_function_text(const Field& field, std::string_view text);

}  // namespace dcalc::io
