#include "dcalc/serialize.hpp"

#include <cctype>
#include <set>

#include "dcalc/error.hpp"
#include "dcalc/poly_parser.hpp"

namespace dcalc::io {

namespace {

std::uint64_t read_uint(const Json& j, const std::string& where, std::uint64_t bound) {
  if (!j.is_number_unsigned()) throw ParseError(where, "expected a non-negative integer");
  const auto v = j.get<std::uint64_t>();
  if (v >= bound) throw ParseError(where, "value " + std::to_string(v) + " must be below " + std::to_string(bound));
  return v;
}

void require_keys(const Json& j, const std::string& where, std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) throw ParseError(where, "expected an object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) throw ParseError(where, "unknown key \"" + key + "\"");
  }
}

Basis basis_from_json(const Field& field, const Json& j, const std::string& where) {
  const auto n = static_cast<std::size_t>(field.n());
  if (!j.is_array() || j.size() != n) throw ParseError(where, "expected " + std::to_string(n) + " basis vectors");
  std::vector<std::vector<std::uint32_t>> cols;
  for (std::size_t c = 0; c < n; ++c) {
    const std::string at = where + "/" + std::to_string(c);
    const Json& col = j[c];
    if (!col.is_array() || col.size() != n) throw ParseError(at, "expected a coordinate vector of length " + std::to_string(n));
    std::vector<std::uint32_t> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(static_cast<std::uint32_t>(read_uint(col[i], at + "/" + std::to_string(i), field.p())));
    cols.push_back(std::move(v));
  }
  return Basis::from_columns(field, std::move(cols));
}

Json parse_json_text(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.byte == 0 ? 0 : e.byte - 1, std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

Json field_to_json(const Field& field) {
  Json j;
  j["p"] = field.p();
  j["n"] = field.n();
  j["modulus"] = field.modulus();
  return j;
}

Field field_from_json(const Json& j) {
  require_keys(j, "", {"p", "n", "modulus"});
  if (!j.contains("p") || !j.contains("n")) throw ParseError("", "field needs \"p\" and \"n\"");
  const auto p = read_uint(j["p"], "/p", std::uint64_t{1} << 32);
  const auto n = read_uint(j["n"], "/n", 64);
  std::optional<std::vector<std::uint32_t>> modulus;
  if (j.contains("modulus")) {
    const Json& m = j["modulus"];
    if (!m.is_array()) throw ParseError("/modulus", "expected an array");
    std::vector<std::uint32_t> coeffs;
    for (std::size_t i = 0; i < m.size(); ++i) {
      coeffs.push_back(static_cast<std::uint32_t>(read_uint(m[i], "/modulus/" + std::to_string(i), std::uint64_t{1} << 32)));
    }
    modulus = std::move(coeffs);
  }
  return make_field(static_cast<std::uint32_t>(p), static_cast<int>(n), std::move(modulus));
}

std::string exponent_key(std::span<const std::uint32_t> exps) {
  std::string key = "(";
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (i) key += ",";
    key += std::to_string(exps[i]);
  }
  return key + ")";
}

std::vector<std::uint32_t> parse_exponent_key(std::string_view key, int n) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < key.size() && std::isspace(static_cast<unsigned char>(key[pos]))) ++pos;
  };
  auto expect = [&](char c) {
    skip();
    if (pos >= key.size() || key[pos] != c) throw ParseError(pos, "exponent key: expected '" + std::string(1, c) + "'");
    ++pos;
  };
  std::vector<std::uint32_t> out;
  expect('(');
  for (int i = 0; i < n; ++i) {
    if (i) expect(',');
    skip();
    if (pos >= key.size() || !std::isdigit(static_cast<unsigned char>(key[pos]))) {
      throw ParseError(pos, "exponent key: expected a digit");
    }
    std::uint64_t v = 0;
    while (pos < key.size() && std::isdigit(static_cast<unsigned char>(key[pos]))) {
      v = v * 10 + static_cast<std::uint64_t>(key[pos] - '0');
      if (v > 1000000) throw ParseError(pos, "exponent key: exponent too large");
      ++pos;
    }
    out.push_back(static_cast<std::uint32_t>(v));
  }
  expect(')');
  skip();
  if (pos != key.size()) throw ParseError(pos, "exponent key: trailing characters");
  return out;
}

ParsedFunction function_from_json(const Field& field, const Json& j) {
  require_keys(j, "", {"table", "poly", "anf"});
  if (j.size() != 1) throw ParseError("", "expected exactly one of \"table\", \"poly\", \"anf\"");
  const std::uint64_t q = field.order();

  if (j.contains("table")) {
    const Json& t = j["table"];
    if (!t.is_array() || t.size() != q) throw ParseError("/table", "expected an array of " + std::to_string(q) + " element indices");
    std::vector<Element> values;
    values.reserve(q);
    for (std::size_t k = 0; k < t.size(); ++k) {
      values.push_back({static_cast<std::uint32_t>(read_uint(t[k], "/table/" + std::to_string(k), q))});
    }
    return {FunctionTable(field, std::move(values)), std::nullopt};
  }

  if (j.contains("poly")) {
    const Json& pj = j["poly"];
    if (pj.is_string()) return {to_table(parse_poly(field, pj.get<std::string>())), std::nullopt};
    if (!pj.is_array()) throw ParseError("/poly", "expected an array of coefficients or a polynomial string");
    std::vector<Element> coeffs;
    for (std::size_t d = 0; d < pj.size(); ++d) {
      const std::string at = "/poly/" + std::to_string(d);
      const Json& c = pj[d];
      if (c.is_array()) {
        if (c.size() != 1) throw ParseError(at, "expected a one-element array [index]");
        coeffs.push_back({static_cast<std::uint32_t>(read_uint(c[0], at + "/0", q))});
      } else {
        coeffs.push_back({static_cast<std::uint32_t>(read_uint(c, at, q))});
      }
    }
    return {to_table(UnivariatePoly(field, std::move(coeffs))), std::nullopt};
  }

  const Json& aj = j["anf"];
  require_keys(aj, "/anf", {"basis", "components"});
  if (!aj.contains("basis") || !aj.contains("components")) throw ParseError("/anf", "needs \"basis\" and \"components\"");
  Basis basis = basis_from_json(field, aj["basis"], "/anf/basis");
  const Json& comps = aj["components"];
  if (!comps.is_array() || comps.empty() || comps.size() > static_cast<std::size_t>(field.n())) {
    throw ParseError("/anf/components", "expected between 1 and " + std::to_string(field.n()) + " components");
  }
  MultivariateAnf zero = MultivariateAnf::zero(basis, static_cast<int>(comps.size()));
  std::vector<std::vector<std::uint32_t>> coeffs = zero.components();
  for (std::size_t c = 0; c < comps.size(); ++c) {
    const std::string at = "/anf/components/" + std::to_string(c);
    if (!comps[c].is_object()) throw ParseError(at, "expected an object of monomial coefficients");
    std::set<std::size_t> seen;
    for (const auto& [key, value] : comps[c].items()) {
      std::vector<std::uint32_t> exps;
      try {
        exps = parse_exponent_key(key, field.n());
      } catch (const ParseError& e) {
        throw ParseError(at, "bad key \"" + key + "\": " + e.what());
      }
      for (auto e : exps) {
        if (e >= field.p()) throw ParseError(at, "exponent in \"" + key + "\" must be below p");
      }
      const std::size_t idx = zero.exponent_index(exps);
      if (!seen.insert(idx).second) throw ParseError(at, "duplicate monomial \"" + key + "\"");
      coeffs[c][idx] = static_cast<std::uint32_t>(read_uint(value, at + "/" + key, field.p()));
    }
  }
  MultivariateAnf anf(std::move(basis), std::move(coeffs));
  FunctionTable table = anf_to_table(anf);
  return {std::move(table), std::move(anf)};
}

Json table_to_json(const FunctionTable& table) {
  Json values = Json::array();
  for (auto v : table.values()) values.push_back(v.index);
  Json j;
  j["table"] = std::move(values);
  return j;
}

Json poly_to_json(const UnivariatePoly& poly) {
  Json coeffs = Json::array();
  for (auto c : poly.coeffs()) coeffs.push_back(Json::array({c.index}));
  Json j;
  j["poly"] = std::move(coeffs);
  return j;
}

Json anf_to_json(const MultivariateAnf& anf) {
  Json basis = Json::array();
  for (const auto& col : anf.basis().columns()) basis.push_back(col);
  Json comps = Json::array();
  for (int c = 0; c < anf.m(); ++c) {
    Json terms = Json::object();
    const auto coeffs = anf.component(c);
    for (std::size_t idx = 0; idx < coeffs.size(); ++idx) {
      if (coeffs[idx] != 0) terms[exponent_key(anf.exponents(idx))] = coeffs[idx];
    }
    comps.push_back(std::move(terms));
  }
  Json inner;
  inner["basis"] = std::move(basis);
  inner["components"] = std::move(comps);
  Json j;
  j["anf"] = std::move(inner);
  return j;
}

Json census_to_json(const CensusTable& table) {
  Json j;
  j["p"] = table.p;
  j["star"] = table.star;
  j["method"] = std::string(to_string(table.method));
  j["counts"] = table.counts;
  return j;
}

Json match_report_to_json(const MatchResult& result) {
  Json j;
  j["status"] = result.ok() ? "ok" : "no_match";
  j["g"] = result.g ? anf_to_json(*result.g) : Json(nullptr);
  if (result.witness) {
    Json w;
    w["component"] = result.witness->component;
    w["j"] = result.witness->j;
    w["w"] = result.witness->w;
    j["witness"] = std::move(w);
  } else {
    j["witness"] = nullptr;
  }
  j["verified"] = result.verified;
  return j;
}

ParsedFunction parse_function_text(const Field& field, std::string_view text) {
  std::size_t first = 0;
  while (first < text.size() && std::isspace(static_cast<unsigned char>(text[first]))) ++first;
  if (first < text.size() && text[first] == '{') return function_from_json(field, parse_json_text(text));
  return {to_table(parse_poly(field, text)), std::nullopt};
}

}  // namespace dcalc::io
