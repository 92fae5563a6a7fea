#include "cli_app.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "dcalc/census.hpp"
#include "dcalc/derivative.hpp"
#include "dcalc/error.hpp"
#include "dcalc/matching.hpp"
#include "dcalc/random.hpp"
#include "dcalc/serialize.hpp"

namespace dcalc::cli {

namespace {

using io::Json;

inline constexpr std::uint32_t kMaxTrialPrime = 13;
inline constexpr std::uint64_t kMaxTrialOrder = 100000;

struct Options {
  std::string field;
  std::uint64_t seed = 0;
  std::uint64_t trials = 100;
  std::string format = "json";
  std::string out;

  std::uint32_t p = 0;
  int n = 1;
  bool star = false;
  std::optional<std::uint32_t> ring;

  std::vector<std::string> functions;
  std::vector<std::uint64_t> dirs;
  std::uint64_t alpha = 0;
  std::uint64_t beta = 0;
  std::string f;
  std::string g;
};

struct Outcome {
  Json report;
  int code = kOk;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool starts_with_brace(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  return first != std::string_view::npos && text[first] == '{';
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.byte == 0 ? 0 : e.byte - 1, std::string("malformed JSON: ") + e.what());
  }
}

// --field takes inline JSON or a path to a JSON file.
Field load_field(const Options& o) {
  if (o.field.empty()) throw Error(ErrorKind::InvalidArgument, "--field is required");
  const std::string text = starts_with_brace(o.field) ? o.field : read_file(o.field);
  return io::field_from_json(parse_json(text));
}

Field trial_field(const Options& o) {
  Field field = o.field.empty() ? (o.p == 0 ? throw Error(ErrorKind::InvalidArgument, "give --p/--n or --field")
                                            : make_field(o.p, o.n))
                                : load_field(o);
  if (field.p() > kMaxTrialPrime) throw Error(ErrorKind::TooLarge, "trials need p <= 13");
  if (field.order() > kMaxTrialOrder) throw Error(ErrorKind::TooLarge, "trials need p^n <= 100000");
  return field;
}

// Function arguments: inline JSON, "@path" for a file, anything else is a
// polynomial string.
io::ParsedFunction load_function(const Field& field, const std::string& arg) {
  if (!arg.empty() && arg.front() == '@') return io::parse_function_text(field, read_file(arg.substr(1)));
  return io::parse_function_text(field, arg);
}

Element element_arg(const Field& field, std::uint64_t value, const char* name) {
  if (value >= field.order()) {
    throw Error(ErrorKind::FieldMismatch, std::string(name) + " = " + std::to_string(value) + " is not an element index");
  }
  return {static_cast<std::uint32_t>(value)};
}

DirectionList direction_args(const Field& field, const std::vector<std::uint64_t>& dirs) {
  std::vector<Element> out;
  for (auto d : dirs) out.push_back(element_arg(field, d, "direction"));
  return DirectionList(field, std::move(out));
}

Json indices(const std::vector<Element>& elements) {
  Json j = Json::array();
  for (auto e : elements) j.push_back(e.index);
  return j;
}

Json header(const char* command, const Options& o) {
  Json j;
  j["command"] = command;
  j["seed"] = o.seed;
  return j;
}

// ---------------------------------------------------------------------------

Outcome lemma_verify(const Options& o) {
  const Field field = trial_field(o);
  Rng rng(o.seed);
  std::uint64_t passes = 0;
  Json counterexamples = Json::array();
  for (std::uint64_t t = 0; t < o.trials; ++t) {
    const FunctionTable f = rng.table(field);
    const Element alpha = rng.nonzero(field);
    const MainLemmaResult r = main_lemma_check(f, alpha);
    if (r.holds) {
      ++passes;
      continue;
    }
    Json c;
    c["trial"] = t;
    c["alpha"] = alpha.index;
    c["f"] = io::table_to_json(f);
    c["repeated"] = io::table_to_json(r.generalized);
    c["multiples"] = io::table_to_json(r.multiples);
    counterexamples.push_back(std::move(c));
  }
  Json j = header("lemma-verify", o);
  j["field"] = io::field_to_json(field);
  j["trials"] = o.trials;
  j["passes"] = passes;
  j["failures"] = o.trials - passes;
  j["counterexamples"] = std::move(counterexamples);
  return {std::move(j), passes == o.trials ? kOk : kNegative};
}

Outcome props_verify(const Options& o) {
  const Field field = trial_field(o);
  Rng rng(o.seed);
  std::uint64_t passes = 0;
  Json counterexamples = Json::array();
  for (std::uint64_t t = 0; t < o.trials; ++t) {
    const FunctionTable f = rng.table(field);
    const Element alpha = rng.element(field);
    const Element beta = rng.element(field);
    // iota cycles through 0..p-1 so every batch of p trials hits iota = 0.
    const auto iota = static_cast<std::uint32_t>(t % field.p());
    const PropertyReport props = verify_basic_properties(f, alpha, beta, iota);
    const bool lemma =
        generalized_differential(f, alpha) == higher_derivative(f, DirectionList::repeated(field, alpha, field.p() - 1));
    if (props.all() && lemma) {
      ++passes;
      continue;
    }
    Json c;
    c["trial"] = t;
    c["alpha"] = alpha.index;
    c["beta"] = beta.index;
    c["iota"] = iota;
    c["f"] = io::table_to_json(f);
    c["symmetric"] = props.symmetric;
    c["negated_direction"] = props.negated_direction;
    c["difference"] = props.difference;
    c["scalar_multiple"] = props.scalar_multiple;
    c["generalized_differential"] = lemma;
    counterexamples.push_back(std::move(c));
  }
  Json j = header("props-verify", o);
  j["field"] = io::field_to_json(field);
  j["trials"] = o.trials;
  j["passes"] = passes;
  j["failures"] = o.trials - passes;
  j["counterexamples"] = std::move(counterexamples);
  return {std::move(j), passes == o.trials ? kOk : kNegative};
}

Outcome census(const Options& o) {
  Json j = header("census", o);
  if (o.ring) {
    const std::uint32_t modulus = *o.ring;
    const RingCensus dp = census_ring_dp(modulus);
    Json methods;
    bool agree = true;
    if (modulus <= kMaxRingEnumeration) {
      const RingCensus en = census_ring_enumerate(modulus);
      agree = en.counts == dp.counts;
      methods["enumerate"] = en.counts;
    } else {
      methods["enumerate"] = nullptr;
    }
    methods["dp"] = dp.counts;
    j["ring"] = modulus;
    j["methods"] = std::move(methods);
    j["agree"] = agree;
    return {std::move(j), agree ? kOk : kNegative};
  }

  if (o.p == 0) throw Error(ErrorKind::InvalidArgument, "census needs --p or --ring");
  if (!is_prime(o.p)) throw Error(ErrorKind::NotPrime, std::to_string(o.p) + " is not prime");
  const CensusIdentityReport ids = verify_census_identities(o.p);
  const CensusTable dp = census_dp(o.p, o.star);
  const CensusTable closed = census_closed_form(o.p, o.star);
  bool agree = dp == closed;
  Json methods;
  if (o.p <= kMaxEnumerationPrime) {
    const CensusTable en = census_enumerate(o.p, o.star);
    agree = agree && en == dp;
    methods["enumerate"] = io::census_to_json(en);
  } else {
    methods["enumerate"] = nullptr;
  }
  methods["dp"] = io::census_to_json(dp);
  methods["closed_form"] = io::census_to_json(closed);

  Json id;
  id["row_sums"] = ids.row_sums;
  id["full_uniform"] = ids.full_uniform;
  id["star_uniform"] = ids.star_uniform;
  id["recurrence"] = ids.recurrence;
  id["star_difference"] = ids.star_difference;
  id["alternating_congruence"] = ids.alternating_congruence;
  id["alternating_sum"] = ids.alternating_sum;
  id["alternating_residue"] = ids.alternating_residue;
  id["closed_forms_match"] = ids.closed_forms_match;
  id["enumeration_matches"] = ids.enumeration_matches ? Json(*ids.enumeration_matches) : Json(nullptr);
  id["full_uniform_at_zero"] = ids.full_uniform_at_zero;
  id["all_pass"] = ids.all_pass();

  j["p"] = o.p;
  j["star"] = o.star;
  j["methods"] = std::move(methods);
  j["agree"] = agree;
  j["identities"] = std::move(id);
  return {std::move(j), agree && ids.all_pass() ? kOk : kNegative};
}

Outcome gapn(const Options& o) {
  const Field field = load_field(o);
  if (o.functions.size() != 1) throw Error(ErrorKind::InvalidArgument, "gapn takes exactly one --function");
  const FunctionTable f = load_function(field, o.functions.front()).table;
  const GapnReport r = gapn_check(f);
  Json j = header("gapn", o);
  j["field"] = io::field_to_json(field);
  j["is_gapn"] = r.is_gapn;
  j["max_solutions"] = r.max_solutions;
  j["worst_alpha"] = r.worst_alpha.index;
  j["worst_beta"] = r.worst_beta.index;
  j["repeated_derivative_agrees"] = r.repeated_derivative_agrees;
  if (!r.repeated_derivative_agrees) throw Error(ErrorKind::InternalInconsistency, "generalized differential mismatch");
  return {std::move(j), r.is_gapn ? kOk : kNegative};
}

Outcome derive(const Options& o) {
  const Field field = load_field(o);
  if (o.functions.size() != 1) throw Error(ErrorKind::InvalidArgument, "derive takes exactly one --function");
  const FunctionTable f = load_function(field, o.functions.front()).table;
  const DirectionList dirs = direction_args(field, o.dirs);
  const FunctionTable d = higher_derivative(f, dirs);
  Json j = header("derive", o);
  j["field"] = io::field_to_json(field);
  j["dirs"] = indices(dirs.dirs());
  j["derivative"] = io::table_to_json(d);
  j["derivative_poly"] = io::poly_to_json(interpolate_univariate(d));
  if (dirs.size() <= kMaxExpansionDirections) {
    const bool agrees = higher_derivative_expansion(f, dirs) == d;
    j["expansion_agrees"] = agrees;
    if (!agrees) return {std::move(j), kNegative};
  } else {
    j["expansion_agrees"] = nullptr;
  }
  return {std::move(j), kOk};
}

// F written in `basis`: an ANF given in exactly that basis is used as is,
// anything else is converted from its table.
MultivariateAnf anf_in_basis(const io::ParsedFunction& parsed, const Basis& basis) {
  if (parsed.anf && parsed.anf->basis() == basis) return *parsed.anf;
  return table_to_anf(parsed.table, basis);
}

Json basis_json(const Basis& basis) {
  Json j = Json::array();
  for (const auto& col : basis.columns()) j.push_back(col);
  return j;
}

Outcome match(const Options& o) {
  const Field field = load_field(o);
  const Element alpha = element_arg(field, o.alpha, "alpha");
  const Element beta = element_arg(field, o.beta, "beta");
  const Basis basis = make_basis_with(field, alpha, beta);
  const io::ParsedFunction parsed = load_function(field, o.f);
  // A user-supplied ANF whose first two basis vectors are alpha and beta is
  // kept in its own basis.
  const bool own = parsed.anf && parsed.anf->basis().element(0) == alpha && parsed.anf->basis().element(1) == beta;
  const MultivariateAnf f = own ? *parsed.anf : table_to_anf(parsed.table, basis);
  const MatchResult r = solve_matching_g(f);
  Json j = header("match", o);
  j["field"] = io::field_to_json(field);
  j["alpha"] = alpha.index;
  j["beta"] = beta.index;
  j["basis"] = basis_json(f.basis());
  j.update(io::match_report_to_json(r));
  if (r.ok()) j["g_table"] = io::table_to_json(anf_to_table(*r.g))["table"];
  return {std::move(j), r.ok() ? kOk : kNegative};
}

Outcome match_check(const Options& o) {
  const Field field = load_field(o);
  const Element alpha = element_arg(field, o.alpha, "alpha");
  const Element beta = element_arg(field, o.beta, "beta");
  const io::ParsedFunction pf = load_function(field, o.f);
  const io::ParsedFunction pg = load_function(field, o.g);
  Basis basis = make_basis_with(field, alpha, beta);
  if (pf.anf && pg.anf && pf.anf->basis() == pg.anf->basis() && pf.anf->m() == pg.anf->m() &&
      pf.anf->basis().element(0) == alpha && pf.anf->basis().element(1) == beta) {
    basis = pf.anf->basis();
  }
  MultivariateAnf f = anf_in_basis(pf, basis);
  MultivariateAnf g = anf_in_basis(pg, basis);
  if (f.m() != g.m()) {
    f = table_to_anf(pf.table, basis);
    g = table_to_anf(pg.table, basis);
  }
  const FoMatchingReport r = fo_matching_report(f, g, basis);
  const bool truth = derivative(anf_to_table(f), alpha) == derivative(anf_to_table(g), beta);
  if (truth != r.holds()) throw Error(ErrorKind::InternalInconsistency, "coefficient check disagrees with tables");
  Json j = header("match-check", o);
  j["field"] = io::field_to_json(field);
  j["alpha"] = alpha.index;
  j["beta"] = beta.index;
  j["basis"] = basis_json(basis);
  j["holds"] = r.holds();
  j["interior"] = r.interior;
  j["f_boundary"] = r.f_boundary;
  j["g_boundary"] = r.g_boundary;
  j["table_check"] = truth;
  return {std::move(j), r.holds() ? kOk : kNegative};
}

Json failure_json(const NoAntiderivative& failure) {
  Json w;
  w["reason"] = failure.reason;
  w["coset"] = indices(failure.coset);
  w["coset_sum"] = failure.coset.empty() ? Json(nullptr) : Json(failure.coset_sum.index);
  w["direction"] = failure.direction ? Json(*failure.direction) : Json(nullptr);
  w["pair"] = failure.pair ? Json::array({failure.pair->first, failure.pair->second}) : Json(nullptr);
  return w;
}

Outcome antideriv(const Options& o) {
  const Field field = load_field(o);
  const DirectionList dirs = direction_args(field, o.dirs);
  if (dirs.size() == 0) throw Error(ErrorKind::InvalidArgument, "antideriv needs --dirs");
  if (dirs.size() > 1 && !independent_over_prime_field(field, dirs.dirs())) {
    throw Error(ErrorKind::DependentDirections, "directions are linearly dependent over F_p");
  }
  if (o.functions.size() != dirs.size()) {
    throw Error(ErrorKind::LengthMismatch, "give one --function per direction");
  }
  std::vector<FunctionTable> ds;
  for (const auto& arg : o.functions) ds.push_back(load_function(field, arg).table);

  Json j = header("antideriv", o);
  j["field"] = io::field_to_json(field);
  j["dirs"] = indices(dirs.dirs());
  AntiderivativeResult r{std::nullopt, std::nullopt};
  if (dirs.size() == 1) {
    r = construct_antiderivative(ds.front(), dirs.dirs().front());
  } else {
    const ConditionReport c = salagean_conditions(ds, dirs);
    Json cj;
    cj["per_direction"] = c.xiong_per_direction;
    Json pairs = Json::array();
    for (const auto& pc : c.symmetry_pairs) pairs.push_back(Json::array({pc.i, pc.j, pc.holds}));
    cj["pairs"] = std::move(pairs);
    j["conditions"] = std::move(cj);
    r = construct_multi_antiderivative(ds, dirs);
  }
  j["status"] = r.ok() ? "ok" : "no_antiderivative";
  j["h"] = r.h ? io::table_to_json(*r.h) : Json(nullptr);
  j["witness"] = r.failure ? failure_json(*r.failure) : Json(nullptr);
  return {std::move(j), r.ok() ? kOk : kNegative};
}

Outcome field_info(const Options& o) {
  const Field field = o.field.empty() ? (o.p == 0 ? throw Error(ErrorKind::InvalidArgument, "give --field or --p/--n")
                                                  : make_field(o.p, o.n))
                                      : load_field(o);
  Json j = header("field-info", o);
  j["field"] = io::field_to_json(field);
  j["order"] = field.order();
  j["default_modulus"] = field.modulus() == default_modulus(field.p(), field.n());
  j["generator"] = field.generator().index;
  j["t"] = field.t().index;
  return {std::move(j), kOk};
}

// ---------------------------------------------------------------------------
// Table view: one line per leaf, arrays of scalars inline.

bool scalar_array(const Json& j) {
  return j.is_array() && std::all_of(j.begin(), j.end(), [](const Json& e) { return !e.is_structured(); });
}

void render(const Json& j, const std::string& path, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) render(value, path.empty() ? key : path + "." + key, out);
  } else if (j.is_array() && !scalar_array(j)) {
    for (std::size_t i = 0; i < j.size(); ++i) render(j[i], path + "[" + std::to_string(i) + "]", out);
  } else if (j.is_array()) {
    out << path << ":";
    for (const auto& e : j) out << " " << e.dump();
    out << "\n";
  } else {
    out << path << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

std::string format_report(const Json& report, const std::string& format) {
  if (format == "table") {
    std::ostringstream ss;
    render(report, "", ss);
    return ss.str();
  }
  return report.dump(2) + "\n";
}

int exit_for(const Error& e) { return e.kind() == ErrorKind::InternalInconsistency ? kNegative : kUsage; }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact discrete-derivative calculus over finite fields", "dcalc"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--field", o.field, "Field JSON, inline or a file path");
    sub->add_option("--seed", o.seed, "PRNG seed");
    sub->add_option("--trials", o.trials, "Number of random trials");
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "table"}));
    sub->add_option("--out", o.out, "Write the report to this file");
  };
  auto field_params = [&](CLI::App* sub) {
    sub->add_option("--p", o.p, "Characteristic");
    sub->add_option("--n", o.n, "Extension degree")->check(CLI::Range(1, 64));
  };
  auto function_opt = [&](CLI::App* sub, const char* help) {
    sub->add_option("--function", o.functions, help)->take_all();
  };
  auto dirs_opt = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--dirs", o.dirs, "Directions as element indices, comma separated")->delimiter(',');
    if (required) opt->required();
  };

  auto* lemma = app.add_subcommand("lemma-verify", "Check the repeated-derivative identity on random functions");
  common(lemma);
  field_params(lemma);
  auto* cen = app.add_subcommand("census", "Subset-sum census with closed forms and identities");
  common(cen);
  cen->add_option("--p", o.p, "Prime");
  cen->add_flag("--star", o.star, "Ground set F_p^* instead of F_p");
  cen->add_option("--ring", o.ring, "Census over Z/NZ instead");
  auto* gap = app.add_subcommand("gapn", "Generalized APN check");
  common(gap);
  function_opt(gap, "Function (JSON, @file or polynomial string)");
  auto* der = app.add_subcommand("derive", "Higher-order derivative along directions");
  common(der);
  function_opt(der, "Function (JSON, @file or polynomial string)");
  dirs_opt(der, true);
  auto* mat = app.add_subcommand("match", "Solve Delta_alpha F = Delta_beta G for G");
  common(mat);
  mat->add_option("--f", o.f, "F (JSON, @file or polynomial string)")->required();
  mat->add_option("--alpha", o.alpha, "First direction")->required();
  mat->add_option("--beta", o.beta, "Second direction")->required();
  auto* chk = app.add_subcommand("match-check", "Check Delta_alpha F = Delta_beta G");
  common(chk);
  chk->add_option("--f", o.f, "F")->required();
  chk->add_option("--g", o.g, "G")->required();
  chk->add_option("--alpha", o.alpha, "First direction")->required();
  chk->add_option("--beta", o.beta, "Second direction")->required();
  auto* anti = app.add_subcommand("antideriv", "Find H with Delta_alpha_i H = D_i");
  common(anti);
  function_opt(anti, "D_i, one per direction");
  dirs_opt(anti, true);
  auto* props = app.add_subcommand("props-verify", "Check elementary derivative identities on random functions");
  common(props);
  field_params(props);
  auto* info = app.add_subcommand("field-info", "Describe a field");
  common(info);
  field_params(info);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    Outcome result;
    if (*lemma) result = lemma_verify(o);
    else if (*cen) result = census(o);
    else if (*gap) result = gapn(o);
    else if (*der) result = derive(o);
    else if (*mat) result = match(o);
    else if (*chk) result = match_check(o);
    else if (*anti) result = antideriv(o);
    else if (*props) result = props_verify(o);
    else result = field_info(o);

    const std::string text = format_report(result.report, o.format);
    if (o.out.empty()) {
      out << text;
    } else {
      std::ofstream file(o.out, std::ios::binary);
      file << text;
      if (!file) {
        err << "error: cannot write " << o.out << "\n";
        return kUsage;
      }
    }
    return result.code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace dcalc::cli
