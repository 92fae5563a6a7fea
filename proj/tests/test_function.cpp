#include "doctest.h"

#include "dcalc/derivative.hpp"
#include "dcalc/error.hpp"
#include "dcalc/poly_parser.hpp"
#include "dcalc/random.hpp"
#include "dcalc/serialize.hpp"
#include "oracles.hpp"

using namespace dcalc;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::InvalidArgument;
}

std::size_t parse_position(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const ParseError& e) {
    return e.position();
  }
  FAIL("no parse error raised");
  return 0;
}

// x1^2 x2 + x2^2 over F_9 in the identity basis, as a table.
FunctionTable example_f(const Field& f9) {
  const Basis id = Basis::identity(f9);
  return FunctionTable::from(f9, [&](Element x) {
    const auto c = id.coords(x);
    const std::uint32_t v = (c[0] * c[0] * c[1] + c[1] * c[1]) % 3;
    return Element{v};
  });
}

}  // namespace

TEST_CASE("FunctionTable validation and arithmetic") {
  const Field f3 = make_field(3, 1);
  CHECK(kind_of([&] { FunctionTable(f3, {{0}, {1}}); }) == ErrorKind::LengthMismatch);
  CHECK(kind_of([&] { FunctionTable(f3, {{0}, {1}, {3}}); }) == ErrorKind::FieldMismatch);
  const FunctionTable a = oracle::make_table(f3, {0, 1, 2});
  const FunctionTable b = oracle::make_table(f3, {2, 2, 2});
  CHECK(oracle::raw(a + b) == std::vector<std::uint32_t>{2, 0, 1});
  CHECK(oracle::raw(a - b) == std::vector<std::uint32_t>{1, 2, 0});
  CHECK(oracle::raw(translate(a, {1})) == std::vector<std::uint32_t>{1, 2, 0});
  CHECK(kind_of([&] { (void)(a + FunctionTable::zero(make_field(5, 1))); }) == ErrorKind::FieldMismatch);
}

TEST_CASE("univariate interpolation") {
  const Field f3 = make_field(3, 1);
  CHECK(interpolate_univariate(FunctionTable::constant(f3, {2})).coeffs() == std::vector<Element>{{2}});
  CHECK(interpolate_univariate(oracle::make_table(f3, {0, 1, 1})).coeffs() == std::vector<Element>{{0}, {0}, {1}});
  CHECK(interpolate_univariate(FunctionTable::zero(f3)).degree() == -1);

  const Field f9 = make_field(3, 2);
  const UnivariatePoly x2(f9, {{0}, {0}, {1}});
  CHECK(evaluate_univariate(x2, f9.t()) == Element{2});
  const UnivariatePoly frob(f9, std::vector<Element>(10, Element{0}));
  std::vector<Element> c(10, Element{0});
  c[9] = {1};
  const UnivariatePoly xq(f9, c);
  CHECK(to_table(xq) == FunctionTable::from(f9, [](Element x) { return x; }));
  CHECK(frob.degree() == -1);

  Rng rng(11);
  for (auto [p, n] : std::vector<std::pair<std::uint32_t, int>>{{2, 3}, {3, 2}, {5, 2}, {3, 4}, {7, 2}, {2, 6}}) {
    const Field f = make_field(p, n);
    const auto k = oracle::naive(f);
    for (int t = 0; t < 30; ++t) {
      const FunctionTable table = rng.table(f);
      const UnivariatePoly poly = interpolate_univariate(table);
      CHECK(poly.degree() < static_cast<int>(f.order()));
      // Evaluate by the naive power sum, not Horner.
      for (std::uint32_t x = 0; x < f.order(); ++x) {
        std::uint32_t acc = 0;
        for (std::size_t d = 0; d < poly.coeffs().size(); ++d) acc = k.add(acc, k.mul(poly.coeffs()[d].index, k.pow(x, d)));
        REQUIRE(acc == table[x].index);
      }
    }
  }
}

TEST_CASE("ANF of the worked example") {
  const Field f9 = make_field(3, 2);
  const Basis id = Basis::identity(f9);
  const MultivariateAnf anf = table_to_anf(example_f(f9), id);
  CHECK(anf.m() == 2);
  for (std::size_t idx = 0; idx < anf.monomials(); ++idx) {
    const auto e = anf.exponents(idx);
    const std::uint32_t want = (e == std::vector<std::uint32_t>{2, 1} || e == std::vector<std::uint32_t>{0, 2}) ? 1 : 0;
    CHECK(anf.component(0)[idx] == want);
    CHECK(anf.component(1)[idx] == 0);
  }
  CHECK(degree_in_variable(anf, 0) == 2);
  CHECK(degree_in_variable(anf, 1) == 2);
  CHECK(degree_in_variable(anf_derivative(anf, 0), 0) == 1);
  CHECK_FALSE(degree_in_variable(MultivariateAnf::zero(id, 1), 0).has_value());
  CHECK(anf_to_table(anf) == example_f(f9));
}

TEST_CASE("ANF round trips and evaluation") {
  Rng rng(5);
  for (auto [p, n] : std::vector<std::pair<std::uint32_t, int>>{{3, 2}, {5, 2}, {3, 3}, {2, 4}, {7, 2}}) {
    const Field f = make_field(p, n);
    for (int t = 0; t < 20; ++t) {
      const FunctionTable table = rng.table(f);
      const Basis basis = make_basis_with(f, rng.nonzero(f));
      const MultivariateAnf anf = table_to_anf(table, basis);
      REQUIRE(anf_to_table(anf) == table);
      for (std::uint32_t x = 0; x < f.order(); ++x) {
        const auto point = basis.coords({x});
        const auto want = basis.coords(table[x]);
        for (int c = 0; c < anf.m(); ++c) {
          REQUIRE(anf.evaluate(c, point) == want[c]);
          REQUIRE(oracle::eval_anf(anf.components()[c], p, n, point) == want[c]);
        }
      }
    }
  }
}

TEST_CASE("ANF derivative matches the table derivative") {
  Rng rng(9);
  for (auto [p, n] : std::vector<std::pair<std::uint32_t, int>>{{3, 2}, {5, 2}, {3, 3}}) {
    const Field f = make_field(p, n);
    const Basis basis = Basis::identity(f);
    for (int t = 0; t < 20; ++t) {
      const FunctionTable table = rng.table(f);
      const MultivariateAnf anf = table_to_anf(table, basis);
      for (int axis = 0; axis < n; ++axis) {
        const MultivariateAnf d = anf_derivative(anf, axis);
        REQUIRE(anf_to_table(d) == derivative(table, basis.element(axis)));
        for (int c = 0; c < anf.m(); ++c) {
          const auto before = degree_in_variable(anf, axis, c);
          const auto after = degree_in_variable(d, axis, c);
          if (!before || *before == 0) CHECK_FALSE(after.has_value());
          else CHECK(after.value_or(-1) <= *before - 1);
        }
      }
    }
  }
}

TEST_CASE("distinct ANFs evaluate differently") {
  const Field f = make_field(3, 2);
  const Basis id = Basis::identity(f);
  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    std::vector<std::vector<std::uint32_t>> a(1, std::vector<std::uint32_t>(9)), b;
    for (auto& c : a[0]) c = static_cast<std::uint32_t>(rng.below(3));
    b = a;
    const auto idx = rng.below(9);
    b[0][idx] = (b[0][idx] + 1 + static_cast<std::uint32_t>(rng.below(2))) % 3;
    CHECK_FALSE(anf_to_table(MultivariateAnf(id, a)) == anf_to_table(MultivariateAnf(id, b)));
  }
}

TEST_CASE("component functions") {
  const Field f9 = make_field(3, 2);
  const Basis id = Basis::identity(f9);
  const MultivariateAnf anf = table_to_anf(Rng(1).table(f9), id);
  const MultivariateAnf e2 = component_function(anf, ComponentSelector::standard(2, 1));
  CHECK(std::vector<std::uint32_t>(e2.component(0).begin(), e2.component(0).end()) == anf.components()[1]);

  const MultivariateAnf twice(id, {anf.components()[0], anf.components()[0]});
  const MultivariateAnf zero = component_function(twice, ComponentSelector{{1, 2}});
  CHECK(zero == MultivariateAnf::zero(id, 1));

  CHECK(kind_of([&] { component_function(anf, ComponentSelector{{0, 0}}); }) == ErrorKind::ZeroMu);
  CHECK(kind_of([&] { component_function(anf, ComponentSelector{{1}}); }) == ErrorKind::LengthMismatch);
}

TEST_CASE("polynomial strings") {
  const Field f9 = make_field(3, 2);
  CHECK(parse_poly(f9, "x^2").coeffs() == std::vector<Element>{{0}, {0}, {1}});
  CHECK(parse_poly(f9, " 2*x + 1 ").coeffs() == std::vector<Element>{{1}, {2}});
  CHECK(parse_poly(f9, "g*x").coeffs() == std::vector<Element>{{0}, {3}});
  CHECK(parse_poly(f9, "g^2").coeffs() == std::vector<Element>{{2}});
  CHECK(parse_poly(f9, "4").coeffs() == std::vector<Element>{{1}});
  CHECK(parse_poly(f9, "x + x + x").degree() == -1);
  CHECK(parse_poly(f9, "x^9").coeffs() == std::vector<Element>{{0}, {1}});

  CHECK(parse_position([&] { parse_poly(f9, "x^^2"); }) == 2);
  CHECK(parse_position([&] { parse_poly(f9, "x++1"); }) == 2);
  CHECK(parse_position([&] { parse_poly(f9, "2**x"); }) == 2);
  CHECK(parse_position([&] { parse_poly(f9, ""); }) == 0);
  CHECK(parse_position([&] { parse_poly(f9, "x + y"); }) == 4);
  CHECK(kind_of([&] { parse_poly(f9, "99999999999999999999999"); }) == ErrorKind::ParseError);
}

TEST_CASE("function JSON forms") {
  const Field f3 = make_field(3, 1);
  const Field f9 = make_field(3, 2);
  auto parse = [](const Field& f, const char* text) { return io::parse_function_text(f, text); };

  CHECK(oracle::raw(parse(f3, R"j({"table":[0,1,1]})j").table) == std::vector<std::uint32_t>{0, 1, 1});
  CHECK(oracle::raw(parse(f3, R"j({"poly":[[0],[0],[1]]})j").table) == std::vector<std::uint32_t>{0, 1, 1});
  CHECK(oracle::raw(parse(f3, R"j({"poly":[0,0,1]})j").table) == std::vector<std::uint32_t>{0, 1, 1});
  CHECK(oracle::raw(parse(f3, R"j({"poly":"x^2"})j").table) == std::vector<std::uint32_t>{0, 1, 1});
  CHECK(oracle::raw(parse(f3, "x^2").table) == std::vector<std::uint32_t>{0, 1, 1});

  const auto anf = parse(f9, R"j({"anf":{"basis":[[1,0],[0,1]],"components":[{"(2,1)":1,"(0,2)":1}]}})j");
  REQUIRE(anf.anf.has_value());
  CHECK(anf.table == example_f(f9));
  CHECK(io::anf_to_json(*anf.anf).dump() ==
        R"j({"anf":{"basis":[[1,0],[0,1]],"components":[{"(2,1)":1,"(0,2)":1}]}})j");
  CHECK(io::table_to_json(anf.table).dump() == R"j({"table":[0,0,0,1,2,2,1,0,0]})j");
  CHECK(io::poly_to_json(UnivariatePoly(f3, {{0}, {0}, {1}})).dump() == R"j({"poly":[[0],[0],[1]]})j");

  const char* bad[] = {
      R"j({"table":[0,1]})j",
      R"j({"table":[0,1,3]})j",
      R"j({"table":[0,1,"1"]})j",
      R"j({"table":[0,1,-1]})j",
      R"j({"table":[0,1,1.5]})j",
      R"j({"table":[0,1,1],"poly":[[1]]})j",
      R"j({"tabel":[0,1,1]})j",
      R"j({"poly":[[3]]})j",
      R"j({"poly":[[1,2]]})j",
      R"j({"poly":"x^^2"})j",
      R"j({"table":[0,1,1])j",
      R"j({"table":[0,1,1]}}")j",
      R"j({})j",
  };
  for (const char* text : bad) {
    CAPTURE(text);
    CHECK(kind_of([&] { parse(f3, text); }) == ErrorKind::ParseError);
  }
  const char* bad_anf[] = {
      R"j({"anf":{"basis":[[1,0],[0,1]],"components":[{"(2)":1}]}})j",
      R"j({"anf":{"basis":[[1,0],[0,1]],"components":[{"(2,1,0)":1}]}})j",
      R"j({"anf":{"basis":[[1,0],[0,1]],"components":[{"(3,0)":1}]}})j",
      R"j({"anf":{"basis":[[1,0],[0,1]],"components":[{"(a,0)":1}]}})j",
      R"j({"anf":{"basis":[[1,0],[0,1]],"components":[{"(1,0)":3}]}})j",
      R"j({"anf":{"basis":[[1,0],[0,1]],"components":[{"(1,0)":1,"( 1,0)":2}]}})j",
      R"j({"anf":{"basis":[[1,0]],"components":[{"(1,0)":1}]}})j",
      R"j({"anf":{"basis":[[1,0],[0,1]],"components":[{},{},{}]}})j",
      R"j({"anf":{"basis":[[1,0],[0,1]],"components":[]}})j",
      R"j({"anf":{"basis":[[1,0],[0,1]]}})j",
  };
  for (const char* text : bad_anf) {
    CAPTURE(text);
    CHECK(kind_of([&] { parse(f9, text); }) == ErrorKind::ParseError);
  }
  CHECK(kind_of([&] { parse(f9, R"j({"anf":{"basis":[[1,0],[2,0]],"components":[{}]}})j"); }) ==
        ErrorKind::DependentDirections);
}

TEST_CASE("exponent keys") {
  const std::vector<std::uint32_t> e{2, 1};
  CHECK(io::exponent_key(e) == "(2,1)");
  CHECK(io::parse_exponent_key("(2,1)", 2) == e);
  CHECK(io::parse_exponent_key(" ( 2 , 1 ) ", 2) == e);
  CHECK(kind_of([] { io::parse_exponent_key("2,1", 2); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { io::parse_exponent_key("(2,1", 2); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { io::parse_exponent_key("(2,1)x", 2); }) == ErrorKind::ParseError);
}
