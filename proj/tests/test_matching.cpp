#include "doctest.h"

#include <array>

#include "dcalc/error.hpp"
#include "dcalc/matching.hpp"
#include "dcalc/poly_parser.hpp"
#include "dcalc/random.hpp"
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

FunctionTable poly(const Field& f, const char* text) { return to_table(parse_poly(f, text)); }

// Scalar ANF over the identity basis of F_9 from (i1, i2, coefficient) terms.
MultivariateAnf scalar_anf(const Basis& basis, std::initializer_list<std::array<std::uint32_t, 3>> terms) {
  MultivariateAnf zero = MultivariateAnf::zero(basis, 1);
  auto coeffs = zero.components();
  for (const auto& t : terms) coeffs[0][zero.exponent_index(std::vector<std::uint32_t>{t[0], t[1]})] = t[2];
  return MultivariateAnf(basis, coeffs);
}

// Coset-constant function: value depends only on x modulo F_p alpha.
FunctionTable coset_constant(const Field& f, Element alpha, Rng& rng) {
  std::vector<Element> values(f.order());
  std::vector<bool> done(f.order(), false);
  for (std::uint32_t x = 0; x < f.order(); ++x) {
    if (done[x]) continue;
    const Element v = rng.element(f);
    Element y{x};
    for (std::uint32_t i = 0; i < f.p(); ++i, y = f.add(y, alpha)) {
      values[y.index] = v;
      done[y.index] = true;
    }
  }
  return FunctionTable(f, values);
}

}  // namespace

TEST_CASE("single-direction antiderivatives") {
  const Field f3 = make_field(3, 1);
  const FunctionTable d = poly(f3, "2*x + 1");
  CHECK(antiderivative_exists(d, {1}));
  const AntiderivativeResult r = construct_antiderivative(d, {1});
  REQUIRE(r.ok());
  CHECK(oracle::raw(*r.h) == std::vector<std::uint32_t>{0, 1, 1});

  const FunctionTable sq = poly(f3, "x^2");
  CHECK_FALSE(antiderivative_exists(sq, {1}));
  const AntiderivativeResult bad = construct_antiderivative(sq, {1});
  REQUIRE_FALSE(bad.ok());
  CHECK(bad.failure->coset == std::vector<Element>{{0}, {1}, {2}});
  CHECK(bad.failure->coset_sum == Element{2});

  CHECK(construct_antiderivative(FunctionTable::zero(f3), {1}).h->is_zero());
  CHECK(antiderivative_exists(FunctionTable::zero(f3), {2}));
  CHECK(kind_of([&] { antiderivative_exists(sq, {0}); }) == ErrorKind::ZeroDirection);

  Rng rng(6);
  for (auto [p, n] : std::vector<std::pair<std::uint32_t, int>>{{3, 2}, {5, 1}, {5, 2}, {2, 4}}) {
    const Field f = make_field(p, n);
    for (int t = 0; t < 30; ++t) {
      const FunctionTable g = rng.table(f);
      const Element alpha = rng.nonzero(f);
      const FunctionTable df = derivative(g, alpha);
      REQUIRE(antiderivative_exists(df, alpha));
      const AntiderivativeResult h = construct_antiderivative(df, alpha);
      REQUIRE(h.ok());
      REQUIRE(derivative(*h.h, alpha) == df);
      // H and G differ by a coset-constant function.
      CHECK(derivative(*h.h - g, alpha).is_zero());
    }
  }
}

TEST_CASE("p-th antiderivative and kernel relation") {
  const Field f3 = make_field(3, 1);
  CHECK_FALSE(pth_antiderivative_exists(poly(f3, "x"), {1}));
  Rng rng(10);
  const Field f9 = make_field(3, 2);
  for (int t = 0; t < 30; ++t) {
    const Element alpha = rng.nonzero(f9);
    CHECK(pth_antiderivative_exists(coset_constant(f9, alpha, rng), alpha));
    CHECK(pth_antiderivative_exists(generalized_differential(rng.table(f9), alpha), alpha));
    const FunctionTable g = rng.table(f9);
    CHECK(kernel_relation_check(g + coset_constant(f9, alpha, rng), g, alpha));
    CHECK(kernel_relation_check(g, g, alpha));
  }
  const FunctionTable g = Rng(1).table(f3);
  CHECK_FALSE(kernel_relation_check(g + poly(f3, "x"), g, {1}));
  CHECK(kind_of([&] { pth_antiderivative_exists(g, {0}); }) == ErrorKind::ZeroDirection);
}

TEST_CASE("multi-direction antiderivatives") {
  Rng rng(12);
  const Field f27 = make_field(3, 3);
  const DirectionList alphas(f27, {{1}, f27.t()});
  for (int t = 0; t < 5; ++t) {
    const FunctionTable h = rng.table(f27);
    const std::vector<FunctionTable> ds{derivative(h, {1}), derivative(h, f27.t())};
    CHECK(salagean_conditions(ds, alphas).all());
    const AntiderivativeResult r = construct_multi_antiderivative(ds, alphas);
    REQUIRE(r.ok());
    CHECK(derivative(*r.h, {1}) == ds[0]);
    CHECK(derivative(*r.h, f27.t()) == ds[1]);
    // Pinned to zero at index 0, the smallest member of its orbit.
    CHECK(r.h->values()[0] == Element{0});
  }

  // Perturbing one cell breaks the symmetry condition.
  const FunctionTable h = rng.table(f27);
  std::vector<FunctionTable> ds{derivative(h, {1}), derivative(h, f27.t())};
  std::vector<Element> v = ds[1].values();
  v[4] = f27.add(v[4], {1});
  v[5] = f27.sub(v[5], {1});
  ds[1] = FunctionTable(f27, v);
  const ConditionReport c = salagean_conditions(ds, alphas);
  CHECK_FALSE(c.all());
  const AntiderivativeResult bad = construct_multi_antiderivative(ds, alphas);
  CHECK_FALSE(bad.ok());
  REQUIRE(bad.failure.has_value());

  // One direction: same equations as the coset chain.
  const Field f9 = make_field(3, 2);
  const FunctionTable d = derivative(rng.table(f9), {4});
  const AntiderivativeResult one = construct_multi_antiderivative({d}, DirectionList(f9, {{4}}));
  REQUIRE(one.ok());
  CHECK(derivative(*one.h, {4}) == d);
  CHECK(derivative(*one.h - *construct_antiderivative(d, {4}).h, {4}).is_zero());

  const FunctionTable sq = poly(f9, "x^2");
  const ConditionReport xi = salagean_conditions({sq, sq}, DirectionList(f9, {{1}, {3}}));
  CHECK_FALSE(xi.xiong_per_direction[0]);

  CHECK(kind_of([&] { salagean_conditions({sq, sq}, DirectionList(f9, {{1}, {2}})); }) ==
        ErrorKind::DependentDirections);
  CHECK(kind_of([&] { salagean_conditions({sq}, DirectionList(f9, {{1}, {3}})); }) == ErrorKind::LengthMismatch);
  // Pairwise independent but jointly dependent directions are rejected too.
  CHECK(kind_of([&] { salagean_conditions({sq, sq, sq}, DirectionList(f9, {{1}, {3}, {4}})); }) ==
        ErrorKind::DependentDirections);
}

TEST_CASE("degree criterion agrees with antiderivative existence") {
  const Field f9 = make_field(3, 2);
  const Basis id = Basis::identity(f9);
  const MultivariateAnf ex = scalar_anf(id, {{2, 1, 1}, {0, 2, 1}});
  CHECK_FALSE(degree_criterion(ex, 0));
  CHECK_FALSE(degree_criterion(ex, 1));
  CHECK(degree_criterion(MultivariateAnf::zero(id, 2), 0));

  Rng rng(14);
  for (auto [p, n] : std::vector<std::pair<std::uint32_t, int>>{{3, 2}, {5, 2}, {3, 3}}) {
    const Field f = make_field(p, n);
    const Basis basis = make_basis_with(f, rng.nonzero(f));
    for (int t = 0; t < 40; ++t) {
      // Mix arbitrary functions with derivatives so both answers occur.
      const int axis = static_cast<int>(rng.below(n));
      const FunctionTable table = t % 2 ? rng.table(f) : derivative(rng.table(f), basis.element(axis));
      REQUIRE(antiderivative_exists(table, basis.element(axis)) == degree_criterion(table_to_anf(table, basis), axis));
    }
  }
}

TEST_CASE("worked matching example") {
  const Field f9 = make_field(3, 2);
  const Basis id = Basis::identity(f9);
  const MultivariateAnf f = scalar_anf(id, {{2, 1, 1}, {0, 2, 1}});
  const MultivariateAnf expected_g = scalar_anf(id, {{0, 1, 1}, {1, 1, 2}, {0, 2, 2}, {1, 2, 1}});

  const MatchResult r = solve_matching_g(f);
  REQUIRE(r.ok());
  CHECK(r.verified);
  CHECK(r.g->m() == 1);
  CHECK(*r.g == expected_g);

  const MultivariateAnf shared = scalar_anf(id, {{1, 1, 2}, {0, 1, 1}});
  CHECK(anf_derivative(f, 0) == shared);
  CHECK(anf_derivative(expected_g, 1) == shared);
  CHECK(higher_derivative(anf_to_table(f), DirectionList::repeated(f9, {3}, 2)) ==
        FunctionTable::constant(f9, {2}));
  CHECK(fo_matching_check(f, expected_g, id));
  CHECK(vardeg_lemma_check(f, expected_g, 0, 1));

  // The example f matches along e_1/e_2 although it is no derivative along e_2.
  CHECK_FALSE(antiderivative_exists(anf_to_table(f), {3}));

  // One perturbed coefficient breaks both the coefficient check and the tables.
  auto coeffs = expected_g.components();
  coeffs[0][expected_g.exponent_index(std::vector<std::uint32_t>{1, 1})] = 1;
  const MultivariateAnf bent(id, coeffs);
  CHECK_FALSE(fo_matching_check(f, bent, id));
  CHECK_FALSE(derivative(anf_to_table(f), {1}) == derivative(anf_to_table(bent), {3}));

  const MultivariateAnf zero = MultivariateAnf::zero(id, 1);
  CHECK(fo_matching_check(zero, zero, id));
  CHECK(vardeg_lemma_check(zero, zero, 0, 1));
  const MatchResult z = solve_matching_g(zero);
  REQUIRE(z.ok());
  CHECK(*z.g == zero);

  const MatchResult none = solve_matching_g(scalar_anf(id, {{1, 2, 1}}));
  CHECK_FALSE(none.ok());
  REQUIRE(none.witness.has_value());
  CHECK(none.witness->j == 0);

  CHECK(kind_of([&] { vardeg_lemma_check(f, bent, 0, 1); }) == ErrorKind::NotApplicable);
  CHECK(kind_of([&] { fo_matching_check(f, scalar_anf(make_basis_with(f9, {1}, Element{4}), {}), id); }) ==
        ErrorKind::BasisMismatch);
  CHECK(kind_of([&] { solve_matching_g(table_to_anf(poly(make_field(5, 1), "x"), Basis::identity(make_field(5, 1)))); }) ==
        ErrorKind::InvalidArgument);
}

TEST_CASE("matching system layout") {
  const Field f9 = make_field(3, 2);
  const Basis id = Basis::identity(f9);
  const MatchingSystem sys = build_matching_system(scalar_anf(id, {{2, 1, 1}, {0, 2, 1}}));
  CHECK(sys.triangular == std::vector<std::vector<std::uint32_t>>{{1, 1}, {0, 2}});
  CHECK(sys.free_indices == std::vector<std::size_t>{0, 1, 2});
  for (const auto& b : sys.f_boundary) CHECK(b.value == 0);
}

TEST_CASE("solver soundness and completeness on random inputs") {
  Rng rng(15);
  for (auto [p, n] : std::vector<std::pair<std::uint32_t, int>>{{3, 2}, {5, 2}, {3, 3}}) {
    const Field f = make_field(p, n);
    const Element alpha = rng.nonzero(f);
    Element beta = rng.nonzero(f);
    while (!independent_over_prime_field(f, std::vector<Element>{alpha, beta})) beta = rng.nonzero(f);
    const Basis basis = make_basis_with(f, alpha, beta);
    for (int t = 0; t < 25; ++t) {
      // Completeness: F built from some G0 always matches. G0 = Delta_alpha K
      // guarantees Delta_beta G0 has an antiderivative along alpha.
      const FunctionTable g0 = derivative(rng.table(f), alpha);
      const AntiderivativeResult fr = construct_antiderivative(derivative(g0, beta), alpha);
      REQUIRE(fr.ok());
      const MultivariateAnf fa = table_to_anf(*fr.h, basis);
      const MatchResult r = solve_matching_g(fa);
      REQUIRE(r.ok());
      CHECK(r.verified);
      CHECK(derivative(anf_to_table(fa), alpha) == derivative(anf_to_table(*r.g), beta));
      // The solver's G differs from G0 by something killed by Delta_beta.
      CHECK(derivative(anf_to_table(*r.g) - g0, beta).is_zero());
      CHECK(fo_matching_check(fa, *r.g, basis));
      CHECK(vardeg_lemma_check(fa, *r.g, 0, 1));
      CHECK(solve_matching_g(fa).g == r.g);

      // Arbitrary F: the solver succeeds exactly when some G exists.
      const MultivariateAnf arbitrary = table_to_anf(rng.table(f), basis);
      const MatchResult ar = solve_matching_g(arbitrary);
      const bool exists = antiderivative_exists(derivative(anf_to_table(arbitrary), alpha), beta);
      CHECK(ar.ok() == exists);
      CHECK(ar.witness.has_value() != exists);
    }
  }
}
