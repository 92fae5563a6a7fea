#include "dcalc/matching.hpp"

#include <numeric>

#include "dcalc/error.hpp"

namespace dcalc {

namespace {

void require_nonzero(const Field& field, Element alpha) {
  if (!field.contains(alpha)) throw Error(ErrorKind::FieldMismatch, "direction outside the field");
  if (alpha == field.zero()) throw Error(ErrorKind::ZeroDirection, "direction must be nonzero");
}

inline constexpr std::uint32_t kMaxEliminationOrder = 1024;

// Layout helpers for exponent vectors (i_1, i_2, w) with w = (i_3..i_n).
struct ExponentLayout {
  std::uint32_t p;
  std::size_t w_count;  // p^(n-2)

  std::size_t index(std::uint32_t i1, std::uint32_t i2, std::size_t w) const { return i1 + p * (i2 + p * w); }
};

ExponentLayout layout_for(const MultivariateAnf& anf) {
  if (anf.n() < 2) throw Error(ErrorKind::InvalidArgument, "matching needs at least two coordinates (n >= 2)");
  std::size_t w_count = 1;
  for (int i = 2; i < anf.n(); ++i) w_count *= anf.p();
  return {anf.p(), w_count};
}

fp::Matrix binomials(std::uint32_t p) {
  fp::Matrix b(p, std::vector<std::uint32_t>(p, 0));
  for (std::uint32_t k = 0; k < p; ++k) {
    for (std::uint32_t j = 0; j <= k; ++j) b[k][j] = small_binomial_mod(k, j, p);
  }
  return b;
}

std::vector<std::uint32_t> w_exponents(std::size_t w, std::uint32_t p, int n) {
  return digits(static_cast<std::uint32_t>(w), p, n - 2);
}

// sum_{k=j+1}^{p-1} C(k, k-j) c_k, where c_k = coeffs[at(k)].
template <typename At>
std::uint32_t binomial_tail(const fp::Matrix& binom, std::span<const std::uint32_t> coeffs, std::uint32_t j,
                            std::uint32_t p, At at) {
  std::uint32_t acc = 0;
  for (std::uint32_t k = j + 1; k < p; ++k) acc = fp::add(acc, fp::mul(binom[k][k - j], coeffs[at(k)], p), p);
  return acc;
}

}  // namespace

bool antiderivative_exists(const FunctionTable& f, Element alpha) {
  require_nonzero(f.field(), alpha);
  return generalized_differential(f, alpha).is_zero();
}

AntiderivativeResult construct_antiderivative(const FunctionTable& d, Element alpha) {
  const Field& field = d.field();
  require_nonzero(field, alpha);
  std::vector<Element> h(field.order(), field.zero());
  std::vector<bool> visited(field.order(), false);
  std::vector<Element> coset(field.p());
  for (std::uint32_t r = 0; r < field.order(); ++r) {
    if (visited[r]) continue;
    Element x{r};
    Element sum = field.zero();
    for (std::uint32_t i = 0; i < field.p(); ++i) {
      coset[i] = x;
      visited[x.index] = true;
      sum = field.add(sum, d(x));
      const Element next = field.add(x, alpha);
      if (i + 1 < field.p()) h[next.index] = field.add(h[x.index], d(x));
      x = next;
    }
    if (sum != field.zero()) {
      NoAntiderivative failure;
      failure.reason = "D does not sum to zero on the coset of " + std::to_string(r);
      failure.coset = coset;
      failure.coset_sum = sum;
      return {std::nullopt, std::move(failure)};
    }
  }
  FunctionTable result(field, std::move(h));
  if (!(derivative(result, alpha) == d)) throw Error(ErrorKind::InternalInconsistency, "coset chain failed to verify");
  return {std::move(result), std::nullopt};
}

bool pth_antiderivative_exists(const FunctionTable& f, Element alpha) {
  require_nonzero(f.field(), alpha);
  return derivative(f, alpha).is_zero();
}

bool kernel_relation_check(const FunctionTable& f, const FunctionTable& g, Element alpha) {
  require_nonzero(f.field(), alpha);
  const bool same = derivative(f, alpha) == derivative(g, alpha);
  const bool in_kernel = derivative(f - g, alpha).is_zero();
  if (same != in_kernel) throw Error(ErrorKind::InternalInconsistency, "derivative is not additive");
  return same;
}

bool ConditionReport::all() const noexcept {
  for (bool b : xiong_per_direction) {
    if (!b) return false;
  }
  for (const auto& pc : symmetry_pairs) {
    if (!pc.holds) return false;
  }
  return true;
}

ConditionReport salagean_conditions(const std::vector<FunctionTable>& ds, const DirectionList& alphas) {
  if (ds.size() != alphas.size()) throw Error(ErrorKind::LengthMismatch, "need one function per direction");
  const Field& field = alphas.field();
  for (const auto& d : ds) {
    if (!(d.field() == field)) throw Error(ErrorKind::FieldMismatch, "functions and directions disagree on the field");
  }
  for (auto a : alphas.dirs()) require_nonzero(field, a);
  if (!independent_over_prime_field(field, alphas.dirs())) {
    throw Error(ErrorKind::DependentDirections, "directions are linearly dependent over F_p");
  }
  ConditionReport report;
  for (std::size_t i = 0; i < ds.size(); ++i) report.xiong_per_direction.push_back(antiderivative_exists(ds[i], alphas.dirs()[i]));
  for (std::size_t i = 0; i < ds.size(); ++i) {
    for (std::size_t j = i + 1; j < ds.size(); ++j) {
      const bool holds = derivative(ds[i], alphas.dirs()[j]) == derivative(ds[j], alphas.dirs()[i]);
      report.symmetry_pairs.push_back({i, j, holds});
    }
  }
  return report;
}

AntiderivativeResult construct_multi_antiderivative(const std::vector<FunctionTable>& ds, const DirectionList& alphas) {
  const ConditionReport conditions = salagean_conditions(ds, alphas);
  const Field& field = alphas.field();
  const std::uint32_t q = field.order();
  const std::uint32_t p = field.p();
  const auto n = static_cast<std::size_t>(field.n());
  if (q > kMaxEliminationOrder) {
    throw Error(ErrorKind::TooLarge, "elimination limited to fields of order <= " + std::to_string(kMaxEliminationOrder));
  }

  // Orbits of x -> x + alpha_i; each gets one pinned value.
  std::vector<std::uint32_t> parent(q);
  std::iota(parent.begin(), parent.end(), 0U);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto a : alphas.dirs()) {
    for (std::uint32_t x = 0; x < q; ++x) {
      const std::uint32_t u = find(x), v = find(field.add({x}, a).index);
      if (u != v) parent[std::max(u, v)] = std::min(u, v);
    }
  }

  fp::Matrix system;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    for (std::uint32_t x = 0; x < q; ++x) {
      std::vector<std::uint32_t> row(q + n, 0);
      const std::uint32_t shifted = field.add({x}, alphas.dirs()[i]).index;
      row[shifted] = fp::add(row[shifted], 1, p);
      row[x] = fp::sub(row[x], 1, p);
      const auto rhs = field.coeffs(ds[i][x]);
      for (std::size_t c = 0; c < n; ++c) row[q + c] = rhs[c];
      system.push_back(std::move(row));
    }
  }
  for (std::uint32_t x = 0; x < q; ++x) {
    if (find(x) != x) continue;
    std::vector<std::uint32_t> row(q + n, 0);
    row[x] = 1;
    system.push_back(std::move(row));
  }

  const fp::Reduction red = fp::reduce(std::move(system), q, p);
  for (std::size_t r = red.rank; r < red.rows.size(); ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (red.rows[r][q + c] != 0) {
        NoAntiderivative failure;
        failure.reason = "the derivative equations are inconsistent";
        for (std::size_t i = 0; i < conditions.xiong_per_direction.size() && !failure.direction && !failure.pair; ++i) {
          if (!conditions.xiong_per_direction[i]) failure.direction = i;
        }
        for (const auto& pc : conditions.symmetry_pairs) {
          if (!pc.holds && !failure.direction && !failure.pair) failure.pair = std::make_pair(pc.i, pc.j);
        }
        return {std::nullopt, std::move(failure)};
      }
    }
  }
  if (red.rank != q) throw Error(ErrorKind::InternalInconsistency, "pinned system is not of full rank");

  std::vector<Element> h(q);
  std::vector<std::uint32_t> coords(n);
  for (std::size_t r = 0; r < red.rank; ++r) {
    for (std::size_t c = 0; c < n; ++c) coords[c] = red.rows[r][q + c];
    h[red.pivots[r]] = field.from_coeffs(coords);
  }
  FunctionTable result(field, std::move(h));
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (!(derivative(result, alphas.dirs()[i]) == ds[i])) {
      throw Error(ErrorKind::InternalInconsistency, "solution fails derivative equation " + std::to_string(i));
    }
  }
  return {std::move(result), std::nullopt};
}

bool degree_criterion(const MultivariateAnf& anf, int axis) {
  const int top = static_cast<int>(anf.p()) - 1;
  for (int c = 0; c < anf.m(); ++c) {
    const auto deg = degree_in_variable(anf, axis, c);
    if (deg && *deg >= top) return false;
  }
  return true;
}

FoMatchingReport fo_matching_report(const MultivariateAnf& f, const MultivariateAnf& g, const Basis& basis) {
  if (!(f.basis() == basis) || !(g.basis() == basis)) {
    throw Error(ErrorKind::BasisMismatch, "both ANFs must be written in the given basis");
  }
  if (f.m() != g.m()) throw Error(ErrorKind::LengthMismatch, "ANFs have different numbers of components");
  const ExponentLayout lay = layout_for(f);
  const std::uint32_t p = lay.p;
  const fp::Matrix binom = binomials(p);
  FoMatchingReport report;
  for (int c = 0; c < f.m(); ++c) {
    const auto fc = f.component(c);
    const auto gc = g.component(c);
    for (std::size_t w = 0; w < lay.w_count; ++w) {
      for (std::uint32_t i1 = 0; i1 + 1 < p; ++i1) {
        for (std::uint32_t i2 = 0; i2 + 1 < p; ++i2) {
          const std::uint32_t lhs = binomial_tail(binom, fc, i1, p, [&](std::uint32_t k) { return lay.index(k, i2, w); });
          const std::uint32_t rhs = binomial_tail(binom, gc, i2, p, [&](std::uint32_t k) { return lay.index(i1, k, w); });
          report.interior = report.interior && lhs == rhs;
        }
      }
      for (std::uint32_t j = 0; j + 1 < p; ++j) {
        const std::uint32_t fb = binomial_tail(binom, fc, j, p, [&](std::uint32_t k) { return lay.index(k, p - 1, w); });
        const std::uint32_t gb = binomial_tail(binom, gc, j, p, [&](std::uint32_t k) { return lay.index(p - 1, k, w); });
        report.f_boundary = report.f_boundary && fb == 0;
        report.g_boundary = report.g_boundary && gb == 0;
      }
    }
  }
  return report;
}

bool fo_matching_check(const MultivariateAnf& f, const MultivariateAnf& g, const Basis& basis) {
  return fo_matching_report(f, g, basis).holds();
}

MatchingSystem build_matching_system(const MultivariateAnf& f) {
  const ExponentLayout lay = layout_for(f);
  const std::uint32_t p = lay.p;
  const fp::Matrix binom = binomials(p);
  MatchingSystem sys{f.basis(), f, {}, {}, {}, {}};
  sys.triangular.assign(p - 1, std::vector<std::uint32_t>(p - 1, 0));
  for (std::uint32_t j = 0; j + 1 < p; ++j) {
    for (std::uint32_t k = j + 1; k < p; ++k) sys.triangular[j][k - 1] = binom[k][k - j];
  }
  for (int c = 0; c < f.m(); ++c) {
    const auto fc = f.component(c);
    for (std::size_t w = 0; w < lay.w_count; ++w) {
      const auto wexp = w_exponents(w, p, f.n());
      for (std::uint32_t i1 = 0; i1 < p; ++i1) {
        MatchingBlock block{c, i1, wexp, std::vector<std::uint32_t>(p - 1, 0)};
        // Row i_1 = p-1 of Delta_{e_1} F is identically zero.
        if (i1 + 1 < p) {
          for (std::uint32_t j = 0; j + 1 < p; ++j) {
            block.rhs[j] = binomial_tail(binom, fc, i1, p, [&](std::uint32_t k) { return lay.index(k, j, w); });
          }
        }
        sys.blocks.push_back(std::move(block));
      }
      for (std::uint32_t j = 0; j + 1 < p; ++j) {
        const std::uint32_t value = binomial_tail(binom, fc, j, p, [&](std::uint32_t k) { return lay.index(k, p - 1, w); });
        sys.f_boundary.push_back({c, j, wexp, value});
      }
    }
  }
  for (std::size_t w = 0; w < lay.w_count; ++w) {
    for (std::uint32_t i1 = 0; i1 < p; ++i1) sys.free_indices.push_back(lay.index(i1, 0, w));
  }
  return sys;
}

MatchResult solve_matching_g(const MultivariateAnf& f) {
  const MatchingSystem sys = build_matching_system(f);
  const ExponentLayout lay = layout_for(f);
  const std::uint32_t p = lay.p;
  MatchResult result;
  for (const auto& b : sys.f_boundary) {
    if (b.value != 0) {
      result.witness = MatchWitness{b.component, b.j, b.w};
      return result;
    }
  }
  std::vector<std::vector<std::uint32_t>> g(static_cast<std::size_t>(f.m()), std::vector<std::uint32_t>(f.monomials(), 0));
  std::vector<std::uint32_t> unknown(p, 0);  // unknown[k] = g_(i_1, k, w)
  for (const auto& block : sys.blocks) {
    std::fill(unknown.begin(), unknown.end(), 0);
    for (std::uint32_t j = p - 1; j-- > 0;) {
      std::uint32_t acc = block.rhs[j];
      for (std::uint32_t k = j + 2; k < p; ++k) acc = fp::sub(acc, fp::mul(sys.triangular[j][k - 1], unknown[k], p), p);
      unknown[j + 1] = fp::mul(acc, fp::inverse(sys.triangular[j][j], p), p);
    }
    const std::size_t w = from_digits(block.w, p);
    for (std::uint32_t k = 1; k < p; ++k) g[static_cast<std::size_t>(block.component)][lay.index(block.i1, k, w)] = unknown[k];
  }
  MultivariateAnf g_anf(f.basis(), std::move(g));
  const Basis& basis = f.basis();
  result.verified = derivative(anf_to_table(f), basis.element(0)) == derivative(anf_to_table(g_anf), basis.element(1));
  if (!result.verified) throw Error(ErrorKind::InternalInconsistency, "solved G does not match the derivative of F");
  result.g = std::move(g_anf);
  return result;
}

bool vardeg_lemma_check(const MultivariateAnf& f, const MultivariateAnf& g, int i, int j) {
  if (!(f.basis() == g.basis())) throw Error(ErrorKind::BasisMismatch, "f and g use different bases");
  if (i == j) throw Error(ErrorKind::InvalidArgument, "the two axes must differ");
  const MultivariateAnf df = anf_derivative(f, i);
  const MultivariateAnf dg = anf_derivative(g, j);
  if (df.components() != dg.components()) {
    throw Error(ErrorKind::NotApplicable, "Delta_{e_i} f and Delta_{e_j} g differ");
  }
  const int top = static_cast<int>(f.p()) - 1;
  auto below_top = [top](std::optional<int> d) { return !d || *d < top; };
  for (int c = 0; c < f.m(); ++c) {
    const auto fj = degree_in_variable(df, j, c);
    const auto gj = degree_in_variable(dg, j, c);
    const auto gi = degree_in_variable(dg, i, c);
    const auto fi = degree_in_variable(df, i, c);
    if (fj != gj || !below_top(fj) || gi != fi || !below_top(gi)) return false;
  }
  return true;
}

}  // namespace dcalc
