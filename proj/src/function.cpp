#include "dcalc/function.hpp"

#include <algorithm>
#include <string>

#include "dcalc/error.hpp"

namespace dcalc {

namespace {

void require_same_field(const Field& a, const Field& b) {
  if (!(a == b)) throw Error(ErrorKind::FieldMismatch, "functions live over different fields");
}

std::size_t pow_size(std::uint32_t p, int n) {
  std::size_t r = 1;
  for (int i = 0; i < n; ++i) r *= p;
  return r;
}

// Applies the p x p matrix `m` along every axis-line of a dense p^n array.
void transform_axes(std::vector<std::uint32_t>& data, std::uint32_t p, int n, const fp::Matrix& m) {
  std::vector<std::uint32_t> line(p), out(p);
  std::size_t stride = 1;
  for (int axis = 0; axis < n; ++axis) {
    const std::size_t block = stride * p;
    for (std::size_t base = 0; base < data.size(); base += block) {
      for (std::size_t off = 0; off < stride; ++off) {
        for (std::uint32_t a = 0; a < p; ++a) line[a] = data[base + off + a * stride];
        for (std::uint32_t k = 0; k < p; ++k) {
          std::uint64_t acc = 0;
          for (std::uint32_t a = 0; a < p; ++a) acc += static_cast<std::uint64_t>(m[k][a]) * line[a];
          out[k] = static_cast<std::uint32_t>(acc % p);
        }
        for (std::uint32_t k = 0; k < p; ++k) data[base + off + k * stride] = out[k];
      }
    }
    stride = block;
  }
}

}  // namespace

// --- FunctionTable ----------------------------------------------------------

FunctionTable::FunctionTable(Field field, std::vector<Element> values)
    : field_(std::move(field)), values_(std::move(values)) {
  if (values_.size() != field_.order()) {
    throw Error(ErrorKind::LengthMismatch, "table has " + std::to_string(values_.size()) + " entries, field has " +
                                               std::to_string(field_.order()) + " elements");
  }
  for (auto v : values_) {
    if (!field_.contains(v)) throw Error(ErrorKind::FieldMismatch, "table value outside the field");
  }
}

FunctionTable FunctionTable::zero(const Field& field) { return constant(field, field.zero()); }

FunctionTable FunctionTable::constant(const Field& field, Element c) {
  return FunctionTable(field, std::vector<Element>(field.order(), c));
}

FunctionTable FunctionTable::from(const Field& field, const std::function<Element(Element)>& fn) {
  std::vector<Element> values(field.order());
  for (std::uint32_t k = 0; k < field.order(); ++k) values[k] = fn({k});
  return FunctionTable(field, std::move(values));
}

bool FunctionTable::is_zero() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](Element e) { return e.index == 0; });
}

FunctionTable operator+(const FunctionTable& a, const FunctionTable& b) {
  require_same_field(a.field(), b.field());
  std::vector<Element> out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = a.field().add(a[k], b[k]);
  return FunctionTable(a.field(), std::move(out));
}

FunctionTable operator-(const FunctionTable& a, const FunctionTable& b) {
  require_same_field(a.field(), b.field());
  std::vector<Element> out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = a.field().sub(a[k], b[k]);
  return FunctionTable(a.field(), std::move(out));
}

FunctionTable scale(Element c, const FunctionTable& f) {
  std::vector<Element> out(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) out[k] = f.field().mul(c, f[k]);
  return FunctionTable(f.field(), std::move(out));
}

FunctionTable translate(const FunctionTable& f, Element shift) {
  const Field& field = f.field();
  if (!field.contains(shift)) throw Error(ErrorKind::FieldMismatch, "shift outside the field");
  std::vector<Element> out(f.size());
  for (std::uint32_t k = 0; k < field.order(); ++k) out[k] = f(field.add({k}, shift));
  return FunctionTable(field, std::move(out));
}

// --- UnivariatePoly -------------------------------------------------------

UnivariatePoly::UnivariatePoly(Field field, std::vector<Element> coeffs) : field_(std::move(field)) {
  const std::uint32_t q = field_.order();
  coeffs_.assign(std::min<std::size_t>(coeffs.size(), q), field_.zero());
  for (std::size_t d = 0; d < coeffs.size(); ++d) {
    if (!field_.contains(coeffs[d])) throw Error(ErrorKind::FieldMismatch, "coefficient outside the field");
    const std::size_t folded = d < q ? d : ((d - 1) % (q - 1)) + 1;
    coeffs_[folded] = field_.add(coeffs_[folded], coeffs[d]);
  }
  while (!coeffs_.empty() && coeffs_.back() == field_.zero()) coeffs_.pop_back();
}

UnivariatePoly interpolate_univariate(const FunctionTable& table) {
  // Lagrange over F_q in closed form: F(x) = sum_a F(a) (1 - (x - a)^(q-1))
  // and (x - a)^(q-1) = sum_k a^(q-1-k) x^k. Hence c_0 = F(0) and
  // c_k = -sum_a F(a) a^(q-1-k) for k >= 1, with 0^0 = 1.
  const Field& field = table.field();
  const std::uint32_t q = field.order();
  std::vector<Element> power_sums(q - 1, field.zero());  // sum_{a != 0} F(a) a^j
  for (std::uint32_t a = 1; a < q; ++a) {
    const Element fa = table[a];
    if (fa == field.zero()) continue;
    Element term = fa;
    for (std::uint32_t j = 0; j + 1 < q; ++j) {
      power_sums[j] = field.add(power_sums[j], term);
      term = field.mul(term, {a});
    }
  }
  std::vector<Element> coeffs(q, field.zero());
  coeffs[0] = table[0];
  for (std::uint32_t k = 1; k < q; ++k) coeffs[k] = field.neg(power_sums[q - 1 - k]);
  coeffs[q - 1] = field.sub(coeffs[q - 1], table[0]);
  return UnivariatePoly(field, std::move(coeffs));
}

Element evaluate_univariate(const UnivariatePoly& poly, Element x) {
  const Field& field = poly.field();
  Element acc = field.zero();
  const auto& c = poly.coeffs();
  for (std::size_t d = c.size(); d-- > 0;) acc = field.add(field.mul(acc, x), c[d]);
  return acc;
}

FunctionTable to_table(const UnivariatePoly& poly) {
  return FunctionTable::from(poly.field(), [&](Element x) { return evaluate_univariate(poly, x); });
}

// --- MultivariateAnf ------------------------------------------------------

MultivariateAnf::MultivariateAnf(Basis basis, std::vector<std::vector<std::uint32_t>> components)
    : basis_(std::move(basis)), coeffs_(std::move(components)) {
  const std::size_t size = pow_size(p(), n());
  if (coeffs_.empty()) throw Error(ErrorKind::LengthMismatch, "ANF needs at least one component");
  for (const auto& comp : coeffs_) {
    if (comp.size() != size) throw Error(ErrorKind::LengthMismatch, "ANF component has wrong number of monomials");
    for (auto c : comp) {
      if (c >= p()) throw Error(ErrorKind::InvalidArgument, "ANF coefficient not in F_p");
    }
  }
}

MultivariateAnf MultivariateAnf::zero(const Basis& basis, int m) {
  const std::size_t size = pow_size(basis.field().p(), basis.dimension());
  return MultivariateAnf(basis, std::vector<std::vector<std::uint32_t>>(static_cast<std::size_t>(m),
                                                                          std::vector<std::uint32_t>(size, 0)));
}

std::size_t MultivariateAnf::exponent_index(std::span<const std::uint32_t> exps) const {
  if (exps.size() != static_cast<std::size_t>(n())) throw Error(ErrorKind::LengthMismatch, "exponent vector length");
  for (auto e : exps) {
    if (e >= p()) throw Error(ErrorKind::RangeError, "exponent must be below p");
  }
  return from_digits(exps, p());
}

std::vector<std::uint32_t> MultivariateAnf::exponents(std::size_t index) const {
  return digits(static_cast<std::uint32_t>(index), p(), n());
}

std::uint32_t MultivariateAnf::coefficient(int c, std::span<const std::uint32_t> exps) const {
  return component(c)[exponent_index(exps)];
}

std::uint32_t MultivariateAnf::evaluate(int c, std::span<const std::uint32_t> point) const {
  const std::uint32_t prime = p();
  const int dims = n();
  if (point.size() != static_cast<std::size_t>(dims)) throw Error(ErrorKind::LengthMismatch, "point dimension");
  // powers[j][e] = point_j^e with 0^0 = 1
  std::vector<std::vector<std::uint32_t>> powers(static_cast<std::size_t>(dims), std::vector<std::uint32_t>(prime));
  for (int j = 0; j < dims; ++j) {
    std::uint32_t acc = 1 % prime;
    for (std::uint32_t e = 0; e < prime; ++e) {
      powers[static_cast<std::size_t>(j)][e] = acc;
      acc = fp::mul(acc, point[static_cast<std::size_t>(j)] % prime, prime);
    }
  }
  const auto coeffs = component(c);
  std::uint32_t total = 0;
  for (std::size_t idx = 0; idx < coeffs.size(); ++idx) {
    if (coeffs[idx] == 0) continue;
    std::uint32_t term = coeffs[idx];
    std::size_t rest = idx;
    for (int j = 0; j < dims; ++j) {
      term = fp::mul(term, powers[static_cast<std::size_t>(j)][rest % prime], prime);
      rest /= prime;
    }
    total = fp::add(total, term, prime);
  }
  return total;
}

std::vector<std::uint32_t> MultivariateAnf::evaluate(std::span<const std::uint32_t> point) const {
  std::vector<std::uint32_t> out(static_cast<std::size_t>(m()));
  for (int c = 0; c < m(); ++c) out[static_cast<std::size_t>(c)] = evaluate(c, point);
  return out;
}

void interpolate_axes(std::vector<std::uint32_t>& values, std::uint32_t p, int n) {
  // c_0 = v(0); c_k = -sum_a v(a) a^(p-1-k) for k >= 1, with 0^0 = 1.
  fp::Matrix m(p, std::vector<std::uint32_t>(p, 0));
  m[0][0] = 1 % p;
  for (std::uint32_t k = 1; k < p; ++k) {
    for (std::uint32_t a = 0; a < p; ++a) m[k][a] = fp::neg(fp::pow(a, p - 1 - k, p), p);
  }
  transform_axes(values, p, n, m);
}

void evaluate_axes(std::vector<std::uint32_t>& coeffs, std::uint32_t p, int n) {
  fp::Matrix m(p, std::vector<std::uint32_t>(p, 0));
  for (std::uint32_t a = 0; a < p; ++a) {
    for (std::uint32_t k = 0; k < p; ++k) m[a][k] = fp::pow(a, k, p);
  }
  transform_axes(coeffs, p, n, m);
}

MultivariateAnf table_to_anf(const FunctionTable& table, const Basis& basis) {
  const Field& field = table.field();
  if (!(basis.field() == field)) throw Error(ErrorKind::FieldMismatch, "basis belongs to another field");
  const std::uint32_t p = field.p();
  const int n = field.n();
  const std::uint32_t q = field.order();
  std::vector<std::vector<std::uint32_t>> comps(static_cast<std::size_t>(n), std::vector<std::uint32_t>(q));
  for (std::uint32_t v = 0; v < q; ++v) {
    const Element x = basis.from_coords(digits(v, p, n));
    const auto w = basis.coords(table(x));
    for (int c = 0; c < n; ++c) comps[static_cast<std::size_t>(c)][v] = w[static_cast<std::size_t>(c)];
  }
  for (auto& comp : comps) interpolate_axes(comp, p, n);
  return MultivariateAnf(basis, std::move(comps));
}

FunctionTable anf_to_table(const MultivariateAnf& anf) {
  const Basis& basis = anf.basis();
  const Field& field = anf.field();
  const std::uint32_t p = field.p();
  const int n = field.n();
  if (anf.m() > n) throw Error(ErrorKind::LengthMismatch, "ANF has more components than the field dimension");
  std::vector<std::vector<std::uint32_t>> values = anf.components();
  for (auto& comp : values) evaluate_axes(comp, p, n);
  std::vector<Element> out(field.order());
  std::vector<std::uint32_t> w(static_cast<std::size_t>(n), 0);
  for (std::uint32_t v = 0; v < field.order(); ++v) {
    for (int c = 0; c < anf.m(); ++c) w[static_cast<std::size_t>(c)] = values[static_cast<std::size_t>(c)][v];
    const Element x = basis.from_coords(digits(v, p, n));
    out[x.index] = basis.from_coords(w);
  }
  return FunctionTable(field, std::move(out));
}

ComponentSelector ComponentSelector::standard(int m, int k) {
  ComponentSelector s{std::vector<std::uint32_t>(static_cast<std::size_t>(m), 0)};
  s.mu.at(static_cast<std::size_t>(k)) = 1;
  return s;
}

MultivariateAnf component_function(const MultivariateAnf& anf, const ComponentSelector& selector) {
  if (selector.mu.size() != static_cast<std::size_t>(anf.m())) {
    throw Error(ErrorKind::LengthMismatch, "selector length differs from component count");
  }
  const std::uint32_t p = anf.p();
  if (std::all_of(selector.mu.begin(), selector.mu.end(), [p](std::uint32_t v) { return v % p == 0; })) {
    throw Error(ErrorKind::ZeroMu, "selector must be nonzero");
  }
  std::vector<std::uint32_t> out(anf.monomials(), 0);
  for (int c = 0; c < anf.m(); ++c) {
    const std::uint32_t weight = selector.mu[static_cast<std::size_t>(c)] % p;
    if (weight == 0) continue;
    const auto comp = anf.component(c);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = fp::add(out[i], fp::mul(weight, comp[i], p), p);
  }
  return MultivariateAnf(anf.basis(), {std::move(out)});
}

std::optional<int> degree_in_variable(const MultivariateAnf& anf, int axis, int component) {
  if (axis < 0 || axis >= anf.n()) throw Error(ErrorKind::RangeError, "axis " + std::to_string(axis));
  const std::uint32_t p = anf.p();
  std::size_t stride = 1;
  for (int i = 0; i < axis; ++i) stride *= p;
  std::optional<int> best;
  const auto coeffs = anf.component(component);
  for (std::size_t idx = 0; idx < coeffs.size(); ++idx) {
    if (coeffs[idx] == 0) continue;
    const int e = static_cast<int>((idx / stride) % p);
    if (!best || e > *best) best = e;
  }
  return best;
}

std::uint32_t small_binomial_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  if (b > a) return 0;
  // All denominators are below p, so they are invertible.
  std::uint32_t num = 1 % p, den = 1 % p;
  for (std::uint32_t i = 0; i < b; ++i) {
    num = fp::mul(num, (a - i) % p, p);
    den = fp::mul(den, (i + 1) % p, p);
  }
  return fp::mul(num, fp::inverse(den, p), p);
}

MultivariateAnf anf_derivative(const MultivariateAnf& anf, int axis) {
  if (axis < 0 || axis >= anf.n()) throw Error(ErrorKind::RangeError, "axis " + std::to_string(axis));
  const std::uint32_t p = anf.p();
  std::size_t stride = 1;
  for (int i = 0; i < axis; ++i) stride *= p;
  fp::Matrix binom(p, std::vector<std::uint32_t>(p, 0));
  for (std::uint32_t k = 0; k < p; ++k) {
    for (std::uint32_t j = 0; j <= k; ++j) binom[k][j] = small_binomial_mod(k, j, p);
  }
  std::vector<std::vector<std::uint32_t>> out;
  for (const auto& comp : anf.components()) {
    std::vector<std::uint32_t> d(comp.size(), 0);
    for (std::size_t idx = 0; idx < comp.size(); ++idx) {
      const auto j = static_cast<std::uint32_t>((idx / stride) % p);
      const std::size_t base = idx - j * stride;
      std::uint32_t acc = 0;
      for (std::uint32_t k = j + 1; k < p; ++k) acc = fp::add(acc, fp::mul(binom[k][j], comp[base + k * stride], p), p);
      d[idx] = acc;
    }
    out.push_back(std::move(d));
  }
  return MultivariateAnf(anf.basis(), std::move(out));
}

}  // namespace dcalc
