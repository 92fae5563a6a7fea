#include "dcalc/field.hpp"

#include <mutex>
#include <string>

#include "dcalc/error.hpp"

namespace dcalc {

namespace detail {

struct FieldData {
  std::uint32_t p = 0;
  int n = 0;
  std::uint32_t q = 0;
  std::vector<std::uint32_t> modulus;
  std::vector<std::uint32_t> place;  // p^i

  // Discrete log tables, built on first multiplication.
  mutable std::once_flag tables_once;
  mutable std::uint32_t generator = 0;
  mutable std::vector<std::uint32_t> exp;  // exp[k] = g^k, k in [0, q-1)
  mutable std::vector<std::uint32_t> log;  // log[exp[k]] = k
};

}  // namespace detail

namespace {

std::string poly_text(std::span<const std::uint32_t> c) {
  std::string s = "[";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(c[i]);
  }
  return s + "]";
}

// Remainder of `a` modulo the monic polynomial `d` over F_p (low-to-high).
std::vector<std::uint32_t> poly_rem(std::vector<std::uint32_t> a, std::span<const std::uint32_t> d,
                                    std::uint32_t p) {
  const std::size_t dd = d.size() - 1;
  for (std::size_t deg = a.size(); deg-- > dd;) {
    const std::uint32_t c = a[deg];
    if (c == 0) continue;
    for (std::size_t i = 0; i <= dd; ++i) {
      a[deg - dd + i] = fp::sub(a[deg - dd + i], fp::mul(c, d[i], p), p);
    }
  }
  a.resize(dd);
  return a;
}

std::vector<std::uint32_t> prime_factors(std::uint64_t v) {
  std::vector<std::uint32_t> out;
  for (std::uint64_t f = 2; f * f <= v; ++f) {
    if (v % f == 0) {
      out.push_back(static_cast<std::uint32_t>(f));
      while (v % f == 0) v /= f;
    }
  }
  if (v > 1) out.push_back(static_cast<std::uint32_t>(v));
  return out;
}

}  // namespace

std::vector<std::uint32_t> digits(std::uint32_t index, std::uint32_t p, int n) {
  std::vector<std::uint32_t> out(static_cast<std::size_t>(n));
  for (auto& d : out) {
    d = index % p;
    index /= p;
  }
  return out;
}

std::uint32_t from_digits(std::span<const std::uint32_t> ds, std::uint32_t p) {
  std::uint32_t index = 0;
  for (std::size_t i = ds.size(); i-- > 0;) index = index * p + ds[i];
  return index;
}

std::uint32_t Field::p() const noexcept { return data_->p; }
int Field::n() const noexcept { return data_->n; }
std::uint32_t Field::order() const noexcept { return data_->q; }
const std::vector<std::uint32_t>& Field::modulus() const noexcept { return data_->modulus; }

Element Field::t() const noexcept { return data_->n == 1 ? Element{0} : Element{data_->p}; }

std::vector<std::uint32_t> Field::coeffs(Element e) const { return digits(e.index, data_->p, data_->n); }

Element Field::from_coeffs(std::span<const std::uint32_t> c) const {
  if (c.size() != static_cast<std::size_t>(data_->n)) {
    throw Error(ErrorKind::LengthMismatch, "expected " + std::to_string(data_->n) + " coordinates");
  }
  for (auto v : c) {
    if (v >= data_->p) throw Error(ErrorKind::InvalidArgument, "coordinate out of range: " + std::to_string(v));
  }
  return {from_digits(c, data_->p)};
}

Element Field::add(Element a, Element b) const noexcept {
  const std::uint32_t p = data_->p;
  if (data_->n == 1) return {fp::add(a.index, b.index, p)};
  std::uint32_t x = a.index, y = b.index, r = 0;
  for (int i = 0; i < data_->n; ++i) {
    std::uint32_t s = x % p + y % p;
    if (s >= p) s -= p;
    r += s * data_->place[static_cast<std::size_t>(i)];
    x /= p;
    y /= p;
  }
  return {r};
}

Element Field::neg(Element a) const noexcept {
  const std::uint32_t p = data_->p;
  std::uint32_t x = a.index, r = 0;
  for (int i = 0; i < data_->n; ++i) {
    r += fp::neg(x % p, p) * data_->place[static_cast<std::size_t>(i)];
    x /= p;
  }
  return {r};
}

Element Field::sub(Element a, Element b) const noexcept { return add(a, neg(b)); }

Element Field::scalar_mul(std::uint32_t iota, Element a) const noexcept {
  const std::uint32_t p = data_->p;
  iota %= p;
  std::uint32_t x = a.index, r = 0;
  for (int i = 0; i < data_->n; ++i) {
    r += fp::mul(iota, x % p, p) * data_->place[static_cast<std::size_t>(i)];
    x /= p;
  }
  return {r};
}

Element Field::mul_reference(Element a, Element b) const {
  const std::uint32_t p = data_->p;
  const auto n = static_cast<std::size_t>(data_->n);
  if (n == 1) return {fp::mul(a.index, b.index, p)};
  const auto ca = coeffs(a);
  const auto cb = coeffs(b);
  std::vector<std::uint32_t> prod(2 * n - 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (ca[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) prod[i + j] = fp::add(prod[i + j], fp::mul(ca[i], cb[j], p), p);
  }
  const auto rem = poly_rem(std::move(prod), data_->modulus, p);
  return {from_digits(rem, p)};
}

const detail::FieldData& Field::tables() const {
  const detail::FieldData& d = *data_;
  std::call_once(d.tables_once, [this, &d] {
    const std::uint32_t group = d.q - 1;
    const auto factors = prime_factors(group);
    auto slow_pow = [this](Element base, std::uint64_t e) {
      Element r = one();
      while (e > 0) {
        if (e & 1U) r = mul_reference(r, base);
        base = mul_reference(base, base);
        e >>= 1U;
      }
      return r;
    };
    for (std::uint32_t cand = 1; cand < d.q; ++cand) {
      bool primitive = true;
      for (auto f : factors) {
        if (slow_pow({cand}, group / f) == one()) {
          primitive = false;
          break;
        }
      }
      if (primitive) {
        d.generator = cand;
        break;
      }
    }
    d.exp.resize(group);
    d.log.assign(d.q, 0);
    Element acc = one();
    for (std::uint32_t k = 0; k < group; ++k) {
      d.exp[k] = acc.index;
      d.log[acc.index] = k;
      acc = mul_reference(acc, {d.generator});
    }
  });
  return d;
}

Element Field::mul(Element a, Element b) const {
  if (a.index == 0 || b.index == 0) return zero();
  if (data_->n == 1) return {fp::mul(a.index, b.index, data_->p)};
  const auto& d = tables();
  const std::uint32_t group = d.q - 1;
  std::uint32_t k = d.log[a.index] + d.log[b.index];
  if (k >= group) k -= group;
  return {d.exp[k]};
}

Element Field::inv(Element a) const {
  if (a.index == 0) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  if (data_->n == 1) return {fp::inverse(a.index, data_->p)};
  const auto& d = tables();
  const std::uint32_t group = d.q - 1;
  const std::uint32_t k = d.log[a.index];
  return {d.exp[k == 0 ? 0 : group - k]};
}

Element Field::pow(Element a, std::uint64_t e) const {
  if (e == 0) return one();
  if (a.index == 0) return zero();
  if (data_->n == 1) return {fp::pow(a.index, e, data_->p)};
  const auto& d = tables();
  const std::uint64_t group = d.q - 1;
  return {d.exp[static_cast<std::size_t>((static_cast<std::uint64_t>(d.log[a.index]) * (e % group)) % group)]};
}

Element Field::generator() const {
  if (data_->n == 1 && data_->q == 2) return one();
  return {tables().generator};
}

std::vector<Element> Field::elements() const {
  std::vector<Element> out(data_->q);
  for (std::uint32_t k = 0; k < data_->q; ++k) out[k] = {k};
  return out;
}

bool operator==(const Field& a, const Field& b) noexcept {
  if (a.data_ == b.data_) return true;
  return a.data_->p == b.data_->p && a.data_->n == b.data_->n && a.data_->modulus == b.data_->modulus;
}

bool is_prime(std::uint64_t value) noexcept {
  if (value < 2) return false;
  for (std::uint64_t d = 2; d * d <= value; ++d) {
    if (value % d == 0) return false;
  }
  return true;
}

bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> monic) {
  const std::size_t n = monic.size() - 1;
  if (n == 1) return true;
  for (std::size_t deg = 1; deg <= n / 2; ++deg) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < deg; ++i) count *= p;
    std::vector<std::uint32_t> divisor(deg + 1);
    for (std::uint64_t code = 0; code < count; ++code) {
      std::uint64_t c = code;
      for (std::size_t i = 0; i < deg; ++i) {
        divisor[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      divisor[deg] = 1;
      const auto rem = poly_rem(std::vector<std::uint32_t>(monic.begin(), monic.end()), divisor, p);
      bool zero = true;
      for (auto v : rem) zero = zero && v == 0;
      if (zero) return false;
    }
  }
  return true;
}

std::vector<std::uint32_t> default_modulus(std::uint32_t p, int n) {
  if (n == 1) return {0, 1};
  const auto len = static_cast<std::size_t>(n);
  std::vector<std::uint32_t> cand(len + 1, 0);
  cand[len] = 1;
  // Odometer over (c_0, ..., c_{n-1}) in lexicographic order: c_{n-1}
  // varies fastest.
  while (true) {
    if (is_irreducible(p, cand)) return cand;
    std::size_t i = len;
    while (i-- > 0) {
      if (++cand[i] < p) break;
      cand[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  throw Error(ErrorKind::InternalInconsistency, "no irreducible polynomial found");
}

Field make_field(std::uint32_t p, int n, std::optional<std::vector<std::uint32_t>> modulus) {
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  if (p > kMaxCharacteristic) {
    throw Error(ErrorKind::TooLarge, "characteristic " + std::to_string(p) + " exceeds " +
                                         std::to_string(kMaxCharacteristic));
  }
  if (n < 1) throw Error(ErrorKind::DegreeMismatch, "extension degree must be at least 1");
  std::uint64_t q = 1;
  for (int i = 0; i < n; ++i) {
    q *= p;
    if (q > kMaxFieldOrder) throw Error(ErrorKind::TooLarge, "field order exceeds 2^24");
  }
  if (modulus) {
    const auto& m = *modulus;
    if (m.size() != static_cast<std::size_t>(n) + 1 || m.back() != 1) {
      throw Error(ErrorKind::DegreeMismatch, "modulus " + poly_text(m) + " is not monic of degree " +
                                                 std::to_string(n));
    }
    for (auto c : m) {
      if (c >= p) throw Error(ErrorKind::InvalidArgument, "modulus coefficient " + std::to_string(c) + " not below p");
    }
    if (n == 1 && m[0] != 0) {
      throw Error(ErrorKind::InvalidArgument, "prime field modulus must be the placeholder [0,1]");
    }
    if (!is_irreducible(p, m)) throw Error(ErrorKind::Reducible, "modulus " + poly_text(m) + " is reducible");
  }
  auto data = std::make_shared<detail::FieldData>();
  data->p = p;
  data->n = n;
  data->q = static_cast<std::uint32_t>(q);
  data->modulus = modulus ? std::move(*modulus) : default_modulus(p, n);
  data->place.resize(static_cast<std::size_t>(n));
  std::uint32_t pw = 1;
  for (auto& v : data->place) {
    v = pw;
    pw *= p;
  }
  return Field(std::move(data));
}

// ---------------------------------------------------------------------------

Basis Basis::identity(const Field& field) {
  const auto n = static_cast<std::size_t>(field.n());
  std::vector<std::vector<std::uint32_t>> cols(n, std::vector<std::uint32_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) cols[i][i] = 1;
  return from_columns(field, std::move(cols));
}

Basis Basis::from_columns(const Field& field, std::vector<std::vector<std::uint32_t>> columns) {
  const auto n = static_cast<std::size_t>(field.n());
  if (columns.size() != n) throw Error(ErrorKind::LengthMismatch, "basis needs " + std::to_string(n) + " vectors");
  fp::Matrix m(n, std::vector<std::uint32_t>(n));
  for (std::size_t j = 0; j < n; ++j) {
    if (columns[j].size() != n) throw Error(ErrorKind::LengthMismatch, "basis vector of wrong length");
    for (std::size_t i = 0; i < n; ++i) {
      if (columns[j][i] >= field.p()) throw Error(ErrorKind::InvalidArgument, "basis coordinate out of range");
      m[i][j] = columns[j][i];
    }
  }
  auto inverse = fp::invert(m, field.p());
  if (!inverse) throw Error(ErrorKind::DependentDirections, "basis vectors are linearly dependent over F_p");
  return Basis(field, std::move(columns), std::move(*inverse));
}

Element Basis::element(int i) const {
  if (i < 0 || i >= dimension()) throw Error(ErrorKind::RangeError, "basis index " + std::to_string(i));
  return field_.from_coeffs(columns_[static_cast<std::size_t>(i)]);
}

std::vector<std::uint32_t> Basis::coords(Element e) const { return fp::apply(inverse_, field_.coeffs(e), field_.p()); }

Element Basis::from_coords(std::span<const std::uint32_t> coords) const {
  const std::uint32_t p = field_.p();
  const auto n = columns_.size();
  if (coords.size() != n) throw Error(ErrorKind::LengthMismatch, "coordinate vector of wrong length");
  std::vector<std::uint32_t> acc(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    const std::uint32_t c = coords[j] % p;
    if (c == 0) continue;
    for (std::size_t i = 0; i < n; ++i) acc[i] = fp::add(acc[i], fp::mul(c, columns_[j][i], p), p);
  }
  return {from_digits(acc, p)};
}

bool independent_over_prime_field(const Field& field, std::span<const Element> elements) {
  fp::Matrix rows;
  for (auto e : elements) rows.push_back(field.coeffs(e));
  return fp::rank(rows, field.p()) == elements.size();
}

Basis make_basis_with(const Field& field, Element alpha, std::optional<Element> beta) {
  if (!field.contains(alpha) || (beta && !field.contains(*beta))) {
    throw Error(ErrorKind::FieldMismatch, "direction outside the field");
  }
  if (alpha == field.zero()) throw Error(ErrorKind::ZeroDirection, "alpha must be nonzero");
  std::vector<Element> chosen{alpha};
  if (beta) {
    chosen.push_back(*beta);
    if (!independent_over_prime_field(field, chosen)) {
      throw Error(ErrorKind::DependentDirections, "beta lies in F_p * alpha");
    }
  }
  for (std::uint32_t k = 1; k < field.order() && chosen.size() < static_cast<std::size_t>(field.n()); ++k) {
    chosen.push_back({k});
    if (!independent_over_prime_field(field, chosen)) chosen.pop_back();
  }
  std::vector<std::vector<std::uint32_t>> cols;
  for (auto e : chosen) cols.push_back(field.coeffs(e));
  return Basis::from_columns(field, std::move(cols));
}

}  // namespace dcalc
