#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "dcalc/prime_linalg.hpp"

namespace dcalc {

// An element of F_{p^n}, stored as its canonical index sum_i c_i p^i where
// c_0..c_{n-1} are the polynomial-basis coordinates. Elements carry no field
// pointer; every operation goes through the owning Field.
struct Element {
  std::uint32_t index = 0;

  friend constexpr bool operator==(Element, Element) = default;
  friend constexpr auto operator<=>(Element, Element) = default;
};

// Largest supported field order; keeps canonical indices in 32 bits and the
// log tables small.
inline constexpr std::uint64_t kMaxFieldOrder = std::uint64_t{1} << 24;
inline constexpr std::uint32_t kMaxCharacteristic = 61;

namespace detail {
struct FieldData;
}

// F_{p^n} = F_p[t]/(modulus). A cheap, immutable handle: copies share the
// same arithmetic tables and may be used concurrently.
class Field {
 public:
  std::uint32_t p() const noexcept;
  int n() const noexcept;
  std::uint32_t order() const noexcept;
  // Monic modulus, coefficients low-to-high; {0, 1} for prime fields.
  const std::vector<std::uint32_t>& modulus() const noexcept;

  bool contains(Element e) const noexcept { return e.index < order(); }

  Element zero() const noexcept { return {0}; }
  Element one() const noexcept { return {1}; }
  // Residue class of t; equals 0 in a prime field since the modulus is x.
  Element t() const noexcept;
  // Embeds an integer as the prime-field scalar (value mod p).
  Element scalar(std::uint64_t value) const noexcept { return {static_cast<std::uint32_t>(value % p())}; }
  bool is_scalar(Element e) const noexcept { return e.index < p(); }

  std::vector<std::uint32_t> coeffs(Element e) const;
  Element from_coeffs(std::span<const std::uint32_t> coeffs) const;

  Element add(Element a, Element b) const noexcept;
  Element sub(Element a, Element b) const noexcept;
  Element neg(Element a) const noexcept;
  Element mul(Element a, Element b) const;
  Element inv(Element a) const;
  Element div(Element a, Element b) const { return mul(a, inv(b)); }
  Element scalar_mul(std::uint32_t iota, Element a) const noexcept;
  Element pow(Element a, std::uint64_t e) const;

  // Multiplication by polynomial product and reduction, bypassing the log
  // tables. Used to build the tables and as a reference path in tests.
  Element mul_reference(Element a, Element b) const;

  // Fixed generator of the multiplicative group (smallest canonical index).
  Element generator() const;

  // All elements in canonical-index order.
  std::vector<Element> elements() const;

  friend bool operator==(const Field& a, const Field& b) noexcept;

 private:
  friend Field make_field(std::uint32_t, int, std::optional<std::vector<std::uint32_t>>);
  explicit Field(std::shared_ptr<const detail::FieldData> data) : data_(std::move(data)) {}

  const detail::FieldData& tables() const;

  std::shared_ptr<const detail::FieldData> data_;
};

bool is_prime(std::uint64_t value) noexcept;

// Brute force: no monic polynomial of degree 1..floor(n/2) divides `monic`.
bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> monic);

// Lexicographically smallest (low-to-high coefficient order) monic
// irreducible of degree n over F_p; {0, 1} when n == 1.
std::vector<std::uint32_t> default_modulus(std::uint32_t p, int n);

// Validated construction. Throws NotPrime, Reducible, DegreeMismatch,
// TooLarge or InvalidArgument.
Field make_field(std::uint32_t p, int n, std::optional<std::vector<std::uint32_t>> modulus = std::nullopt);

// Basis of F_{p^n} over F_p. Column i is e_{i+1} in polynomial-basis
// coordinates; coords() solves against the cached inverse.
class Basis {
 public:
  static Basis identity(const Field& field);
  // Throws DependentDirections when the columns are not a basis.
  static Basis from_columns(const Field& field, std::vector<std::vector<std::uint32_t>> columns);

  const Field& field() const noexcept { return field_; }
  int dimension() const noexcept { return static_cast<int>(columns_.size()); }
  const std::vector<std::vector<std::uint32_t>>& columns() const noexcept { return columns_; }
  Element element(int i) const;

  std::vector<std::uint32_t> coords(Element e) const;
  Element from_coords(std::span<const std::uint32_t> coords) const;

  friend bool operator==(const Basis& a, const Basis& b) noexcept {
    return a.field_ == b.field_ && a.columns_ == b.columns_;
  }

 private:
  Basis(Field field, std::vector<std::vector<std::uint32_t>> columns, fp::Matrix inverse)
      : field_(std::move(field)), columns_(std::move(columns)), inverse_(std::move(inverse)) {}

  Field field_;
  std::vector<std::vector<std::uint32_t>> columns_;
  fp::Matrix inverse_;
};

// Basis with e_1 = alpha and, when given, e_2 = beta; the remaining vectors
// are picked greedily in canonical-index order. Throws ZeroDirection or
// DependentDirections.
Basis make_basis_with(const Field& field, Element alpha, std::optional<Element> beta = std::nullopt);

// True when the elements are linearly independent over F_p.
bool independent_over_prime_field(const Field& field, std::span<const Element> elements);

// Base-p digits of an index, least significant first.
std::vector<std::uint32_t> digits(std::uint32_t index, std::uint32_t p, int n);
std::uint32_t from_digits(std::span<const std::uint32_t> digits, std::uint32_t p);

}  // namespace dcalc
