#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "dcalc/field.hpp"

namespace dcalc {

// Dense map F_{p^n} -> F_{p^n}; values[k] is the image of the element with
// canonical index k.
class FunctionTable {
 public:
  FunctionTable(Field field, std::vector<Element> values);

  static FunctionTable zero(const Field& field);
  static FunctionTable constant(const Field& field, Element c);
  static FunctionTable from(const Field& field, const std::function<Element(Element)>& fn);

  const Field& field() const noexcept { return field_; }
  const std::vector<Element>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  Element operator()(Element x) const { return values_[x.index]; }
  Element operator[](std::size_t k) const { return values_[k]; }

  bool is_zero() const noexcept;

  friend bool operator==(const FunctionTable& a, const FunctionTable& b) {
    return a.field_ == b.field_ && a.values_ == b.values_;
  }

 private:
  Field field_;
  std::vector<Element> values_;
};

// Pointwise arithmetic; throws FieldMismatch when the fields differ.
FunctionTable operator+(const FunctionTable& a, const FunctionTable& b);
FunctionTable operator-(const FunctionTable& a, const FunctionTable& b);
FunctionTable scale(Element c, const FunctionTable& f);
// x -> F(x + shift)
FunctionTable translate(const FunctionTable& f, Element shift);

// Univariate polynomial over F_{p^n}, reduced modulo x^q - x and trimmed.
class UnivariatePoly {
 public:
  // coeffs[d] multiplies x^d. Exponents >= q are folded with x^q = x.
  UnivariatePoly(Field field, std::vector<Element> coeffs);

  const Field& field() const noexcept { return field_; }
  const std::vector<Element>& coeffs() const noexcept { return coeffs_; }
  // -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

  friend bool operator==(const UnivariatePoly& a, const UnivariatePoly& b) {
    return a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
  }

 private:
  Field field_;
  std::vector<Element> coeffs_;
};

UnivariatePoly interpolate_univariate(const FunctionTable& table);
Element evaluate_univariate(const UnivariatePoly& poly, Element x);
FunctionTable to_table(const UnivariatePoly& poly);

// Per-component ANF of a map F_p^n -> F_p^m in coordinates of `basis`.
// Coefficient arrays are dense over exponent vectors (i_1..i_n) in
// {0..p-1}^n, addressed by sum_j i_j p^(j-1) (same layout as element
// indices, axis 0 least significant).
class MultivariateAnf {
 public:
  MultivariateAnf(Basis basis, std::vector<std::vector<std::uint32_t>> components);

  static MultivariateAnf zero(const Basis& basis, int m);

  const Basis& basis() const noexcept { return basis_; }
  const Field& field() const noexcept { return basis_.field(); }
  std::uint32_t p() const noexcept { return basis_.field().p(); }
  int n() const noexcept { return basis_.dimension(); }
  int m() const noexcept { return static_cast<int>(coeffs_.size()); }
  std::size_t monomials() const noexcept { return coeffs_.empty() ? 0 : coeffs_.front().size(); }

  std::span<const std::uint32_t> component(int c) const { return coeffs_.at(static_cast<std::size_t>(c)); }
  const std::vector<std::vector<std::uint32_t>>& components() const noexcept { return coeffs_; }

  std::uint32_t coefficient(int c, std::span<const std::uint32_t> exponents) const;
  std::size_t exponent_index(std::span<const std::uint32_t> exponents) const;
  std::vector<std::uint32_t> exponents(std::size_t index) const;

  // Direct monomial summation at a coordinate point.
  std::uint32_t evaluate(int c, std::span<const std::uint32_t> point) const;
  std::vector<std::uint32_t> evaluate(std::span<const std::uint32_t> point) const;

  friend bool operator==(const MultivariateAnf& a, const MultivariateAnf& b) {
    return a.basis_ == b.basis_ && a.coeffs_ == b.coeffs_;
  }

 private:
  Basis basis_;
  std::vector<std::vector<std::uint32_t>> coeffs_;
};

// Expresses input and output in `basis` coordinates and interpolates each of
// the n output components axis by axis (axis 1 first).
MultivariateAnf table_to_anf(const FunctionTable& table, const Basis& basis);

// Inverse of table_to_anf. Components beyond m are taken as zero, so a
// scalar ANF (m = 1) maps x to f(coords(x)) * e_1.
FunctionTable anf_to_table(const MultivariateAnf& anf);

// Nonzero selector mu in F_p^m picking the component function mu . F.
struct ComponentSelector {
  std::vector<std::uint32_t> mu;

  static ComponentSelector standard(int m, int k);
};

// Throws ZeroMu or LengthMismatch.
MultivariateAnf component_function(const MultivariateAnf& anf, const ComponentSelector& selector);

// max i_axis over nonzero coefficients of one component; nullopt for the
// zero function. Axes are 0-based (axis 0 is x_1).
std::optional<int> degree_in_variable(const MultivariateAnf& anf, int axis, int component = 0);

// ANF of Delta_{e_axis} applied to every component, computed on the
// coefficients by binomial expansion of (x_axis + 1)^k.
MultivariateAnf anf_derivative(const MultivariateAnf& anf, int axis);

// C(a, b) mod p for 0 <= b <= a < p; the binomials used by the ANF
// derivative and the matching system.
std::uint32_t small_binomial_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p);

// Per-axis transforms on a dense p^n array: values at points 0..p-1 to
// coefficients of degree <= p-1, and back.
void interpolate_axes(std::vector<std::uint32_t>& values, std::uint32_t p, int n);
void evaluate_axes(std::vector<std::uint32_t>& coeffs, std::uint32_t p, int n);

}  // namespace dcalc
