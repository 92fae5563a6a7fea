#pragma once

#include <cstdint>
#include <vector>

#include "dcalc/function.hpp"

namespace dcalc {

// Ordered list of directions alpha_1..alpha_d. Derivatives do not depend on
// the order; it is kept for reproducible output.
class DirectionList {
 public:
  DirectionList(Field field, std::vector<Element> dirs);

  // [alpha, alpha, ..., alpha] with `count` entries.
  static DirectionList repeated(const Field& field, Element alpha, std::size_t count);
  // [alpha, 2 alpha, ..., (p-1) alpha]
  static DirectionList scalar_multiples(const Field& field, Element alpha);

  const Field& field() const noexcept { return field_; }
  const std::vector<Element>& dirs() const noexcept { return dirs_; }
  std::size_t size() const noexcept { return dirs_.size(); }

 private:
  Field field_;
  std::vector<Element> dirs_;
};

// x -> F(x + alpha) - F(x). alpha = 0 gives the zero function.
FunctionTable derivative(const FunctionTable& f, Element alpha);

// Delta_{alpha_1}(Delta_{alpha_2, ..., alpha_d} F), one table pass per
// direction. An empty list returns F.
FunctionTable higher_derivative(const FunctionTable& f, const DirectionList& dirs);

inline constexpr std::size_t kMaxExpansionDirections = 20;

// Same derivative via the subset expansion
//   sum_{J subset of {1..d}} (-1)^(d-|J|) F(x + sum_{j in J} alpha_j).
// Throws TooManyDirections when d > 20.
FunctionTable higher_derivative_expansion(const FunctionTable& f, const DirectionList& dirs);

// x -> sum_{iota in F_p} F(x + iota alpha)
FunctionTable generalized_differential(const FunctionTable& f, Element alpha);

struct PropertyReport {
  bool symmetric = false;           // Delta_{a,b} F = Delta_{b,a} F
  bool negated_direction = false;   // Delta_a F(x) = -Delta_{-a} F(x + a)
  bool difference = false;          // Delta_a F - Delta_b F = Delta_{a-b} F(. + b)
  bool scalar_multiple = false;     // Delta_{iota a} F = Delta_a sum_{j<iota} F(. + j a)

  bool all() const noexcept { return symmetric && negated_direction && difference && scalar_multiple; }
};

// Checks the four elementary derivative identities as full-table equalities.
PropertyReport verify_basic_properties(const FunctionTable& f, Element alpha, Element beta, std::uint32_t iota);

struct GapnReport {
  bool is_gapn = false;
  Element worst_alpha;
  Element worst_beta;
  std::uint64_t max_solutions = 0;
  // Generalized differential agreed with the (p-1)-fold derivative for
  // every alpha.
  bool repeated_derivative_agrees = true;
};

// max over alpha != 0 and beta of #{x : sum_iota F(x + iota alpha) = beta};
// GAPN iff that count is at most p. Ties keep the smallest alpha, then beta.
GapnReport gapn_check(const FunctionTable& f);

struct MainLemmaResult {
  bool holds = false;
  FunctionTable generalized;   // Delta_{alpha, ..., alpha} F ((p-1)-fold)
  FunctionTable multiples;     // Delta_{alpha, 2 alpha, ..., (p-1) alpha} F
};

// Compares the (p-1)-fold repeated derivative with the negated derivative
// along alpha, 2 alpha, ..., (p-1) alpha. Throws ZeroDirection.
MainLemmaResult main_lemma_check(const FunctionTable& f, Element alpha);

}  // namespace dcalc
