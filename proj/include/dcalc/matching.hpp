#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dcalc/derivative.hpp"
#include "dcalc/function.hpp"

namespace dcalc {

// ---------------------------------------------------------------------------
// Antiderivatives along one or several directions.

// True iff sum_{iota in F_p} F(x + iota alpha) vanishes for every x, i.e. F
// sums to zero on every coset of F_p alpha. Throws ZeroDirection.
bool antiderivative_exists(const FunctionTable& f, Element alpha);

struct NoAntiderivative {
  std::string reason;
  // Single direction: the coset x0, x0 + alpha, ... whose D-sum is nonzero.
  std::vector<Element> coset;
  Element coset_sum;
  // Several directions: failing condition, if one was identified.
  std::optional<std::size_t> direction;
  std::optional<std::pair<std::size_t, std::size_t>> pair;
};

struct AntiderivativeResult {
  std::optional<FunctionTable> h;
  std::optional<NoAntiderivative> failure;

  bool ok() const noexcept { return h.has_value(); }
};

// Chains H along every coset of F_p alpha starting from H(r) = 0 at the
// coset member r of smallest index. Result satisfies Delta_alpha H = D.
AntiderivativeResult construct_antiderivative(const FunctionTable& d, Element alpha);

// True iff Delta_alpha F = 0, the condition for F to be a (p-1)-fold
// repeated derivative along alpha.
bool pth_antiderivative_exists(const FunctionTable& f, Element alpha);

// True iff Delta_alpha F = Delta_alpha G. Also confirms that F - G is
// annihilated by Delta_alpha and throws InternalInconsistency otherwise.
bool kernel_relation_check(const FunctionTable& f, const FunctionTable& g, Element alpha);

struct PairCondition {
  std::size_t i = 0;
  std::size_t j = 0;
  bool holds = false;
};

struct ConditionReport {
  std::vector<bool> xiong_per_direction;   // antiderivative_exists(D_i, alpha_i)
  std::vector<PairCondition> symmetry_pairs;  // Delta_{alpha_j} D_i = Delta_{alpha_i} D_j, i < j

  bool all() const noexcept;
};

// Throws DependentDirections unless the alphas are linearly independent over
// F_p, LengthMismatch unless |Ds| = |alphas|.
ConditionReport salagean_conditions(const std::vector<FunctionTable>& ds, const DirectionList& alphas);

// Solves H(x + alpha_i) - H(x) = D_i(x) for all i by elimination over F_p
// (one right-hand side per polynomial coordinate), pinning H = 0 at the
// smallest index of each orbit of the group generated by the alphas.
AntiderivativeResult construct_multi_antiderivative(const std::vector<FunctionTable>& ds, const DirectionList& alphas);

// ---------------------------------------------------------------------------
// Degree criteria and first-order matching in basis coordinates.

// True iff every component has x_axis-degree below p-1. The condition for
// all nonzero mu reduces to the standard selectors: the coefficients of
// mu . F are F_p-linear in mu, so they all vanish at i_axis = p-1 iff they
// vanish for each component separately.
bool degree_criterion(const MultivariateAnf& anf, int axis);

struct FoMatchingReport {
  bool interior = true;    // coefficient equalities for i_1, i_2 <= p-2
  bool f_boundary = true;  // sum_k C(k, k-j) f_(k, p-1, w) = 0
  bool g_boundary = true;  // sum_k C(k, k-j) g_(p-1, k, w) = 0

  bool holds() const noexcept { return interior && f_boundary && g_boundary; }
};

// Evaluates the coefficient system equivalent to Delta_{e_1} F = Delta_{e_2} G
// for each component. Throws BasisMismatch when f, g and basis disagree.
FoMatchingReport fo_matching_report(const MultivariateAnf& f, const MultivariateAnf& g, const Basis& basis);
bool fo_matching_check(const MultivariateAnf& f, const MultivariateAnf& g, const Basis& basis);

// Right-hand sides of one triangular block: unknowns g_(i_1, k, w) for
// k = 1..p-1, equations j = 0..p-2.
struct MatchingBlock {
  int component = 0;
  std::uint32_t i1 = 0;
  std::vector<std::uint32_t> w;  // exponents of x_3..x_n
  std::vector<std::uint32_t> rhs;
};

struct BoundaryCondition {
  int component = 0;
  std::uint32_t j = 0;
  std::vector<std::uint32_t> w;
  std::uint32_t value = 0;  // must be zero
};

struct MatchingSystem {
  Basis basis;
  MultivariateAnf f_anf;
  // triangular[j][k - 1] = C(k, k - j) mod p; shared by every block.
  std::vector<std::vector<std::uint32_t>> triangular;
  std::vector<MatchingBlock> blocks;
  std::vector<BoundaryCondition> f_boundary;
  // Exponent indices of g with i_2 = 0; left free by the system.
  std::vector<std::size_t> free_indices;
};

// Requires n >= 2 (two independent directions).
MatchingSystem build_matching_system(const MultivariateAnf& f);

struct MatchWitness {
  int component = 0;
  std::uint32_t j = 0;
  std::vector<std::uint32_t> w;
};

struct MatchResult {
  std::optional<MultivariateAnf> g;
  std::optional<MatchWitness> witness;  // set when no G exists
  bool verified = false;                // table check of Delta_{e_1} F = Delta_{e_2} G

  bool ok() const noexcept { return g.has_value(); }
};

// Finds the canonical G with Delta_{e_1} F = Delta_{e_2} G: back-substitutes
// each triangular block, with the free coefficients g_(i_1, 0, w) and the
// row g_(p-1, k, w) set to zero. Returns a witness when the f-side boundary
// fails. Throws InternalInconsistency if a solution does not verify.
MatchResult solve_matching_g(const MultivariateAnf& f);

// Checks deg_{x_j}(Delta_{e_i} f) = deg_{x_j}(Delta_{e_j} g) < p-1 and the
// mirrored statement for x_i, on every component. Throws NotApplicable when
// Delta_{e_i} f != Delta_{e_j} g.
bool vardeg_lemma_check(const MultivariateAnf& f, const MultivariateAnf& g, int i, int j);

}  // namespace dcalc
