#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dcalc {

using uint128 = unsigned __int128;

enum class CensusMethod { Enumerate, Dp, ClosedForm };

std::string_view to_string(CensusMethod method) noexcept;

// counts[l][u] = number of l-subsets of the ground set (F_p, or F_p^* when
// `star`) whose elements sum to u mod p.
struct CensusTable {
  std::uint32_t p = 0;
  bool star = false;
  CensusMethod method = CensusMethod::Dp;
  std::vector<std::vector<std::uint64_t>> counts;

  std::uint32_t ground_size() const noexcept { return star ? p - 1 : p; }

  friend bool operator==(const CensusTable& a, const CensusTable& b) {
    return a.p == b.p && a.star == b.star && a.counts == b.counts;
  }
};

inline constexpr std::uint32_t kMaxEnumerationPrime = 19;
inline constexpr std::uint32_t kMaxCensusPrime = 61;

// Walks all 2^|ground| subsets. Throws TooLarge for p > 19, NotPrime.
CensusTable census_enumerate(std::uint32_t p, bool star);

// Dynamic program over ground-set elements with state (size, sum mod p).
CensusTable census_dp(std::uint32_t p, bool star);

// C(p, l) / p for 1 <= l <= p-1; throws RangeError otherwise.
std::uint64_t closed_form_full(std::uint32_t p, std::uint32_t ell);

struct StarCounts {
  std::uint64_t zero_sum = 0;     // #S*_l(0)
  std::uint64_t nonzero_sum = 0;  // #S*_l(u) for any u != 0

  friend bool operator==(const StarCounts&, const StarCounts&) = default;
};

// nonzero_sum = (1/p) sum_{i=0}^{l-1} (-1)^i C(p, l-i) and
// zero_sum = nonzero_sum + (-1)^l, for 0 <= l <= p-1.
StarCounts closed_form_star(std::uint32_t p, std::uint32_t ell);

// Full grid assembled from the closed forms. Rows l = 0 and l = p of the
// full census have no closed form above and use the empty set / whole
// ground set directly.
CensusTable census_closed_form(std::uint32_t p, bool star);

struct CensusIdentityReport {
  std::uint32_t p = 0;
  bool row_sums = false;             // sum_u counts = C(p, l) or C(p-1, l)
  bool full_uniform = false;         // #S_l(u) constant in u, 1 <= l <= p-1
  bool star_uniform = false;         // #S*_l(u) constant over u != 0
  bool recurrence = false;           // C(p,l)/p = S*_l + S*_{l-1} = S*0_l + S*0_{l-1}
  bool star_difference = false;      // S*0_l - S*_l = (-1)^l
  bool alternating_congruence = false;
  std::int64_t alternating_sum = 0;  // sum_{i=1}^{(p-1)/2} (S*_{2i} - S*_{2i-1})
  std::uint32_t alternating_residue = 0;
  bool closed_forms_match = false;   // closed forms equal the DP grid
  std::optional<bool> enumeration_matches;  // only when p <= 19
  // #S_0(u) is not uniform in u, so the full-census uniformity only holds
  // from l = 1 on; recorded rather than asserted.
  bool full_uniform_at_zero = false;

  bool all_pass() const noexcept {
    return row_sums && full_uniform && star_uniform && recurrence && star_difference && alternating_congruence &&
           closed_forms_match && enumeration_matches.value_or(true);
  }
};

// Requires an odd prime p <= 61; throws RangeError / NotPrime.
CensusIdentityReport verify_census_identities(std::uint32_t p);

// Same census over Z/NZ (ground set {0..N-1}); counts[l][u].
struct RingCensus {
  std::uint32_t modulus = 0;
  CensusMethod method = CensusMethod::Dp;
  std::vector<std::vector<std::uint64_t>> counts;
};

inline constexpr std::uint32_t kMaxRingEnumeration = 22;
inline constexpr std::uint32_t kMaxRingDp = 64;

RingCensus census_ring_enumerate(std::uint32_t modulus);
RingCensus census_ring_dp(std::uint32_t modulus);
// Counts of ell-subsets of Z/NZ by sum; enumerates when N <= 22, otherwise
// uses the DP up to N = 64.
std::vector<std::uint64_t> census_ring(std::uint32_t modulus, std::uint32_t ell);

// Exact C(n, k) for 0 <= k <= n <= 128. Throws RangeError.
uint128 binomial(std::uint32_t n, std::uint32_t k);

std::string to_decimal(uint128 value);

}  // namespace dcalc
