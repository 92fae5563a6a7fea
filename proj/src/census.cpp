#include "dcalc/census.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

#include "dcalc/error.hpp"
#include "dcalc/field.hpp"

namespace dcalc {

namespace {

void require_prime(std::uint32_t p) {
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
}

std::vector<std::vector<std::uint64_t>> enumerate_subsets(std::uint32_t first, std::uint32_t last,
                                                          std::uint32_t modulus) {
  // Ground set {first, ..., last - 1}, sums reduced mod `modulus`.
  const std::uint32_t size = last - first;
  std::vector<std::vector<std::uint64_t>> counts(size + 1, std::vector<std::uint64_t>(modulus, 0));
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << size); ++mask) {
    std::uint64_t sum = 0;
    for (std::uint32_t j = 0; j < size; ++j) {
      if (mask >> j & 1U) sum += first + j;
    }
    ++counts[static_cast<std::size_t>(std::popcount(mask))][sum % modulus];
  }
  return counts;
}

std::vector<std::vector<std::uint64_t>> dp_subsets(std::uint32_t first, std::uint32_t last, std::uint32_t modulus) {
  const std::uint32_t size = last - first;
  std::vector<std::vector<std::uint64_t>> counts(size + 1, std::vector<std::uint64_t>(modulus, 0));
  counts[0][0] = 1;
  std::uint32_t seen = 0;
  for (std::uint32_t e = first; e < last; ++e, ++seen) {
    const std::uint32_t shift = e % modulus;
    for (std::uint32_t ell = seen + 1; ell-- > 0;) {
      for (std::uint32_t u = 0; u < modulus; ++u) {
        if (counts[ell][u] != 0) counts[ell + 1][(u + shift) % modulus] += counts[ell][u];
      }
    }
  }
  return counts;
}

}  // namespace

std::string_view to_string(CensusMethod method) noexcept {
  switch (method) {
    case CensusMethod::Enumerate: return "enumerate";
    case CensusMethod::Dp: return "dp";
    case CensusMethod::ClosedForm: return "closed_form";
  }
  return "unknown";
}

CensusTable census_enumerate(std::uint32_t p, bool star) {
  require_prime(p);
  if (p > kMaxEnumerationPrime) {
    throw Error(ErrorKind::TooLarge, "subset enumeration limited to p <= " + std::to_string(kMaxEnumerationPrime));
  }
  return {p, star, CensusMethod::Enumerate, enumerate_subsets(star ? 1 : 0, p, p)};
}

CensusTable census_dp(std::uint32_t p, bool star) {
  require_prime(p);
  if (p > kMaxCensusPrime) throw Error(ErrorKind::TooLarge, "census limited to p <= " + std::to_string(kMaxCensusPrime));
  return {p, star, CensusMethod::Dp, dp_subsets(star ? 1 : 0, p, p)};
}

uint128 binomial(std::uint32_t n, std::uint32_t k) {
  if (k > n || n > 128) throw Error(ErrorKind::RangeError, "binomial(" + std::to_string(n) + ", " + std::to_string(k) + ")");
  k = std::min(k, n - k);
  uint128 result = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    // result * (n - i) / (i + 1) without overflowing past the final value:
    // cancel the common factor of result and i + 1 before multiplying.
    const std::uint64_t den = i + 1;
    const auto g = static_cast<std::uint64_t>(std::gcd(static_cast<std::uint64_t>(result % den), den));
    result /= g;
    result *= (n - i) / (den / g);
  }
  return result;
}

std::string to_decimal(uint128 value) {
  if (value == 0) return "0";
  std::string out;
  while (value > 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::uint64_t closed_form_full(std::uint32_t p, std::uint32_t ell) {
  require_prime(p);
  if (p > kMaxCensusPrime) throw Error(ErrorKind::TooLarge, "p exceeds " + std::to_string(kMaxCensusPrime));
  if (ell < 1 || ell > p - 1) {
    throw Error(ErrorKind::RangeError, "closed form for #S_l(u) holds for 1 <= l <= p-1, got l = " + std::to_string(ell));
  }
  return static_cast<std::uint64_t>(binomial(p, ell) / p);
}

StarCounts closed_form_star(std::uint32_t p, std::uint32_t ell) {
  require_prime(p);
  if (p > kMaxCensusPrime) throw Error(ErrorKind::TooLarge, "p exceeds " + std::to_string(kMaxCensusPrime));
  if (ell > p - 1) throw Error(ErrorKind::RangeError, "l must lie in [0, p-1], got " + std::to_string(ell));
  __int128 alternating = 0;
  for (std::uint32_t i = 0; i < ell; ++i) {
    const auto term = static_cast<__int128>(binomial(p, ell - i));
    alternating += (i % 2 == 0) ? term : -term;
  }
  if (alternating % p != 0) throw Error(ErrorKind::InternalInconsistency, "alternating binomial sum not divisible by p");
  const __int128 nonzero = alternating / p;
  const __int128 zero = nonzero + (ell % 2 == 0 ? 1 : -1);
  if (nonzero < 0 || zero < 0) throw Error(ErrorKind::InternalInconsistency, "negative subset count");
  return {static_cast<std::uint64_t>(zero), static_cast<std::uint64_t>(nonzero)};
}

CensusTable census_closed_form(std::uint32_t p, bool star) {
  require_prime(p);
  CensusTable table{p, star, CensusMethod::ClosedForm, {}};
  const std::uint32_t rows = (star ? p - 1 : p) + 1;
  table.counts.assign(rows, std::vector<std::uint64_t>(p, 0));
  if (star) {
    for (std::uint32_t ell = 0; ell < rows; ++ell) {
      const StarCounts c = closed_form_star(p, ell);
      table.counts[ell][0] = c.zero_sum;
      for (std::uint32_t u = 1; u < p; ++u) table.counts[ell][u] = c.nonzero_sum;
    }
  } else {
    table.counts[0][0] = 1;
    for (std::uint32_t ell = 1; ell < p; ++ell) {
      std::fill(table.counts[ell].begin(), table.counts[ell].end(), closed_form_full(p, ell));
    }
    // The whole of F_p sums to p(p-1)/2 mod p.
    table.counts[p][static_cast<std::uint64_t>(p) * (p - 1) / 2 % p] = 1;
  }
  return table;
}

CensusIdentityReport verify_census_identities(std::uint32_t p) {
  require_prime(p);
  if (p == 2) throw Error(ErrorKind::RangeError, "census identities need an odd prime");
  if (p > kMaxCensusPrime) throw Error(ErrorKind::TooLarge, "p exceeds " + std::to_string(kMaxCensusPrime));

  const CensusTable full = census_dp(p, false);
  const CensusTable star = census_dp(p, true);
  CensusIdentityReport r;
  r.p = p;

  auto row_sum = [](const std::vector<std::uint64_t>& row) {
    return std::accumulate(row.begin(), row.end(), std::uint64_t{0});
  };
  r.row_sums = true;
  for (std::uint32_t ell = 0; ell <= p; ++ell) r.row_sums &= row_sum(full.counts[ell]) == binomial(p, ell);
  for (std::uint32_t ell = 0; ell < p; ++ell) r.row_sums &= row_sum(star.counts[ell]) == binomial(p - 1, ell);

  r.full_uniform = true;
  for (std::uint32_t ell = 1; ell < p; ++ell) {
    const auto& row = full.counts[ell];
    r.full_uniform &= std::all_of(row.begin(), row.end(), [&](std::uint64_t v) { return v == row[0]; });
  }
  r.full_uniform_at_zero =
      std::all_of(full.counts[0].begin(), full.counts[0].end(), [&](std::uint64_t v) { return v == full.counts[0][0]; });

  r.star_uniform = true;
  for (std::uint32_t ell = 0; ell < p; ++ell) {
    const auto& row = star.counts[ell];
    r.star_uniform &= std::all_of(row.begin() + 1, row.end(), [&](std::uint64_t v) { return v == row[1]; });
  }

  auto s_star = [&](std::uint32_t ell) { return static_cast<std::int64_t>(star.counts[ell][1]); };
  auto s_star_zero = [&](std::uint32_t ell) { return static_cast<std::int64_t>(star.counts[ell][0]); };

  r.recurrence = true;
  for (std::uint32_t ell = 1; ell < p; ++ell) {
    const auto expected = static_cast<std::int64_t>(binomial(p, ell) / p);
    r.recurrence &= expected == s_star(ell) + s_star(ell - 1);
    r.recurrence &= expected == s_star_zero(ell) + s_star_zero(ell - 1);
    r.recurrence &= static_cast<std::int64_t>(full.counts[ell][0]) == expected;
  }

  r.star_difference = true;
  for (std::uint32_t ell = 0; ell < p; ++ell) {
    r.star_difference &= s_star_zero(ell) - s_star(ell) == (ell % 2 == 0 ? 1 : -1);
  }

  for (std::uint32_t i = 1; i <= (p - 1) / 2; ++i) r.alternating_sum += s_star(2 * i) - s_star(2 * i - 1);
  const std::int64_t residue = ((r.alternating_sum % p) + p) % p;
  r.alternating_residue = static_cast<std::uint32_t>(residue);
  r.alternating_congruence = residue == p - 1;

  r.closed_forms_match = census_closed_form(p, false) == full && census_closed_form(p, true) == star;
  if (p <= kMaxEnumerationPrime) {
    r.enumeration_matches = census_enumerate(p, false) == full && census_enumerate(p, true) == star;
  }
  return r;
}

RingCensus census_ring_enumerate(std::uint32_t modulus) {
  if (modulus < 2) throw Error(ErrorKind::RangeError, "ring modulus must be at least 2");
  if (modulus > kMaxRingEnumeration) {
    throw Error(ErrorKind::TooLarge, "ring enumeration limited to N <= " + std::to_string(kMaxRingEnumeration));
  }
  return {modulus, CensusMethod::Enumerate, enumerate_subsets(0, modulus, modulus)};
}

RingCensus census_ring_dp(std::uint32_t modulus) {
  if (modulus < 2) throw Error(ErrorKind::RangeError, "ring modulus must be at least 2");
  if (modulus > kMaxRingDp) throw Error(ErrorKind::TooLarge, "ring census limited to N <= " + std::to_string(kMaxRingDp));
  return {modulus, CensusMethod::Dp, dp_subsets(0, modulus, modulus)};
}

std::vector<std::uint64_t> census_ring(std::uint32_t modulus, std::uint32_t ell) {
  const RingCensus table = modulus <= kMaxRingEnumeration ? census_ring_enumerate(modulus) : census_ring_dp(modulus);
  if (ell > modulus) throw Error(ErrorKind::RangeError, "l must lie in [0, N]");
  return table.counts[ell];
}

}  // namespace dcalc
