#include "dcalc/prime_linalg.hpp"

#include <utility>

#include "dcalc/error.hpp"

namespace dcalc::fp {

std::uint32_t pow(std::uint32_t a, std::uint64_t e, std::uint32_t p) {
  std::uint64_t result = 1 % p;
  std::uint64_t base = a % p;
  while (e > 0) {
    if (e & 1U) result = (result * base) % p;
    base = (base * base) % p;
    e >>= 1U;
  }
  return static_cast<std::uint32_t>(result);
}

std::uint32_t inverse(std::uint32_t a, std::uint32_t p) {
  a %= p;
  if (a == 0) throw Error(ErrorKind::DivisionByZero, "zero has no inverse modulo " + std::to_string(p));
  // Extended Euclid on signed 64-bit values.
  std::int64_t old_r = a, r = p, old_s = 1, s = 0;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    old_r = std::exchange(r, old_r - q * r);
    old_s = std::exchange(s, old_s - q * s);
  }
  std::int64_t inv = old_s % static_cast<std::int64_t>(p);
  if (inv < 0) inv += p;
  return static_cast<std::uint32_t>(inv);
}

Reduction reduce(Matrix m, std::size_t columns, std::uint32_t p) {
  Reduction out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < columns && row < m.size(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.size() && m[pivot][col] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[row], m[pivot]);
    const std::uint32_t scale = inverse(m[row][col], p);
    for (auto& v : m[row]) v = mul(v, scale, p);
    for (std::size_t other = 0; other < m.size(); ++other) {
      if (other == row || m[other][col] == 0) continue;
      const std::uint32_t factor = m[other][col];
      for (std::size_t c = col; c < m[other].size(); ++c) {
        m[other][c] = sub(m[other][c], mul(factor, m[row][c], p), p);
      }
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.rank = row;
  out.rows = std::move(m);
  return out;
}

std::size_t rank(const Matrix& m, std::uint32_t p) {
  if (m.empty()) return 0;
  return reduce(m, m.front().size(), p).rank;
}

std::optional<Matrix> invert(const Matrix& m, std::uint32_t p) {
  const std::size_t n = m.size();
  Matrix aug(n, std::vector<std::uint32_t>(2 * n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = m[i][j] % p;
    aug[i][n + i] = 1 % p;
  }
  Reduction red = reduce(std::move(aug), n, p);
  if (red.rank != n) return std::nullopt;
  Matrix inv(n, std::vector<std::uint32_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = red.rows[i][n + j];
  }
  return inv;
}

std::vector<std::uint32_t> apply(const Matrix& m, const std::vector<std::uint32_t>& v, std::uint32_t p) {
  std::vector<std::uint32_t> out(m.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    std::uint64_t acc = 0;
    for (std::size_t j = 0; j < v.size(); ++j) acc += static_cast<std::uint64_t>(m[i][j]) * v[j];
    out[i] = static_cast<std::uint32_t>(acc % p);
  }
  return out;
}

}  // namespace dcalc::fp
