#pragma once

#include <cstdint>
#include <optional>
#include <vector>

// Dense linear algebra over the prime field F_p. Matrices are row-major
// vectors of rows; entries are kept reduced in [0, p).
namespace dcalc::fp {

using Matrix = std::vector<std::vector<std::uint32_t>>;

inline std::uint32_t add(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  const std::uint32_t s = a + b;
  return s >= p ? s - p : s;
}

inline std::uint32_t sub(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return a >= b ? a - b : a + p - b;
}

inline std::uint32_t mul(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % p);
}

inline std::uint32_t neg(std::uint32_t a, std::uint32_t p) { return a == 0 ? 0 : p - a; }

// a^e mod p with 0^0 = 1.
std::uint32_t pow(std::uint32_t a, std::uint64_t e, std::uint32_t p);

// Multiplicative inverse of a nonzero residue; throws DivisionByZero on 0.
std::uint32_t inverse(std::uint32_t a, std::uint32_t p);

// Result of Gauss-Jordan elimination on an augmented matrix.
struct Reduction {
  Matrix rows;                     // reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
  std::size_t rank = 0;
};

// Row-reduces `m` considering only the first `columns` columns for pivots;
// trailing columns are carried along as right-hand sides.
Reduction reduce(Matrix m, std::size_t columns, std::uint32_t p);

std::size_t rank(const Matrix& m, std::uint32_t p);

// Inverse of a square matrix, or nullopt when it is singular.
std::optional<Matrix> invert(const Matrix& m, std::uint32_t p);

std::vector<std::uint32_t> apply(const Matrix& m, const std::vector<std::uint32_t>& v, std::uint32_t p);

}  // namespace dcalc::fp
