#pragma once

#include <cstdint>
#include <random>

#include "dcalc/function.hpp"

namespace dcalc {

// Seeded source for trials. The engine is std::mt19937_64, whose output
// sequence is fixed by the standard; bounded draws use rejection sampling
// rather than std::uniform_int_distribution, whose algorithm varies between
// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t v = engine_();
    while (v >= limit) v = engine_();
    return v % bound;
  }

  Element element(const Field& field) { return {static_cast<std::uint32_t>(below(field.order()))}; }
  Element nonzero(const Field& field) { return {static_cast<std::uint32_t>(1 + below(field.order() - 1))}; }

  FunctionTable table(const Field& field) {
    std::vector<Element> values(field.order());
    for (auto& v : values) v = element(field);
    return FunctionTable(field, std::move(values));
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace dcalc
