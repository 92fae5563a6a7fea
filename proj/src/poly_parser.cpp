#include "dcalc/poly_parser.hpp"

#include <cctype>
#include <limits>
#include <string>

#include "dcalc/error.hpp"

namespace dcalc {

namespace {

class PolyParser {
 public:
  PolyParser(const Field& field, std::string_view text) : field_(field), text_(text) {}

  UnivariatePoly parse() {
    std::vector<Element> coeffs;
    parse_term(coeffs);
    while (peek() == '+') {
      ++pos_;
      parse_term(coeffs);
    }
    if (peek() != '\0') fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return UnivariatePoly(field_, std::move(coeffs));
  }

 private:
  // Skips whitespace and returns the next significant character, or '\0'.
  char peek() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(pos_, what); }

  std::uint64_t parse_uint() {
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an unsigned integer");
    std::uint64_t value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      const auto digit = static_cast<std::uint64_t>(text_[pos_] - '0');
      if (value > (std::numeric_limits<std::uint64_t>::max() - digit) / 10) fail("integer too large");
      value = value * 10 + digit;
      ++pos_;
    }
    return value;
  }

  std::uint64_t parse_optional_exponent() {
    if (peek() != '^') return 1;
    ++pos_;
    return parse_uint();
  }

  // Reduces x^e with x^q = x for e >= 1.
  std::size_t fold_exponent(std::uint64_t e) const {
    const std::uint64_t q = field_.order();
    if (e < q) return static_cast<std::size_t>(e);
    return static_cast<std::size_t>(((e - 1) % (q - 1)) + 1);
  }

  void parse_term(std::vector<Element>& coeffs) {
    Element coeff = field_.one();
    bool has_coeff = false;
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      coeff = field_.scalar(parse_uint());
      has_coeff = true;
    } else if (c == 'g') {
      ++pos_;
      coeff = field_.pow(field_.t(), parse_optional_exponent());
      has_coeff = true;
    }
    std::size_t degree = 0;
    if (has_coeff) {
      if (peek() == '*') {
        ++pos_;
        if (peek() != 'x') fail("expected 'x' after '*'");
        ++pos_;
        degree = fold_exponent(parse_optional_exponent());
      }
    } else if (peek() == 'x') {
      ++pos_;
      degree = fold_exponent(parse_optional_exponent());
    } else {
      fail(peek() == '\0' ? "unexpected end of input" : "expected a term");
    }
    if (coeffs.size() <= degree) coeffs.resize(degree + 1, field_.zero());
    coeffs[degree] = field_.add(coeffs[degree], coeff);
  }

  const Field& field_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

UnivariatePoly parse_poly(const Field& field, std::string_view text) { return PolyParser(field, text).parse(); }

}  // namespace dcalc
