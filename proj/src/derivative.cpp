#include "dcalc/derivative.hpp"

#include <map>
#include <string>

#include "dcalc/error.hpp"

namespace dcalc {

namespace {

void require_direction(const Field& field, Element alpha) {
  if (!field.contains(alpha)) throw Error(ErrorKind::FieldMismatch, "direction outside the field");
}

}  // namespace

DirectionList::DirectionList(Field field, std::vector<Element> dirs) : field_(std::move(field)), dirs_(std::move(dirs)) {
  for (auto d : dirs_) require_direction(field_, d);
}

DirectionList DirectionList::repeated(const Field& field, Element alpha, std::size_t count) {
  return DirectionList(field, std::vector<Element>(count, alpha));
}

DirectionList DirectionList::scalar_multiples(const Field& field, Element alpha) {
  std::vector<Element> dirs;
  for (std::uint32_t k = 1; k < field.p(); ++k) dirs.push_back(field.scalar_mul(k, alpha));
  return DirectionList(field, std::move(dirs));
}

FunctionTable derivative(const FunctionTable& f, Element alpha) {
  const Field& field = f.field();
  require_direction(field, alpha);
  std::vector<Element> out(f.size());
  for (std::uint32_t k = 0; k < field.order(); ++k) out[k] = field.sub(f(field.add({k}, alpha)), f[k]);
  return FunctionTable(field, std::move(out));
}

FunctionTable higher_derivative(const FunctionTable& f, const DirectionList& dirs) {
  if (!(dirs.field() == f.field())) throw Error(ErrorKind::FieldMismatch, "directions belong to another field");
  FunctionTable acc = f;
  for (std::size_t i = dirs.size(); i-- > 0;) acc = derivative(acc, dirs.dirs()[i]);
  return acc;
}

FunctionTable higher_derivative_expansion(const FunctionTable& f, const DirectionList& dirs) {
  const Field& field = f.field();
  if (!(dirs.field() == field)) throw Error(ErrorKind::FieldMismatch, "directions belong to another field");
  const std::size_t d = dirs.size();
  if (d > kMaxExpansionDirections) {
    throw Error(ErrorKind::TooManyDirections, std::to_string(d) + " directions exceed the subset expansion limit");
  }
  // Collect the signed multiplicity of every shift first; subsets with equal
  // sums collapse into one term.
  std::map<std::uint32_t, std::uint64_t> weight;  // shift index -> weight mod p
  const std::uint32_t p = field.p();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d); ++mask) {
    Element shift = field.zero();
    std::size_t size = 0;
    for (std::size_t j = 0; j < d; ++j) {
      if (mask >> j & 1U) {
        shift = field.add(shift, dirs.dirs()[j]);
        ++size;
      }
    }
    const std::uint64_t sign = (d - size) % 2 == 0 ? 1 : p - 1;
    weight[shift.index] = (weight[shift.index] + sign) % p;
  }
  std::vector<Element> out(f.size(), field.zero());
  for (const auto& [shift, w] : weight) {
    if (w == 0) continue;
    for (std::uint32_t k = 0; k < field.order(); ++k) {
      const Element term = field.scalar_mul(static_cast<std::uint32_t>(w), f(field.add({k}, {shift})));
      out[k] = field.add(out[k], term);
    }
  }
  return FunctionTable(field, std::move(out));
}

FunctionTable generalized_differential(const FunctionTable& f, Element alpha) {
  const Field& field = f.field();
  require_direction(field, alpha);
  std::vector<Element> out(f.size(), field.zero());
  for (std::uint32_t iota = 0; iota < field.p(); ++iota) {
    const Element shift = field.scalar_mul(iota, alpha);
    for (std::uint32_t k = 0; k < field.order(); ++k) out[k] = field.add(out[k], f(field.add({k}, shift)));
  }
  return FunctionTable(field, std::move(out));
}

PropertyReport verify_basic_properties(const FunctionTable& f, Element alpha, Element beta, std::uint32_t iota) {
  const Field& field = f.field();
  require_direction(field, alpha);
  require_direction(field, beta);
  iota %= field.p();
  PropertyReport report;

  report.symmetric = higher_derivative(f, DirectionList(field, {alpha, beta})) ==
                     higher_derivative(f, DirectionList(field, {beta, alpha}));

  const FunctionTable da = derivative(f, alpha);
  {
    const FunctionTable rhs = translate(derivative(f, field.neg(alpha)), alpha);
    report.negated_direction = da == FunctionTable::zero(field) - rhs;
  }
  {
    const FunctionTable rhs = translate(derivative(f, field.sub(alpha, beta)), beta);
    report.difference = da - derivative(f, beta) == rhs;
  }
  {
    FunctionTable partial = FunctionTable::zero(field);
    for (std::uint32_t j = 0; j < iota; ++j) partial = partial + translate(f, field.scalar_mul(j, alpha));
    report.scalar_multiple = derivative(f, field.scalar_mul(iota, alpha)) == derivative(partial, alpha);
  }
  return report;
}

GapnReport gapn_check(const FunctionTable& f) {
  const Field& field = f.field();
  GapnReport report;
  std::vector<std::uint64_t> histogram(field.order());
  for (std::uint32_t a = 1; a < field.order(); ++a) {
    const Element alpha{a};
    const FunctionTable sums = generalized_differential(f, alpha);
    if (!(sums == higher_derivative(f, DirectionList::repeated(field, alpha, field.p() - 1)))) {
      report.repeated_derivative_agrees = false;
    }
    std::fill(histogram.begin(), histogram.end(), 0);
    for (auto v : sums.values()) ++histogram[v.index];
    for (std::uint32_t b = 0; b < field.order(); ++b) {
      if (histogram[b] > report.max_solutions) {
        report.max_solutions = histogram[b];
        report.worst_alpha = alpha;
        report.worst_beta = {b};
      }
    }
  }
  report.is_gapn = report.max_solutions <= field.p();
  return report;
}

MainLemmaResult main_lemma_check(const FunctionTable& f, Element alpha) {
  const Field& field = f.field();
  require_direction(field, alpha);
  if (alpha == field.zero()) throw Error(ErrorKind::ZeroDirection, "alpha must be nonzero");
  FunctionTable lhs = generalized_differential(f, alpha);
  FunctionTable rhs = higher_derivative(f, DirectionList::scalar_multiples(field, alpha));
  const bool holds = lhs == FunctionTable::zero(field) - rhs;
  return {holds, std::move(lhs), std::move(rhs)};
}

}  // namespace dcalc
