#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"
#include "llt/convolve.hpp"
#include "llt/lattice_pmf.hpp"

namespace llt {

struct FamilySpec;

struct Bernoulli {
  double p = 0.5;
};

struct UniformInt {
  std::int64_t lo = 0;
  std::int64_t hi = 1;
};

struct Finite {
  std::int64_t offset = 0;
  std::vector<double> weights;
};

// Maps every atom m of the base law to d * m.
struct SpanLattice {
  std::shared_ptr<const FamilySpec> base;
  std::int64_t d = 1;
};

// A component either takes `count` slots, or every ceil(1/rate)-th slot, or
// (neither set) whatever is left over. At most one component may be a filler.
struct MixtureComponent {
  std::shared_ptr<const FamilySpec> spec;
  std::optional<std::size_t> count;
  std::optional<double> rate;
};

struct MixtureSequence {
  std::vector<MixtureComponent> components;
};

using FamilyKind = std::variant<Bernoulli, UniformInt, Finite, SpanLattice, MixtureSequence>;

/// A sequence of n independent integer-valued summands.
struct FamilySpec {
  FamilyKind kind;
  std::size_t n = 1;
};

FamilySpec bernoulli(double p, std::size_t n = 1);
FamilySpec uniform_int(std::int64_t lo, std::int64_t hi, std::size_t n = 1);
FamilySpec finite(std::int64_t offset, std::vector<double> weights, std::size_t n = 1);
FamilySpec span_lattice(FamilySpec base, std::int64_t d, std::size_t n = 1);
FamilySpec mixture_sequence(std::vector<MixtureComponent> components, std::size_t n = 1);
MixtureComponent with_count(FamilySpec spec, std::size_t count);
MixtureComponent with_rate(FamilySpec spec, double rate);
MixtureComponent filler(FamilySpec spec);

// Same family, different number of summands.
FamilySpec with_n(FamilySpec spec, std::size_t n);

// Throws InvalidArgument naming the offending field.
void validate(const FamilySpec &spec);

/// The law of each of the n summands, in order. Mixture slots are assigned
/// deterministically: rate components first, then counts and the filler in
/// listed order over the remaining slots.
std::vector<LatticePmf> realize(const FamilySpec &spec);

/// Law of the n-th partial sum. Single-law families go through iid_power;
/// mixtures raise each component to its multiplicity and convolve the powers.
LatticePmf sum_law(const FamilySpec &spec, const ConvolveOptions &options = {});

/// Reads {"kind": ..., "params": {...}, "n": ...}; nested specs sit under
/// "base" (span_lattice) or "components" (mixture_sequence, each entry a
/// spec plus an optional "count" or "rate").
FamilySpec family_from_json(const nlohmann::json &j);
FamilySpec parse_family_spec(std::string_view text);

} // namespace llt
