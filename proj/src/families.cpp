#include "llt/families.hpp"

#include <cmath>
#include <string>

#include "llt/error.hpp"

namespace llt {

namespace {

template <class... Ts> struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void fail(const std::string &field, const std::string &what) {
  throw InvalidArgument(field + ": " + what);
}

void validate_at(const FamilySpec &spec, const std::string &path, bool top_level) {
  if (top_level && spec.n < 1) {
    fail(path + "n", "must be a positive integer");
  }
  std::visit(overloaded{
                 [&](const Bernoulli &b) {
                   if (!(b.p > 0.0 && b.p < 1.0)) {
                     fail(path + "params.p", "must lie in (0, 1)");
                   }
                 },
                 [&](const UniformInt &u) {
                   if (u.lo > u.hi) {
                     fail(path + "params.lo", "must not exceed params.hi");
                   }
                 },
                 [&](const Finite &f) {
                   try {
                     (void)make_pmf(f.offset, f.weights);
                   } catch (const InvalidArgument &e) {
                     fail(path + "params.weights", e.what());
                   }
                 },
                 [&](const SpanLattice &s) {
                   if (s.d < 1) {
                     fail(path + "params.d", "must be a positive integer");
                   }
                   if (!s.base) {
                     fail(path + "base", "is required");
                   }
                   if (std::holds_alternative<MixtureSequence>(s.base->kind)) {
                     fail(path + "base", "must describe a single summand law, not a mixture");
                   }
                   validate_at(*s.base, path + "base.", false);
                 },
                 [&](const MixtureSequence &m) {
                   if (m.components.empty()) {
                     fail(path + "components", "must not be empty");
                   }
                   int fillers = 0;
                   for (std::size_t i = 0; i < m.components.size(); ++i) {
                     const auto &c = m.components[i];
                     const std::string here = path + "components[" + std::to_string(i) + "]";
                     if (!c.spec) {
                       fail(here, "spec is required");
                     }
                     if (std::holds_alternative<MixtureSequence>(c.spec->kind)) {
                       fail(here, "nested mixtures are not supported");
                     }
                     if (c.count && c.rate) {
                       fail(here, "set count or rate, not both");
                     }
                     if (c.rate && !(*c.rate > 0.0 && *c.rate <= 1.0)) {
                       fail(here + ".rate", "must lie in (0, 1]");
                     }
                     if (!c.count && !c.rate && ++fillers > 1) {
                       fail(here, "only one component may omit both count and rate");
                     }
                     validate_at(*c.spec, here + ".", false);
                   }
                 },
             },
             spec.kind);
}

// Law of a single summand of a non-mixture family.
LatticePmf summand_law(const FamilySpec &spec) {
  return std::visit(
      overloaded{
          [](const Bernoulli &b) { return make_pmf(0, {1.0 - b.p, b.p}); },
          [](const UniformInt &u) {
            const auto len = static_cast<std::size_t>(u.hi - u.lo + 1);
            return make_pmf(u.lo, std::vector<double>(len, 1.0 / static_cast<double>(len)));
          },
          [](const Finite &f) { return make_pmf(f.offset, f.weights); },
          [](const SpanLattice &s) {
            const LatticePmf base = summand_law(*s.base);
            const auto w = base.weights();
            std::vector<double> scaled((w.size() - 1) * static_cast<std::size_t>(s.d) + 1, 0.0);
            for (std::size_t i = 0; i < w.size(); ++i) {
              scaled[i * static_cast<std::size_t>(s.d)] = w[i];
            }
            return make_pmf_unchecked(base.offset() * s.d, std::move(scaled), base.trimmed_mass());
          },
          [](const MixtureSequence &) -> LatticePmf {
            throw InvalidArgument("a mixture has no single summand law");
          },
      },
      spec.kind);
}

// Component index for every summand slot.
std::vector<std::size_t> assign_slots(const MixtureSequence &m, std::size_t n) {
  constexpr auto kFree = static_cast<std::size_t>(-1);
  std::vector<std::size_t> slot(n, kFree);
  for (std::size_t c = 0; c < m.components.size(); ++c) {
    const auto &comp = m.components[c];
    if (!comp.rate) {
      continue;
    }
    const auto stride = static_cast<std::size_t>(std::ceil(1.0 / *comp.rate));
    for (std::size_t pos = stride; pos <= n; pos += stride) {
      if (slot[pos - 1] == kFree) {
        slot[pos - 1] = c;
      }
    }
  }
  std::size_t free_slots = 0;
  std::size_t counted = 0;
  bool has_filler = false;
  for (auto s : slot) {
    free_slots += (s == kFree);
  }
  for (const auto &comp : m.components) {
    if (comp.count) {
      counted += *comp.count;
    } else if (!comp.rate) {
      has_filler = true;
    }
  }
  if (counted > free_slots || (!has_filler && counted != free_slots)) {
    fail("components", "counts total " + std::to_string(counted) + " but " +
                           std::to_string(free_slots) + " slots remain after rate components");
  }
  const std::size_t filler_count = free_slots - counted;

  std::size_t cursor = 0;
  const auto take = [&](std::size_t c, std::size_t k) {
    while (k > 0) {
      if (slot[cursor] == kFree) {
        slot[cursor] = c;
        --k;
      }
      ++cursor;
    }
  };
  for (std::size_t c = 0; c < m.components.size(); ++c) {
    const auto &comp = m.components[c];
    if (comp.rate) {
      continue;
    }
    take(c, comp.count.value_or(filler_count));
  }
  return slot;
}

std::int64_t get_int(const nlohmann::json &obj, const char *key, const std::string &path) {
  if (!obj.contains(key)) {
    fail(path + key, "is required");
  }
  const auto &v = obj.at(key);
  if (!v.is_number_integer()) {
    fail(path + key, "must be an integer");
  }
  return v.get<std::int64_t>();
}

double get_real(const nlohmann::json &obj, const char *key, const std::string &path) {
  if (!obj.contains(key)) {
    fail(path + key, "is required");
  }
  const auto &v = obj.at(key);
  if (!v.is_number()) {
    fail(path + key, "must be a number");
  }
  return v.get<double>();
}

FamilySpec parse_at(const nlohmann::json &j, const std::string &path, bool top_level) {
  if (!j.is_object()) {
    fail(path.empty() ? "spec" : path.substr(0, path.size() - 1), "must be a JSON object");
  }
  if (!j.contains("kind") || !j.at("kind").is_string()) {
    fail(path + "kind", "is required and must be a string");
  }
  const std::string kind = j.at("kind").get<std::string>();
  const nlohmann::json params = j.value("params", nlohmann::json::object());
  if (!params.is_object()) {
    fail(path + "params", "must be a JSON object");
  }
  const std::string pp = path + "params.";

  FamilySpec spec;
  if (j.contains("n") || top_level) {
    const auto n = get_int(j, "n", path);
    if (n < 1) {
      fail(path + "n", "must be a positive integer");
    }
    spec.n = static_cast<std::size_t>(n);
  }

  if (kind == "bernoulli") {
    spec.kind = Bernoulli{get_real(params, "p", pp)};
  } else if (kind == "uniform_int") {
    spec.kind = UniformInt{get_int(params, "lo", pp), get_int(params, "hi", pp)};
  } else if (kind == "finite") {
    Finite f;
    f.offset = params.contains("offset") ? get_int(params, "offset", pp) : 0;
    if (!params.contains("weights") || !params.at("weights").is_array()) {
      fail(pp + "weights", "is required and must be an array");
    }
    for (const auto &w : params.at("weights")) {
      if (!w.is_number()) {
        fail(pp + "weights", "entries must be numbers");
      }
      f.weights.push_back(w.get<double>());
    }
    spec.kind = std::move(f);
  } else if (kind == "span_lattice") {
    if (!j.contains("base")) {
      fail(path + "base", "is required");
    }
    SpanLattice s;
    s.d = get_int(params, "d", pp);
    s.base = std::make_shared<const FamilySpec>(parse_at(j.at("base"), path + "base.", false));
    spec.kind = std::move(s);
  } else if (kind == "mixture_sequence") {
    if (!j.contains("components") || !j.at("components").is_array()) {
      fail(path + "components", "is required and must be an array");
    }
    MixtureSequence m;
    const auto &arr = j.at("components");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string here = path + "components[" + std::to_string(i) + "].";
      MixtureComponent c;
      c.spec = std::make_shared<const FamilySpec>(parse_at(arr[i], here, false));
      if (arr[i].contains("count")) {
        const auto k = get_int(arr[i], "count", here);
        if (k < 0) {
          fail(here + "count", "must be nonnegative");
        }
        c.count = static_cast<std::size_t>(k);
      }
      if (arr[i].contains("rate")) {
        c.rate = get_real(arr[i], "rate", here);
      }
      m.components.push_back(std::move(c));
    }
    spec.kind = std::move(m);
  } else {
    fail(path + "kind", "unknown kind '" + kind + "'");
  }
  return spec;
}

} // namespace

FamilySpec bernoulli(double p, std::size_t n) { return FamilySpec{Bernoulli{p}, n}; }

FamilySpec uniform_int(std::int64_t lo, std::int64_t hi, std::size_t n) {
  return FamilySpec{UniformInt{lo, hi}, n};
}

FamilySpec finite(std::int64_t offset, std::vector<double> weights, std::size_t n) {
  return FamilySpec{Finite{offset, std::move(weights)}, n};
}

FamilySpec span_lattice(FamilySpec base, std::int64_t d, std::size_t n) {
  return FamilySpec{SpanLattice{std::make_shared<const FamilySpec>(std::move(base)), d}, n};
}

FamilySpec mixture_sequence(std::vector<MixtureComponent> components, std::size_t n) {
  return FamilySpec{MixtureSequence{std::move(components)}, n};
}

MixtureComponent with_count(FamilySpec spec, std::size_t count) {
  return {std::make_shared<const FamilySpec>(std::move(spec)), count, std::nullopt};
}

MixtureComponent with_rate(FamilySpec spec, double rate) {
  return {std::make_shared<const FamilySpec>(std::move(spec)), std::nullopt, rate};
}

MixtureComponent filler(FamilySpec spec) {
  return {std::make_shared<const FamilySpec>(std::move(spec)), std::nullopt, std::nullopt};
}

FamilySpec with_n(FamilySpec spec, std::size_t n) {
  spec.n = n;
  return spec;
}

void validate(const FamilySpec &spec) { validate_at(spec, "", true); }

std::vector<LatticePmf> realize(const FamilySpec &spec) {
  validate(spec);
  if (const auto *m = std::get_if<MixtureSequence>(&spec.kind)) {
    std::vector<LatticePmf> laws;
    laws.reserve(m->components.size());
    for (const auto &c : m->components) {
      laws.push_back(summand_law(*c.spec));
    }
    std::vector<LatticePmf> out;
    out.reserve(spec.n);
    for (const std::size_t c : assign_slots(*m, spec.n)) {
      out.push_back(laws[c]);
    }
    return out;
  }
  return std::vector<LatticePmf>(spec.n, summand_law(spec));
}

LatticePmf sum_law(const FamilySpec &spec, const ConvolveOptions &options) {
  validate(spec);
  const auto *m = std::get_if<MixtureSequence>(&spec.kind);
  if (m == nullptr) {
    return iid_power(summand_law(spec), spec.n, options);
  }
  std::vector<std::size_t> multiplicity(m->components.size(), 0);
  for (const std::size_t c : assign_slots(*m, spec.n)) {
    ++multiplicity[c];
  }
  std::vector<LatticePmf> powers;
  for (std::size_t c = 0; c < m->components.size(); ++c) {
    if (multiplicity[c] > 0) {
      powers.push_back(iid_power(summand_law(*m->components[c].spec), multiplicity[c], options));
    }
  }
  return convolve_sequence(powers, options);
}

FamilySpec family_from_json(const nlohmann::json &j) {
  FamilySpec spec = parse_at(j, "", true);
  validate(spec);
  return spec;
}

FamilySpec parse_family_spec(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    throw InvalidArgument(std::string("spec: malformed JSON: ") + e.what());
  }
  return family_from_json(j);
}

} // namespace llt
