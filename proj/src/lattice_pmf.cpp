#include "llt/lattice_pmf.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "llt/compensated_sum.hpp"
#include "llt/error.hpp"

namespace llt {

namespace {

// Rescaling is skipped inside this band so that canonicalization is
// idempotent bit-for-bit.
constexpr double kRescaleSlack = 1e-14;

void clamp_and_validate(std::vector<double> &weights) {
  for (std::size_t i = 0; i < weights.size(); ++i) {
    double &w = weights[i];
    if (!std::isfinite(w)) {
      throw InvalidArgument("weights[" + std::to_string(i) + "] is not finite");
    }
    if (w < 0.0) {
      if (w < -kNegativeClamp) {
        throw InvalidArgument("weights[" + std::to_string(i) + "] = " + std::to_string(w) +
                              " is negative beyond round-off");
      }
      w = 0.0;
    }
  }
}

} // namespace

double LatticePmf::max_weight() const noexcept {
  return weights_.empty() ? 0.0 : *std::max_element(weights_.begin(), weights_.end());
}

double LatticePmf::total_weight() const noexcept { return compensated_total(weights_); }

LatticePmf LatticePmf::shifted(std::int64_t by) const {
  return LatticePmf(offset_ + by, weights_, trimmed_mass_);
}

Normalization Normalization::checked(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw InvalidArgument("normalization must be finite");
  }
  if (!(b > 0.0)) {
    throw InvalidArgument("normalization scale b must be positive");
  }
  return Normalization{a, b};
}

LatticePmf make_pmf_unchecked(std::int64_t offset, std::vector<double> weights, double trimmed) {
  clamp_and_validate(weights);
  const auto first = std::find_if(weights.begin(), weights.end(), [](double w) { return w > 0.0; });
  if (first == weights.end()) {
    throw InvalidArgument("pmf needs at least one positive weight");
  }
  const auto last =
      std::find_if(weights.rbegin(), weights.rend(), [](double w) { return w > 0.0; }).base();
  offset += first - weights.begin();
  weights.erase(last, weights.end());
  weights.erase(weights.begin(), first);
  if (!std::isfinite(trimmed) || trimmed < 0.0) {
    throw InvalidArgument("trimmed_mass must be a finite nonnegative number");
  }
  return LatticePmf(offset, std::move(weights), trimmed);
}

LatticePmf make_pmf(std::int64_t offset, std::vector<double> weights, PmfOptions options) {
  LatticePmf p = make_pmf_unchecked(offset, std::move(weights), options.trimmed_mass);
  if (options.unnormalized) {
    return p;
  }
  const double target = 1.0 - options.trimmed_mass;
  const double total = p.total_weight();
  if (std::fabs(total + options.trimmed_mass - 1.0) > kMassTolerance) {
    throw InvalidArgument("total mass " + std::to_string(total + options.trimmed_mass) +
                          " differs from 1 (pass unnormalized to allow this)");
  }
  if (std::fabs(total - target) <= kRescaleSlack) {
    return p;
  }
  std::vector<double> scaled(p.weights().begin(), p.weights().end());
  const double scale = target / total;
  for (double &w : scaled) {
    w *= scale;
  }
  return make_pmf_unchecked(p.offset(), std::move(scaled), options.trimmed_mass);
}

LatticePmf delta(std::int64_t m) { return make_pmf_unchecked(m, {1.0}, 0.0); }

Normalization mean_and_std(const LatticePmf &p) {
  const auto w = p.weights();
  const auto positive = std::count_if(w.begin(), w.end(), [](double x) { return x > 0.0; });
  if (positive < 2) {
    throw InvalidArgument("zero variance: a single atom has no valid scaling b");
  }
  // Moments are taken relative to the offset to keep the products small.
  CompensatedSum mass;
  CompensatedSum first;
  for (std::size_t i = 0; i < w.size(); ++i) {
    mass += w[i];
    first += static_cast<double>(i) * w[i];
  }
  const double offset = static_cast<double>(p.offset());
  const double a = offset * mass.value() + first.value();
  // a - offset, kept separate so large offsets do not cancel.
  const double centre = first.value() + offset * (mass.value() - 1.0);
  CompensatedSum second;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double dev = static_cast<double>(i) - centre;
    second += dev * dev * w[i];
  }
  const double b = std::sqrt(second.value());
  return Normalization::checked(a, b);
}

std::vector<double> residue_distribution(const LatticePmf &p, std::int64_t d) {
  if (d < 1) {
    throw InvalidArgument("modulus d must be positive");
  }
  std::vector<CompensatedSum> classes(static_cast<std::size_t>(d));
  const auto w = p.weights();
  std::int64_t r = ((p.offset() % d) + d) % d;
  for (double x : w) {
    classes[static_cast<std::size_t>(r)] += x;
    if (++r == d) {
      r = 0;
    }
  }
  std::vector<double> out;
  out.reserve(classes.size());
  for (const auto &c : classes) {
    out.push_back(c.value());
  }
  return out;
}

double mod_deviation(const LatticePmf &p, std::int64_t d) {
  const auto residues = residue_distribution(p, d);
  CompensatedSum total;
  for (double r : residues) {
    total += r;
  }
  const double mass = total.value();
  const double uniform = 1.0 / static_cast<double>(d);
  double worst = 0.0;
  for (double r : residues) {
    worst = std::max(worst, std::fabs(r / mass - uniform));
  }
  return d == 1 ? 0.0 : worst;
}

} // namespace llt
