#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace llt {

/// Probability mass function with finite support on the integers.
///
/// weights()[i] is P{X = offset() + i}. Instances are always canonical:
/// every weight is nonnegative, the first and last weights are positive and
/// interior zeros are kept. trimmed_mass() records probability removed from
/// the tails by earlier convolutions, so weights sum to 1 - trimmed_mass
/// for a normalized pmf.
class LatticePmf {
public:
  [[nodiscard]] std::int64_t offset() const noexcept { return offset_; }
  [[nodiscard]] std::span<const double> weights() const noexcept { return weights_; }
  [[nodiscard]] double trimmed_mass() const noexcept { return trimmed_mass_; }

  [[nodiscard]] std::size_t size() const noexcept { return weights_.size(); }
  [[nodiscard]] std::int64_t min_support() const noexcept { return offset_; }
  [[nodiscard]] std::int64_t max_support() const noexcept {
    return offset_ + static_cast<std::int64_t>(weights_.size()) - 1;
  }

  // P{X = m}, zero outside the stored support.
  [[nodiscard]] double at(std::int64_t m) const noexcept {
    if (m < offset_ || m > max_support()) {
      return 0.0;
    }
    return weights_[static_cast<std::size_t>(m - offset_)];
  }

  [[nodiscard]] double max_weight() const noexcept;
  // Compensated sum of the stored weights.
  [[nodiscard]] double total_weight() const noexcept;

  // Same weights moved by an integer amount.
  [[nodiscard]] LatticePmf shifted(std::int64_t by) const;

  friend bool operator==(const LatticePmf &, const LatticePmf &) = default;

private:
  friend LatticePmf make_pmf_unchecked(std::int64_t, std::vector<double>, double);

  LatticePmf(std::int64_t offset, std::vector<double> weights, double trimmed)
      : offset_(offset), weights_(std::move(weights)), trimmed_mass_(trimmed) {}

  std::int64_t offset_ = 0;
  std::vector<double> weights_;
  double trimmed_mass_ = 0.0;
};

/// Centering and scaling pair (a, b) of an integral limit theorem.
struct Normalization {
  double a = 0.0;
  double b = 1.0;

  // Throws InvalidArgument unless b > 0 and both are finite.
  static Normalization checked(double a, double b);
};

struct PmfOptions {
  // Skip the total-mass check and the renormalization step.
  bool unnormalized = false;
  double trimmed_mass = 0.0;
};

// Tolerance on |sum(weights) + trimmed_mass - 1| accepted by make_pmf.
inline constexpr double kMassTolerance = 1e-9;
// Negative weights down to this value are treated as round-off and clamped.
inline constexpr double kNegativeClamp = 1e-12;

/// Builds a canonical pmf. Weights in [-1e-12, 0) are clamped to zero,
/// boundary zeros are stripped (offset moves accordingly) and, unless
/// `options.unnormalized`, the weights are rescaled so that together with
/// the trimmed mass they total 1.
///
/// Throws InvalidArgument for weights below -1e-12, non-finite values,
/// an all-zero vector or a total mass off by more than 1e-9.
LatticePmf make_pmf(std::int64_t offset, std::vector<double> weights, PmfOptions options = {});

// Point mass at m.
LatticePmf delta(std::int64_t m = 0);

// Canonicalization without the mass check; only clamps and strips.
LatticePmf make_pmf_unchecked(std::int64_t offset, std::vector<double> weights, double trimmed);

/// Mean and standard deviation of the pmf. Throws InvalidArgument
/// ("zero variance") when fewer than two atoms carry positive weight.
Normalization mean_and_std(const LatticePmf &p);

/// Mass of each residue class mod d; entry r collects m with m mod d == r
/// (mathematical remainder, so negative atoms land in [0, d)).
std::vector<double> residue_distribution(const LatticePmf &p, std::int64_t d);

/// max_r |P{X = r mod d | retained support} - 1/d|. The residue masses are
/// normalized by the retained mass, so a pmf living in a single class gives
/// exactly 1 - 1/d whatever its trimmed mass.
double mod_deviation(const LatticePmf &p, std::int64_t d);

} // namespace llt
