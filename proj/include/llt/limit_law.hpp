#pragma once

#include <memory>
#include <string>

namespace llt {

/// Continuous limit distribution G with a uniformly continuous density g.
class LimitLaw {
public:
  virtual ~LimitLaw() = default;

  [[nodiscard]] virtual std::string name() const = 0;
  [[nodiscard]] virtual double density(double x) const = 0;
  [[nodiscard]] virtual double cdf(double x) const = 0;
  // 1 - G(x), overridable for tail accuracy.
  [[nodiscard]] virtual double survival(double x) const { return 1.0 - cdf(x); }
  [[nodiscard]] virtual double density_sup() const = 0;
  // R such that g(x) < tol whenever |x| > R.
  [[nodiscard]] virtual double effective_support_radius(double tol) const = 0;
};

class StandardNormal final : public LimitLaw {
public:
  [[nodiscard]] std::string name() const override { return "normal"; }
  [[nodiscard]] double density(double x) const override;
  [[nodiscard]] double cdf(double x) const override;
  [[nodiscard]] double survival(double x) const override;
  [[nodiscard]] double density_sup() const override;
  [[nodiscard]] double effective_support_radius(double tol) const override;
};

std::shared_ptr<const LimitLaw> standard_normal();

// Looks a law up by name; throws InvalidArgument for unknown names.
std::shared_ptr<const LimitLaw> law_by_name(const std::string &name);

/// Estimates sup_{|x-y| <= h} |g(x) - g(y)|.
///
/// Scans max |g(x+h) - g(x)| on a grid of step h/64 (capped at about 2^20
/// points) anchored at zero and covering the effective support (tol 1e-15),
/// then refines the best grid cell by golden-section search. Throws
/// InvalidArgument unless h > 0.
double modulus_of_continuity(const LimitLaw &law, double h);

} // namespace llt
