#include "llt/limit_law.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "llt/error.hpp"

namespace llt {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779399460599343819;

} // namespace

double StandardNormal::density(double x) const { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double StandardNormal::cdf(double x) const { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double StandardNormal::survival(double x) const { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double StandardNormal::density_sup() const { return kInvSqrt2Pi; }

double StandardNormal::effective_support_radius(double tol) const {
  if (!(tol > 0.0)) {
    throw InvalidArgument("tolerance must be positive");
  }
  if (tol >= kInvSqrt2Pi) {
    return 0.0;
  }
  return std::sqrt(-2.0 * std::log(tol / kInvSqrt2Pi));
}

std::shared_ptr<const LimitLaw> standard_normal() {
  static const auto law = std::make_shared<const StandardNormal>();
  return law;
}

std::shared_ptr<const LimitLaw> law_by_name(const std::string &name) {
  if (name == "normal") {
    return standard_normal();
  }
  throw InvalidArgument("unknown law '" + name + "' (available: normal)");
}

double modulus_of_continuity(const LimitLaw &law, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw InvalidArgument("modulus of continuity needs h > 0");
  }
  const double radius = law.effective_support_radius(1e-15);
  // Step h/64, but never more than ~2^20 grid points; the refinement below
  // recovers the resolution for tiny h where |g(x+h) - g(x)| varies on scale 1.
  const double step = std::max(h / 64.0, (2.0 * radius + h) / static_cast<double>(1 << 20));
  const auto gap = [&](double x) { return std::fabs(law.density(x + h) - law.density(x)); };

  // x ranges over [-radius - h, radius]; beyond that both points sit in the tails.
  const auto k_lo = static_cast<long long>(std::floor((-radius - h) / step));
  const auto k_hi = static_cast<long long>(std::ceil(radius / step));
  double best = 0.0;
  double best_x = 0.0;
  for (long long k = k_lo; k <= k_hi; ++k) {
    const double x = static_cast<double>(k) * step;
    const double v = gap(x);
    if (v > best) {
      best = v;
      best_x = x;
    }
  }

  // |g(x+h) - g(x)| is smooth near an interior maximum.
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = best_x - step;
  double hi = best_x + step;
  double c = hi - phi * (hi - lo);
  double d = lo + phi * (hi - lo);
  double fc = gap(c);
  double fd = gap(d);
  for (int iter = 0; iter < 80; ++iter) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - phi * (hi - lo);
      fc = gap(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + phi * (hi - lo);
      fd = gap(d);
    }
  }
  return std::max({best, fc, fd});
}

} // namespace llt
