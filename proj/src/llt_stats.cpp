#include "llt/llt_stats.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <vector>

#include "llt/compensated_sum.hpp"
#include "llt/error.hpp"

namespace llt {

namespace {

// Mass of atoms offset + i lying in [x, x + lambda], written as
// m - lambda <= x <= m so that breakpoints computed as m - lambda compare
// consistently with the membership test.
double closed_window_mass(std::span<const double> prefix, std::int64_t offset, double x,
                          double lambda) {
  const auto n = static_cast<std::int64_t>(prefix.size()) - 1;
  auto lo = static_cast<std::int64_t>(std::ceil(x));
  auto hi = static_cast<std::int64_t>(std::floor(x + lambda));
  while (static_cast<double>(hi + 1) - lambda <= x) {
    ++hi;
  }
  while (static_cast<double>(hi) - lambda > x) {
    --hi;
  }
  const std::int64_t i_lo = std::max<std::int64_t>(lo - offset, 0);
  const std::int64_t i_hi = std::min<std::int64_t>(hi - offset, n - 1);
  if (i_lo > i_hi) {
    return 0.0;
  }
  return prefix[static_cast<std::size_t>(i_hi + 1)] - prefix[static_cast<std::size_t>(i_lo)];
}

std::vector<double> prefix_sums(std::span<const double> w) {
  std::vector<double> prefix(w.size() + 1, 0.0);
  CompensatedSum acc;
  for (std::size_t i = 0; i < w.size(); ++i) {
    acc += w[i];
    prefix[i + 1] = acc.value();
  }
  return prefix;
}

} // namespace

double kolmogorov_eps(const LatticePmf &p, const Normalization &norm, const LimitLaw &law) {
  const auto checked = Normalization::checked(norm.a, norm.b);
  const auto w = p.weights();
  CompensatedSum below;
  double sup = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double m = static_cast<double>(p.offset() + static_cast<std::int64_t>(i));
    const double x = (m - checked.a) / checked.b;
    const double g = law.cdf(x);
    // Left limit P{S < m} and right value P{S <= m} against the continuous G.
    sup = std::max(sup, std::fabs(below.value() - g));
    below += w[i];
    sup = std::max(sup, std::fabs(below.value() - g));
  }
  // Beyond the last atom, |F - G| decreases towards the trimmed mass.
  sup = std::max(sup, std::fabs(1.0 - below.value()));
  return std::clamp(sup, 0.0, 1.0);
}

double window_sup_diff(const LatticePmf &p, std::int64_t v) {
  if (v < 0) {
    throw InvalidArgument("window v must be nonnegative");
  }
  if (v == 0) {
    return 0.0;
  }
  const auto w = p.weights();
  const auto n = static_cast<std::int64_t>(w.size());
  if (v >= n) {
    // Some window pairs the largest atom with a zero outside the support.
    return p.max_weight();
  }
  const auto value = [&](std::int64_t j) {
    const std::int64_t i = j - v;
    return (i < 0 || i >= n) ? 0.0 : w[static_cast<std::size_t>(i)];
  };
  const std::int64_t len = v + 1;
  const std::int64_t total = n + 2 * v;
  std::deque<std::int64_t> maxq;
  std::deque<std::int64_t> minq;
  double best = 0.0;
  for (std::int64_t j = 0; j < total; ++j) {
    const double x = value(j);
    while (!maxq.empty() && value(maxq.back()) <= x) {
      maxq.pop_back();
    }
    maxq.push_back(j);
    while (!minq.empty() && value(minq.back()) >= x) {
      minq.pop_back();
    }
    minq.push_back(j);
    if (maxq.front() <= j - len) {
      maxq.pop_front();
    }
    if (minq.front() <= j - len) {
      minq.pop_front();
    }
    if (j >= len - 1) {
      best = std::max(best, value(maxq.front()) - value(minq.front()));
    }
  }
  return best;
}

double shift_sup_diff(const LatticePmf &p, std::int64_t v) {
  const std::int64_t s = v < 0 ? -v : v;
  if (s == 0) {
    return 0.0;
  }
  const auto w = p.weights();
  const auto n = static_cast<std::int64_t>(w.size());
  if (s >= n) {
    return p.max_weight();
  }
  const auto at = [&](std::int64_t i) {
    return (i < 0 || i >= n) ? 0.0 : w[static_cast<std::size_t>(i)];
  };
  double best = 0.0;
  for (std::int64_t i = -s; i < n; ++i) {
    best = std::max(best, std::fabs(at(i + s) - at(i)));
  }
  return best;
}

double llt_error(const LatticePmf &p, const Normalization &norm, const LimitLaw &law,
                 std::optional<double> scan_radius) {
  const auto checked = Normalization::checked(norm.a, norm.b);
  const double radius = scan_radius.value_or(law.effective_support_radius(1e-15));
  const auto lo = std::min(p.min_support(),
                           static_cast<std::int64_t>(std::ceil(checked.a - checked.b * radius)));
  const auto hi = std::max(p.max_support(),
                           static_cast<std::int64_t>(std::floor(checked.a + checked.b * radius)));
  double best = 0.0;
  for (std::int64_t m = lo; m <= hi; ++m) {
    const double x = (static_cast<double>(m) - checked.a) / checked.b;
    best = std::max(best, std::fabs(p.at(m) - law.density(x) / checked.b));
  }
  return best;
}

std::int64_t choose_window(double eps, double b) {
  if (!(eps >= 0.0 && eps <= 1.0)) {
    throw InvalidArgument("eps must lie in [0, 1]");
  }
  if (!(b > 0.0) || !std::isfinite(b)) {
    throw InvalidArgument("b must be positive");
  }
  const auto v = static_cast<std::int64_t>(std::floor(b * std::sqrt(eps)));
  return std::max<std::int64_t>(1, v);
}

double interval_prob(const LatticePmf &p, double x, double delta) {
  if (!(delta >= 0.0)) {
    throw InvalidArgument("delta must be nonnegative");
  }
  const double lo_x = std::ceil(x);
  const double hi_x = std::floor(x + delta);
  const double lo = std::max(lo_x, static_cast<double>(p.min_support()));
  const double hi = std::min(hi_x, static_cast<double>(p.max_support()));
  if (lo > hi) {
    return 0.0;
  }
  const auto w = p.weights();
  CompensatedSum s;
  const auto first = static_cast<std::int64_t>(lo) - p.offset();
  const auto last = static_cast<std::int64_t>(hi) - p.offset();
  for (std::int64_t i = first; i <= last; ++i) {
    s += w[static_cast<std::size_t>(i)];
  }
  return s.value();
}

double interval_shift_diff(const LatticePmf &p, std::int64_t v, double lambda, double x_grid_step) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw InvalidArgument("lambda must be positive");
  }
  if (!(x_grid_step > 0.0 && x_grid_step <= 0.5)) {
    throw InvalidArgument("x_grid_step must lie in (0, 0.5]");
  }
  if (v == 0) {
    return 0.0;
  }
  const auto prefix = prefix_sums(p.weights());
  const std::int64_t base = p.offset();
  // [x+v, x+v+lambda] on p is [x, x+lambda] on p shifted by -v.
  const std::int64_t shifted = base - v;

  std::vector<double> breaks;
  breaks.reserve(4 * p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (const std::int64_t start : {base, shifted}) {
      const double m = static_cast<double>(start + static_cast<std::int64_t>(i));
      breaks.push_back(m);
      breaks.push_back(m - lambda);
    }
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  const auto diff = [&](double x) {
    return std::fabs(closed_window_mass(prefix, shifted, x, lambda) -
                     closed_window_mass(prefix, base, x, lambda));
  };
  double best = 0.0;
  for (std::size_t i = 0; i < breaks.size(); ++i) {
    best = std::max(best, diff(breaks[i]));
    if (i + 1 < breaks.size()) {
      best = std::max(best, diff(0.5 * (breaks[i] + breaks[i + 1])));
    }
  }
  return best;
}

ProofDecomposition proof_decomposition(const LatticePmf &p, const Normalization &norm,
                                       const LimitLaw &law, std::int64_t m, std::int64_t v) {
  if (v < 1) {
    throw InvalidArgument("window v must be at least 1");
  }
  const auto checked = Normalization::checked(norm.a, norm.b);
  ProofDecomposition out;
  out.m = m;
  out.v = v;
  const double pm = p.at(m);
  out.lhs = static_cast<double>(v) * pm;
  CompensatedSum first;
  CompensatedSum second;
  for (std::int64_t k = m; k < m + v; ++k) {
    const double pk = p.at(k);
    first += pk;
    second += pm - pk;
  }
  out.term_I = first.value();
  out.term_II = second.value();
  out.identity_residual = std::fabs(out.lhs - out.term_I - out.term_II);
  const double vm1 = static_cast<double>(v - 1);
  const double midpoint = static_cast<double>(m) + vm1 / 2.0;
  out.gaussian_I_approx = vm1 / checked.b * law.density((midpoint - checked.a) / checked.b);
  return out;
}

LltReport full_report(const LatticePmf &p, const LimitLaw &law,
                      const std::set<std::int64_t> &moduli, std::int64_t n) {
  const Normalization norm = mean_and_std(p);
  LltReport r;
  r.n = n;
  r.a = norm.a;
  r.b = norm.b;
  r.eps = kolmogorov_eps(p, norm, law);
  r.v = choose_window(r.eps, norm.b);
  r.window_diff = window_sup_diff(p, r.v);
  r.shift_diff = shift_sup_diff(p, r.v);
  r.llt_err = llt_error(p, norm, law);
  r.scaled_window_diff = norm.b * r.window_diff;
  r.scaled_llt_err = norm.b * r.llt_err;
  for (const std::int64_t d : moduli) {
    r.mod_dev[d] = mod_deviation(p, d);
  }
  return r;
}

} // namespace llt
