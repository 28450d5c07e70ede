#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>

#include "llt/lattice_pmf.hpp"
#include "llt/limit_law.hpp"

namespace llt {

/// Both sides of v * P{S = m} = sum_{k=m}^{m+v-1} P{S = k}
///                              + sum_{k=m}^{m+v-1} (P{S = m} - P{S = k}).
struct ProofDecomposition {
  std::int64_t m = 0;
  std::int64_t v = 1;
  double lhs = 0.0;
  double term_I = 0.0;
  double term_II = 0.0;
  double identity_residual = 0.0;
  // ((v-1)/b) g((x* - a)/b) at the window midpoint x* = m + (v-1)/2.
  double gaussian_I_approx = 0.0;
};

/// Every statistic for one summand count n.
struct LltReport {
  std::int64_t n = 0;
  double a = 0.0;
  double b = 1.0;
  double eps = 0.0;
  std::int64_t v = 1;
  double window_diff = 0.0;
  double shift_diff = 0.0;
  double llt_err = 0.0;
  double scaled_window_diff = 0.0;
  double scaled_llt_err = 0.0;
  std::map<std::int64_t, double> mod_dev;
};

/// sup_x |P{(S - a)/b < x} - G(x)|, evaluated exactly at the jump points.
double kolmogorov_eps(const LatticePmf &p, const Normalization &norm, const LimitLaw &law);

/// sup |P{S = m} - P{S = k}| over all integers with |m - k| <= v, treating the
/// pmf as zero off its support. O(size + v) via monotonic deques.
double window_sup_diff(const LatticePmf &p, std::int64_t v);

/// sup_m |P{S = m + v} - P{S = m}| with zero extension.
double shift_sup_diff(const LatticePmf &p, std::int64_t v);

/// sup_m |P{S = m} - g((m - a)/b)/b| over the support and every m with
/// |m - a| <= b R, where R defaults to law.effective_support_radius(1e-15).
double llt_error(const LatticePmf &p, const Normalization &norm, const LimitLaw &law,
                 std::optional<double> scan_radius = std::nullopt);

/// Window length max{1, floor(b sqrt(eps))}.
std::int64_t choose_window(double eps, double b);

/// P{x <= S <= x + delta}.
double interval_prob(const LatticePmf &p, double x, double delta);

/// sup_x |P{S in [x+v, x+v+lambda]} - P{S in [x, x+lambda]}|.
///
/// The difference is piecewise constant in x, so the supremum is taken over
/// the finite set of breakpoints and the midpoints between them; the result
/// is exact and no finer than any grid of step <= x_grid_step. x_grid_step
/// is validated against (0, 0.5].
double interval_shift_diff(const LatticePmf &p, std::int64_t v, double lambda,
                           double x_grid_step = 0.5);

ProofDecomposition proof_decomposition(const LatticePmf &p, const Normalization &norm,
                                       const LimitLaw &law, std::int64_t m, std::int64_t v);

/// Bundles every statistic, with (a, b) from mean_and_std and v from
/// choose_window. Throws InvalidArgument for a degenerate pmf.
LltReport full_report(const LatticePmf &p, const LimitLaw &law,
                      const std::set<std::int64_t> &moduli, std::int64_t n = 0);

} // namespace llt
