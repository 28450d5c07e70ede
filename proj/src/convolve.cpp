#include "llt/convolve.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <vector>

#include "llt/compensated_sum.hpp"
#include "llt/error.hpp"

namespace llt {

namespace {

// FFTW's planner is not re-entrant; execution on distinct plans is.
std::mutex &planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void *ptr) const noexcept { fftw_free(ptr); }
};

template <typename T> using FftwBuffer = std::unique_ptr<T[], FftwFree>;

template <typename T> FftwBuffer<T> fftw_alloc(std::size_t count) {
  auto *raw = static_cast<T *>(fftw_malloc(sizeof(T) * count));
  if (raw == nullptr) {
    throw std::bad_alloc();
  }
  return FftwBuffer<T>(raw);
}

class Plan {
public:
  explicit Plan(fftw_plan plan) : plan_(plan) {
    if (plan_ == nullptr) {
      throw std::runtime_error("fftw plan creation failed");
    }
  }
  Plan(const Plan &) = delete;
  Plan &operator=(const Plan &) = delete;
  ~Plan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }
  void execute() const noexcept { fftw_execute(plan_); }

private:
  fftw_plan plan_;
};

Plan plan_r2c(int n, double *in, fftw_complex *out) {
  std::lock_guard lock(planner_mutex());
  return Plan(fftw_plan_dft_r2c_1d(n, in, out, FFTW_ESTIMATE));
}

Plan plan_c2r(int n, fftw_complex *in, double *out) {
  std::lock_guard lock(planner_mutex());
  return Plan(fftw_plan_dft_c2r_1d(n, in, out, FFTW_ESTIMATE));
}

// gcd of the positions of positive weights; 0 for a single atom.
std::size_t lattice_step(const LatticePmf &p) {
  std::size_t g = 0;
  const auto w = p.weights();
  for (std::size_t i = 1; i < w.size() && g != 1; ++i) {
    if (w[i] > 0.0) {
      g = std::gcd(g, i);
    }
  }
  return g;
}

std::vector<double> compress(std::span<const double> w, std::size_t step) {
  std::vector<double> out;
  out.reserve(w.size() / step + 1);
  for (std::size_t i = 0; i < w.size(); i += step) {
    out.push_back(w[i]);
  }
  return out;
}

std::vector<double> fft_product(std::span<const double> x, std::span<const double> y) {
  const std::size_t len = x.size() + y.size() - 1;
  const std::size_t n = std::bit_ceil(len);
  const std::size_t spectrum = n / 2 + 1;
  const int n_int = static_cast<int>(n);

  auto in_x = fftw_alloc<double>(n);
  auto in_y = fftw_alloc<double>(n);
  auto out_x = fftw_alloc<fftw_complex>(spectrum);
  auto out_y = fftw_alloc<fftw_complex>(spectrum);

  // FFTW_ESTIMATE planning does not touch the arrays, so fill afterwards.
  const Plan fx = plan_r2c(n_int, in_x.get(), out_x.get());
  const Plan fy = plan_r2c(n_int, in_y.get(), out_y.get());
  const Plan inverse = plan_c2r(n_int, out_x.get(), in_x.get());

  std::fill_n(in_x.get(), n, 0.0);
  std::fill_n(in_y.get(), n, 0.0);
  std::copy(x.begin(), x.end(), in_x.get());
  std::copy(y.begin(), y.end(), in_y.get());
  fx.execute();
  fy.execute();

  for (std::size_t k = 0; k < spectrum; ++k) {
    const double re = out_x[k][0] * out_y[k][0] - out_x[k][1] * out_y[k][1];
    const double im = out_x[k][0] * out_y[k][1] + out_x[k][1] * out_y[k][0];
    out_x[k][0] = re;
    out_x[k][1] = im;
  }
  inverse.execute();

  std::vector<double> out(len);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < len; ++i) {
    out[i] = in_x[i] * scale;
  }
  return out;
}

} // namespace

LatticePmf convolve_naive(const LatticePmf &p, const LatticePmf &q) {
  const auto a = p.weights();
  const auto b = q.weights();
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] += a[i] * b[j];
    }
  }
  return make_pmf_unchecked(p.offset() + q.offset(), std::move(out),
                            p.trimmed_mass() + q.trimmed_mass());
}

LatticePmf convolve_fft(const LatticePmf &p, const LatticePmf &q, const ConvolveOptions &options) {
  const std::size_t full_len = p.size() + q.size() - 1;
  if (full_len > options.max_support) {
    throw SupportOverflow("convolution support " + std::to_string(full_len) +
                          " exceeds the maximum of " + std::to_string(options.max_support) +
                          " (lower n or raise the trim threshold)");
  }

  std::size_t step = std::gcd(lattice_step(p), lattice_step(q));
  if (step == 0) {
    step = 1;
  }
  std::vector<double> c = fft_product(compress(p.weights(), step), compress(q.weights(), step));

  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] < -kNegativeClamp) {
      throw NumericalError("fft convolution produced weight " + std::to_string(c[i]) +
                           " at index " + std::to_string(i));
    }
    c[i] = std::max(c[i], 0.0);
  }

  CompensatedSum trimmed;
  std::size_t lo = 0;
  std::size_t hi = c.size();
  const auto max_it = std::max_element(c.begin(), c.end());
  const auto peak = static_cast<std::size_t>(max_it - c.begin());
  while (lo < peak && c[lo] < options.trim_threshold) {
    trimmed += c[lo++];
  }
  while (hi - 1 > peak && c[hi - 1] < options.trim_threshold) {
    trimmed += c[--hi];
  }

  std::vector<double> expanded((hi - lo - 1) * step + 1, 0.0);
  for (std::size_t j = lo; j < hi; ++j) {
    expanded[(j - lo) * step] = c[j];
  }
  const auto offset = p.offset() + q.offset() + static_cast<std::int64_t>(lo * step);
  return make_pmf_unchecked(offset, std::move(expanded),
                            p.trimmed_mass() + q.trimmed_mass() + trimmed.value());
}

LatticePmf iid_power(const LatticePmf &p, std::size_t n, const ConvolveOptions &options) {
  LatticePmf result = delta(0);
  if (n == 0) {
    return result;
  }
  LatticePmf base = p;
  bool have_result = false;
  while (true) {
    if (n & 1U) {
      result = have_result ? convolve_fft(result, base, options) : base;
      have_result = true;
    }
    n >>= 1U;
    if (n == 0) {
      break;
    }
    base = convolve_fft(base, base, options);
  }
  return result;
}

LatticePmf convolve_sequence(std::span<const LatticePmf> ps, const ConvolveOptions &options) {
  if (ps.empty()) {
    throw InvalidArgument("convolve_sequence needs at least one pmf");
  }
  LatticePmf acc = ps.front();
  for (const auto &p : ps.subspan(1)) {
    acc = convolve_fft(acc, p, options);
  }
  return acc;
}

} // namespace llt
