#pragma once

#include <cstddef>
#include <span>

#include "llt/lattice_pmf.hpp"

namespace llt {

struct ConvolveOptions {
  // Longest result support (in lattice points) a convolution may produce.
  std::size_t max_support = std::size_t{1} << 22;
  // Boundary weights below this are moved into trimmed_mass after each FFT product.
  double trim_threshold = 1e-15;
};

/// Direct O(len(p) * len(q)) convolution. Serves as the oracle for the FFT path.
LatticePmf convolve_naive(const LatticePmf &p, const LatticePmf &q);

/// Law of X + Y via a real-input FFT of the next power-of-two size.
///
/// When both inputs live on sub-lattices offset + g*Z the product is taken on
/// the compressed lattice, so classes that must be empty stay exactly zero.
/// Throws SupportOverflow when the result would exceed options.max_support
/// and NumericalError if round-off produces a weight below -1e-12.
LatticePmf convolve_fft(const LatticePmf &p, const LatticePmf &q, const ConvolveOptions &options = {});

/// n-fold convolution power by square-and-multiply. n = 0 gives delta(0).
LatticePmf iid_power(const LatticePmf &p, std::size_t n, const ConvolveOptions &options = {});

/// Left fold of convolve_fft. Throws InvalidArgument on an empty sequence.
LatticePmf convolve_sequence(std::span<const LatticePmf> ps, const ConvolveOptions &options = {});

} // namespace llt
