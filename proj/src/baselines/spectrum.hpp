#pragma once

#include <complex>
#include <vector>

#include "cita/image.hpp"

namespace cita::baselines::detail {

/// Unnormalised 2D DFT of an image, row-major, unshifted (index 0 is DC).
/// The mean is removed before transforming and the DC term is set to the
/// exact pixel sum, so flat images have an exactly zero AC spectrum.
struct Spectrum {
  int height = 0;
  int width = 0;
  std::vector<std::complex<double>> bins;

  const std::complex<double>& at(int ky, int kx) const {
    return bins[static_cast<std::size_t>(ky) * width + kx];
  }
};

Spectrum dft2(const GrayImage& img);

/// Signed frequency of DFT index k out of n, in cycles/sample.
inline double signed_frequency(int k, int n) {
  return static_cast<double>(k <= n / 2 ? k : k - n) / n;
}

}  // namespace cita::baselines::detail
