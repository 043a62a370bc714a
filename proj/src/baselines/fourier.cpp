#include "cita/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "baselines/spectrum.hpp"

namespace cita::baselines {

namespace {
// Index of the half-open bin (edge_{k}, edge_{k+1}] holding x, with x = 0 in
// bin 0 and anything past the last edge clamped into the last bin.
int lower_tie_bin(double x, double width, int count) {
  if (x <= 0.0) return 0;
  const int bin = static_cast<int>(std::ceil(x / width)) - 1;
  return std::clamp(bin, 0, count - 1);
}
}  // namespace

int fourier_sector(double u, double v) {
  const double radius = std::hypot(u, v);
  const int band = lower_tie_bin(radius, 0.5 / kFourierBands, kFourierBands);
  double angle = std::atan2(v, u);
  if (angle < 0.0) angle += std::numbers::pi;
  if (angle >= std::numbers::pi) angle -= std::numbers::pi;
  const int wedge =
      lower_tie_bin(angle, std::numbers::pi / kFourierWedges, kFourierWedges);
  return band * kFourierWedges + wedge;
}

std::vector<double> fourier_descriptors(const GrayImage& img) {
  if (img.height < 2 || img.width < 2)
    throw InvalidInput("fourier_descriptors: image must be at least 2x2");
  const auto spectrum = detail::dft2(img);
  std::vector<double> sectors(kFourierBands * kFourierWedges, 0.0);
  for (int ky = 0; ky < img.height; ++ky) {
    const double v = detail::signed_frequency(ky, img.height);
    for (int kx = 0; kx < img.width; ++kx) {
      const double u = detail::signed_frequency(kx, img.width);
      sectors[fourier_sector(u, v)] += std::abs(spectrum.at(ky, kx));
    }
  }
  return sectors;
}

}  // namespace cita::baselines
