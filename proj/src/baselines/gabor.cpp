#include "cita/baselines.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "baselines/spectrum.hpp"

namespace cita::baselines {

std::vector<double> gabor_frequencies(const GaborBankConfig& config) {
  if (config.scales < 1 || config.min_frequency <= 0.0 ||
      config.max_frequency < config.min_frequency)
    throw InvalidInput("gabor: invalid frequency range");
  std::vector<double> f(config.scales);
  const double ratio = config.max_frequency / config.min_frequency;
  for (int s = 0; s < config.scales; ++s)
    f[s] = config.scales == 1
               ? config.min_frequency
               : config.min_frequency *
                     std::pow(ratio, static_cast<double>(s) / (config.scales - 1));
  return f;
}

std::vector<double> gabor_bank(const GrayImage& img, const GaborBankConfig& config) {
  if (img.height < 2 || img.width < 2)
    throw InvalidInput("gabor_bank: image must be at least 2x2");
  if (config.orientations < 1) throw InvalidInput("gabor: orientations must be >= 1");

  const auto spectrum = detail::dft2(img);
  const auto freqs = gabor_frequencies(config);
  const double n = static_cast<double>(img.size());

  // Energy by Parseval: mean |g|^2 = sum |F H|^2 / N^2 for unnormalised DFT.
  std::vector<double> power(img.size());
  for (std::size_t k = 0; k < power.size(); ++k) power[k] = std::norm(spectrum.bins[k]);
  power[0] = 0.0;

  std::vector<double> out;
  out.reserve(freqs.size() * config.orientations);
  for (double f : freqs) {
    const double sr = config.radial_sigma_ratio * f;
    const double st = config.tangential_sigma_ratio * f;
    for (int o = 0; o < config.orientations; ++o) {
      const double theta = std::numbers::pi * o / config.orientations;
      const double ct = std::cos(theta), sn = std::sin(theta);
      double energy = 0.0;
      for (int ky = 0; ky < img.height; ++ky) {
        const double v = detail::signed_frequency(ky, img.height);
        for (int kx = 0; kx < img.width; ++kx) {
          const double u = detail::signed_frequency(kx, img.width);
          const double ur = u * ct + v * sn - f;
          const double vt = -u * sn + v * ct;
          const double gain =
              std::exp(-0.5 * (ur * ur / (sr * sr) + vt * vt / (st * st)));
          energy += power[static_cast<std::size_t>(ky) * img.width + kx] * gain * gain;
        }
      }
      out.push_back(energy / (n * n));
    }
  }
  return out;
}

}  // namespace cita::baselines
