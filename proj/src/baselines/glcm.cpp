#include "cita/baselines.hpp"

#include <cmath>

namespace cita::baselines {

namespace {
constexpr std::array<std::array<int, 2>, 4> kUnitOffsets = {
    {{0, 1}, {-1, 1}, {-1, 0}, {-1, -1}}};  // 0, 45, 90, 135 degrees

int quantize(std::uint8_t g) { return g * kGlcmLevels / 256; }
}  // namespace

std::array<double, 4> haralick_for_offset(const GrayImage& img, int dr, int dc) {
  std::vector<double> counts(kGlcmLevels * kGlcmLevels, 0.0);
  std::size_t pairs = 0;
  for (int r = 0; r < img.height; ++r) {
    const int r2 = r + dr;
    if (r2 < 0 || r2 >= img.height) continue;
    for (int c = 0; c < img.width; ++c) {
      const int c2 = c + dc;
      if (c2 < 0 || c2 >= img.width) continue;
      counts[quantize(img.at(r, c)) * kGlcmLevels + quantize(img.at(r2, c2))] += 1.0;
      ++pairs;
    }
  }
  if (pairs == 0) throw InvalidInput("glcm: offset does not fit inside the image");

  double mu_i = 0.0, mu_j = 0.0;
  for (int i = 0; i < kGlcmLevels; ++i)
    for (int j = 0; j < kGlcmLevels; ++j) {
      double& p = counts[i * kGlcmLevels + j];
      p /= static_cast<double>(pairs);
      mu_i += i * p;
      mu_j += j * p;
    }

  double contrast = 0.0, energy = 0.0, homogeneity = 0.0;
  double var_i = 0.0, var_j = 0.0, cov = 0.0;
  for (int i = 0; i < kGlcmLevels; ++i)
    for (int j = 0; j < kGlcmLevels; ++j) {
      const double p = counts[i * kGlcmLevels + j];
      if (p == 0.0) continue;
      contrast += (i - j) * (i - j) * p;
      energy += p * p;
      homogeneity += p / (1.0 + std::abs(i - j));
      var_i += (i - mu_i) * (i - mu_i) * p;
      var_j += (j - mu_j) * (j - mu_j) * p;
      cov += (i - mu_i) * (j - mu_j) * p;
    }
  const double denom = std::sqrt(var_i * var_j);
  const double correlation = denom > 0.0 ? cov / denom : 0.0;
  return {contrast, correlation, energy, homogeneity};
}

std::vector<double> glcm_haralick(const GrayImage& img) {
  if (img.height < 3 || img.width < 3)
    throw InvalidInput("glcm_haralick: image must be at least 3x3");
  std::vector<double> out;
  out.reserve(32);
  for (int distance : {1, 2})
    for (const auto& [ur, uc] : kUnitOffsets) {
      const auto stats = haralick_for_offset(img, ur * distance, uc * distance);
      out.insert(out.end(), stats.begin(), stats.end());
    }
  return out;
}

}  // namespace cita::baselines
