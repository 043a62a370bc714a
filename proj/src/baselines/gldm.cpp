#include "cita/baselines.hpp"

#include <cmath>
#include <cstdlib>

namespace cita::baselines {

std::array<double, 5> gldm_for_offset(const GrayImage& img, int dr, int dc) {
  std::array<double, 256> density{};
  std::size_t pairs = 0;
  for (int r = 0; r < img.height; ++r) {
    const int r2 = r + dr;
    if (r2 < 0 || r2 >= img.height) continue;
    for (int c = 0; c < img.width; ++c) {
      const int c2 = c + dc;
      if (c2 < 0 || c2 >= img.width) continue;
      density[std::abs(img.at(r, c) - img.at(r2, c2))] += 1.0;
      ++pairs;
    }
  }
  if (pairs == 0) throw InvalidInput("gldm: displacement does not fit inside the image");

  double contrast = 0.0, asm_ = 0.0, entropy = 0.0, mean = 0.0, idm = 0.0;
  for (int k = 0; k < 256; ++k) {
    if (density[k] == 0.0) continue;
    const double p = density[k] / static_cast<double>(pairs);
    contrast += static_cast<double>(k) * k * p;
    asm_ += p * p;
    entropy -= p * std::log(p);
    mean += k * p;
    idm += p / (1.0 + static_cast<double>(k) * k);
  }
  return {contrast, asm_, entropy, mean, idm};
}

std::vector<double> gldm(const GrayImage& img) {
  if (img.height < 6 || img.width < 6)
    throw InvalidInput("gldm: image must be at least 6x6");
  constexpr std::array<std::array<int, 2>, 4> unit = {
      {{0, 1}, {-1, 1}, {-1, 0}, {-1, -1}}};
  std::vector<double> out;
  out.reserve(60);
  for (int h : {1, 3, 5})
    for (const auto& [ur, uc] : unit) {
      const auto stats = gldm_for_offset(img, ur * h, uc * h);
      out.insert(out.end(), stats.begin(), stats.end());
    }
  return out;
}

}  // namespace cita::baselines
