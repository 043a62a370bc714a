#include "cita/baselines.hpp"

#include <cstdint>

namespace cita::baselines {

namespace {
// Circular order starting east, counter-clockwise.
constexpr std::array<std::array<int, 2>, 8> kRing = {
    {{0, 1}, {-1, 1}, {-1, 0}, {-1, -1}, {0, -1}, {1, -1}, {1, 0}, {1, 1}}};
}

int lbp_riu2_code(std::uint8_t centre, const std::array<std::uint8_t, 8>& ring) {
  int ones = 0;
  int transitions = 0;
  for (int p = 0; p < 8; ++p) {
    const bool bit = ring[p] >= centre;
    const bool next = ring[(p + 1) % 8] >= centre;
    ones += bit;
    transitions += bit != next;
  }
  return transitions <= 2 ? ones : 9;
}

std::vector<double> lbpv(const GrayImage& img) {
  if (img.height < 3 || img.width < 3)
    throw InvalidInput("lbpv: image must be at least 3x3");

  // 64 * variance = 8 * sum(g^2) - sum(g)^2, kept integral so the histogram
  // is exact and therefore exactly invariant under 90 degree rotations.
  std::array<std::int64_t, kLbpvBins> hist{};
  std::int64_t total = 0;
  std::array<std::uint8_t, 8> ring{};
  for (int r = 1; r + 1 < img.height; ++r)
    for (int c = 1; c + 1 < img.width; ++c) {
      std::int64_t sum = 0, sum_sq = 0;
      for (int p = 0; p < 8; ++p) {
        ring[p] = img.at(r + kRing[p][0], c + kRing[p][1]);
        sum += ring[p];
        sum_sq += ring[p] * ring[p];
      }
      const std::int64_t weight = 8 * sum_sq - sum * sum;
      hist[lbp_riu2_code(img.at(r, c), ring)] += weight;
      total += weight;
    }

  std::vector<double> out(kLbpvBins, 0.0);
  if (total == 0) return out;
  for (int b = 0; b < kLbpvBins; ++b)
    out[b] = static_cast<double>(hist[b]) / static_cast<double>(total);
  return out;
}

}  // namespace cita::baselines
