#include "cita/datasets.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace cita::datasets {

GrayImage salt_pepper(const GrayImage& img, double l, std::uint64_t seed) {
  if (!(l >= 0.0 && l <= 1.0)) throw InvalidInput("salt_pepper: l must lie in [0, 1]");
  GrayImage out = img;
  std::mt19937_64 rng(seed);
  for (auto& px : out.pixels) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const bool white = (rng() & 1u) != 0;
    if (u < l) px = white ? 255 : 0;
  }
  return out;
}

bool is_supported_angle(int degrees) {
  return std::find(std::begin(kRotationAngles), std::end(kRotationAngles), degrees) !=
         std::end(kRotationAngles);
}

namespace {

GrayImage rotate_quarter_turns(const GrayImage& img, int turns) {
  const int h = img.height;
  const int w = img.width;
  switch (turns) {
    case 0:
      return img;
    case 1: {
      GrayImage out(w, h);
      for (int r = 0; r < w; ++r)
        for (int c = 0; c < h; ++c) out.at(r, c) = img.at(c, w - 1 - r);
      return out;
    }
    case 2: {
      GrayImage out(h, w);
      for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) out.at(r, c) = img.at(h - 1 - r, w - 1 - c);
      return out;
    }
    default: {
      GrayImage out(w, h);
      for (int r = 0; r < w; ++r)
        for (int c = 0; c < h; ++c) out.at(r, c) = img.at(h - 1 - c, r);
      return out;
    }
  }
}

GrayImage rotate_bilinear(const GrayImage& img, int degrees) {
  const int side = static_cast<int>(
      std::floor(std::min(img.height, img.width) / std::numbers::sqrt2));
  if (side < 1) throw InvalidInput("rotate: image too small for a 45 degree rotation");
  const double theta = degrees * std::numbers::pi / 180.0;
  const double ct = std::cos(theta), st = std::sin(theta);
  const double cy = (img.height - 1) / 2.0, cx = (img.width - 1) / 2.0;
  const double oc = (side - 1) / 2.0;

  GrayImage out(side, side);
  for (int r = 0; r < side; ++r) {
    const double y = r - oc;
    for (int c = 0; c < side; ++c) {
      const double x = c - oc;
      // Counter-clockwise rotation on screen (rows grow downwards).
      const double sx = std::clamp(x * ct - y * st + cx, 0.0, img.width - 1.0);
      const double sy = std::clamp(x * st + y * ct + cy, 0.0, img.height - 1.0);
      const int x0 = std::min(static_cast<int>(sx), std::max(img.width - 2, 0));
      const int y0 = std::min(static_cast<int>(sy), std::max(img.height - 2, 0));
      const int x1 = std::min(x0 + 1, img.width - 1);
      const int y1 = std::min(y0 + 1, img.height - 1);
      const double fx = sx - x0, fy = sy - y0;
      const double top = img.at(y0, x0) * (1 - fx) + img.at(y0, x1) * fx;
      const double bottom = img.at(y1, x0) * (1 - fx) + img.at(y1, x1) * fx;
      const double v = top * (1 - fy) + bottom * fy;
      out.at(r, c) = static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
    }
  }
  return out;
}

}  // namespace

GrayImage rotate(const GrayImage& img, int degrees) {
  if (!is_supported_angle(degrees))
    throw InvalidInput("rotate: unsupported angle " + std::to_string(degrees));
  if (img.empty()) throw InvalidInput("rotate: empty image");
  if (degrees % 90 == 0) return rotate_quarter_turns(img, degrees / 90);
  return rotate_bilinear(img, degrees);
}

}  // namespace cita::datasets
