#pragma once

// Generators and brute-force oracles shared by the test suites. Nothing in
// here calls into the code paths it is used to check.

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "cita/ca_core.hpp"
#include "cita/image.hpp"

namespace cita::test {

inline GrayImage random_image(std::mt19937_64& rng, int h, int w, int lo = 0, int hi = 255) {
  std::uniform_int_distribution<int> dist(lo, hi);
  GrayImage img(h, w);
  for (auto& p : img.pixels) p = static_cast<std::uint8_t>(dist(rng));
  return img;
}

inline ca::CellGrid random_grid(std::mt19937_64& rng, int h, int w) {
  std::uniform_int_distribution<int> dist(0, 255);
  std::vector<ca::State> s(static_cast<std::size_t>(h) * w);
  for (auto& v : s) v = dist(rng);
  return ca::CellGrid(h, w, std::move(s));
}

/// Grid transform by an explicit source-index map: out(r, c) = in(f(r, c)).
template <class Map>
ca::CellGrid remap(const ca::CellGrid& g, int out_h, int out_w, Map f) {
  std::vector<ca::State> s(static_cast<std::size_t>(out_h) * out_w);
  for (int r = 0; r < out_h; ++r)
    for (int c = 0; c < out_w; ++c) {
      const auto [sr, sc] = f(r, c);
      s[static_cast<std::size_t>(r) * out_w + c] = g.at(sr, sc);
    }
  return ca::CellGrid(out_h, out_w, std::move(s));
}

inline ca::CellGrid rot90(const ca::CellGrid& g) {
  const int h = g.height(), w = g.width();
  return remap(g, w, h, [&](int r, int c) { return std::pair{c, w - 1 - r}; });
}
inline ca::CellGrid flip_h(const ca::CellGrid& g) {
  const int w = g.width();
  return remap(g, g.height(), w, [&](int r, int c) { return std::pair{r, w - 1 - c}; });
}
inline ca::CellGrid flip_v(const ca::CellGrid& g) {
  const int h = g.height();
  return remap(g, h, g.width(), [&](int r, int c) { return std::pair{h - 1 - r, c}; });
}

inline GrayImage to_image(const ca::CellGrid& g) {
  GrayImage img(g.height(), g.width());
  for (int r = 0; r < g.height(); ++r)
    for (int c = 0; c < g.width(); ++c) img.at(r, c) = static_cast<std::uint8_t>(g.at(r, c));
  return img;
}

inline ca::CellGrid to_grid(const GrayImage& img) {
  return ca::CellGrid(img.height, img.width,
                      std::vector<ca::State>(img.pixels.begin(), img.pixels.end()));
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("cita_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace cita::test
