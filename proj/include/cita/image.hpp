#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cita/error.hpp"

namespace cita {

/// 8-bit grayscale raster, row-major.
struct GrayImage {
  int height = 0;
  int width = 0;
  std::vector<std::uint8_t> pixels;

  GrayImage() = default;
  GrayImage(int h, int w, std::uint8_t fill = 0)
      : height(h), width(w), pixels(checked_size(h, w), fill) {}
  GrayImage(int h, int w, std::vector<std::uint8_t> data)
      : height(h), width(w), pixels(std::move(data)) {
    if (pixels.size() != checked_size(h, w))
      throw InvalidInput("GrayImage: pixel buffer does not match dimensions");
  }

  bool empty() const { return pixels.empty(); }
  std::size_t size() const { return pixels.size(); }

  std::uint8_t& at(int r, int c) { return pixels[index(r, c)]; }
  std::uint8_t at(int r, int c) const { return pixels[index(r, c)]; }

  std::span<const std::uint8_t> row(int r) const {
    return {pixels.data() + static_cast<std::size_t>(r) * width,
            static_cast<std::size_t>(width)};
  }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  std::size_t index(int r, int c) const {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(width) +
           static_cast<std::size_t>(c);
  }
  static std::size_t checked_size(int h, int w) {
    if (h < 0 || w < 0) throw InvalidInput("GrayImage: negative dimension");
    return static_cast<std::size_t>(h) * static_cast<std::size_t>(w);
  }
};

}  // namespace cita
