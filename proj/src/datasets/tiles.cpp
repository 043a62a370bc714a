#include "cita/datasets.hpp"

namespace cita::datasets {

namespace {
GrayImage crop(const GrayImage& img, int top, int left, int h, int w) {
  GrayImage out(h, w);
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c) out.at(r, c) = img.at(top + r, left + c);
  return out;
}
}  // namespace

std::vector<GrayImage> extract_subimages(const GrayImage& img, int tile_h, int tile_w) {
  if (tile_h < 1 || tile_w < 1) throw InvalidInput("extract_subimages: empty tile");
  if (tile_h > img.height || tile_w > img.width)
    throw InvalidInput("extract_subimages: tile larger than image");
  std::vector<GrayImage> tiles;
  for (int top = 0; top + tile_h <= img.height; top += tile_h)
    for (int left = 0; left + tile_w <= img.width; left += tile_w)
      tiles.push_back(crop(img, top, left, tile_h, tile_w));
  return tiles;
}

std::vector<GrayImage> extract_subimages(const GrayImage& img, int tile_h, int tile_w,
                                         int count) {
  if (count < 1) throw InvalidInput("extract_subimages: count must be >= 1");
  auto tiles = extract_subimages(img, tile_h, tile_w);
  const auto grid = static_cast<int>(tiles.size());
  if (count <= grid) {
    tiles.resize(count);
  } else if (count == grid + 1) {
    tiles.push_back(crop(img, (img.height - tile_h) / 2, (img.width - tile_w) / 2,
                         tile_h, tile_w));
  } else {
    throw InvalidInput("extract_subimages: image holds only " + std::to_string(grid) +
                       " tiles, " + std::to_string(count) + " requested");
  }
  return tiles;
}

}  // namespace cita::datasets
