#include "cita/datasets.hpp"

#include <png.h>

#include <cctype>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <memory>

#include "csv.hpp"

namespace cita::datasets {

std::uint8_t luma(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  // 0.299 R + 0.587 G + 0.114 B, rounded half up, in exact integer arithmetic.
  return static_cast<std::uint8_t>((299u * r + 587u * g + 114u * b + 500u) / 1000u);
}

namespace {

using FilePtr = std::unique_ptr<std::FILE, int (*)(std::FILE*)>;

GrayImage read_png(const fs::path& path) {
  FilePtr fp(std::fopen(path.c_str(), "rb"), &std::fclose);
  if (!fp) throw IoError("cannot open " + path.string());

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw FormatError("libpng initialisation failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw FormatError("libpng initialisation failed");
  }

  // Everything touched after setjmp lives on the heap behind these objects.
  GrayImage out;
  std::vector<png_byte> buffer;
  std::vector<png_bytep> rows;

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw FormatError("corrupt or truncated PNG: " + path.string());
  }

  png_init_io(png, fp.get());
  png_read_info(png, info);
  const auto color = png_get_color_type(png, info);
  const auto depth = png_get_bit_depth(png, info);
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (depth == 16) png_set_strip_16(png);
  if (color & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
  png_set_interlace_handling(png);
  png_read_update_info(png, info);

  const auto height = png_get_image_height(png, info);
  const auto width = png_get_image_width(png, info);
  const auto channels = png_get_channels(png, info);
  const auto stride = png_get_rowbytes(png, info);
  buffer.resize(static_cast<std::size_t>(height) * stride);
  rows.resize(height);
  for (png_uint_32 r = 0; r < height; ++r) rows[r] = buffer.data() + r * stride;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  if (channels != 1 && channels != 3)
    throw FormatError("unsupported PNG channel layout: " + path.string());
  out = GrayImage(static_cast<int>(height), static_cast<int>(width));
  for (png_uint_32 r = 0; r < height; ++r) {
    const png_byte* src = rows[r];
    for (png_uint_32 c = 0; c < width; ++c) {
      out.at(static_cast<int>(r), static_cast<int>(c)) =
          channels == 1 ? src[c]
                        : luma(src[3 * c], src[3 * c + 1], src[3 * c + 2]);
    }
  }
  return out;
}

class PnmReader {
 public:
  PnmReader(std::string data, const fs::path& path) : data_(std::move(data)), path_(path) {}

  std::string_view magic() const { return std::string_view(data_).substr(0, 2); }

  // Next whitespace-delimited header token, skipping # comments.
  long number() {
    skip_space();
    if (pos_ >= data_.size() || !std::isdigit(static_cast<unsigned char>(data_[pos_])))
      throw FormatError("malformed PGM header: " + path_.string());
    long v = 0;
    while (pos_ < data_.size() && std::isdigit(static_cast<unsigned char>(data_[pos_]))) {
      v = v * 10 + (data_[pos_++] - '0');
      if (v > 1'000'000'000) throw FormatError("PGM value out of range: " + path_.string());
    }
    return v;
  }

  // Exactly one whitespace byte separates the header from binary samples.
  void end_header() {
    if (pos_ >= data_.size()) throw IoError("truncated PGM: " + path_.string());
    ++pos_;
  }

  std::size_t remaining() const { return data_.size() - pos_; }
  unsigned char byte() { return static_cast<unsigned char>(data_[pos_++]); }

 private:
  void skip_space() {
    while (pos_ < data_.size()) {
      if (data_[pos_] == '#') {
        while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(data_[pos_]))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::string data_;
  const fs::path& path_;
  std::size_t pos_ = 2;
};

std::uint8_t rescale(long v, long maxval) {
  if (v > maxval) throw FormatError("PGM sample exceeds maxval");
  if (maxval == 255) return static_cast<std::uint8_t>(v);
  return static_cast<std::uint8_t>((v * 255 + maxval / 2) / maxval);
}

GrayImage read_pgm(const fs::path& path, std::string data) {
  PnmReader in(std::move(data), path);
  const bool binary = in.magic() == "P5";
  const long width = in.number();
  const long height = in.number();
  const long maxval = in.number();
  if (width <= 0 || height <= 0 || maxval <= 0 || maxval > 65535)
    throw FormatError("invalid PGM header: " + path.string());
  GrayImage img(static_cast<int>(height), static_cast<int>(width));
  if (binary) {
    in.end_header();
    const std::size_t bytes = maxval > 255 ? 2 : 1;
    if (in.remaining() < img.size() * bytes) throw IoError("truncated PGM: " + path.string());
    for (auto& px : img.pixels) {
      long v = in.byte();
      if (bytes == 2) v = (v << 8) | in.byte();
      px = rescale(v, maxval);
    }
  } else {
    for (auto& px : img.pixels) px = rescale(in.number(), maxval);
  }
  return img;
}

}  // namespace

GrayImage load_grayscale(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string head(8, '\0');
  in.read(head.data(), 8);
  head.resize(static_cast<std::size_t>(in.gcount()));

  static constexpr unsigned char kPngSig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  if (head.size() == 8 && std::equal(head.begin(), head.end(), std::begin(kPngSig),
                                     [](char a, unsigned char b) {
                                       return static_cast<unsigned char>(a) == b;
                                     })) {
    in.close();
    return read_png(path);
  }
  if (head.size() >= 2 && head[0] == 'P' && (head[1] == '5' || head[1] == '2')) {
    in.seekg(0);
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return read_pgm(path, std::move(data));
  }
  throw FormatError("unsupported image format: " + path.string());
}

void write_png(const fs::path& path, const GrayImage& img) {
  if (img.empty()) throw InvalidInput("write_png: empty image");
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(img.width);
  image.height = static_cast<png_uint_32>(img.height);
  image.format = PNG_FORMAT_GRAY;

  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&image, nullptr, &size, 0, img.pixels.data(), 0, nullptr))
    throw IoError("PNG encoding failed for " + path.string() + ": " + image.message);
  std::string bytes(size, '\0');
  if (!png_image_write_to_memory(&image, bytes.data(), &size, 0, img.pixels.data(), 0,
                                 nullptr))
    throw IoError("PNG encoding failed for " + path.string() + ": " + image.message);
  bytes.resize(size);
  detail::write_file_atomic(path, bytes);
}

}  // namespace cita::datasets
