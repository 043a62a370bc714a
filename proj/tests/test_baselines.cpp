#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <random>

#include "cita/baselines.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace cita;
using namespace cita::baselines;

namespace {

GrayImage rotate90(const GrayImage& img) {
  return test::to_image(test::rot90(test::to_grid(img)));
}

GrayImage rotate180(const GrayImage& img) {
  GrayImage out(img.height, img.width);
  for (int r = 0; r < img.height; ++r)
    for (int c = 0; c < img.width; ++c)
      out.at(r, c) = img.at(img.height - 1 - r, img.width - 1 - c);
  return out;
}

GrayImage tone(int h, int w, double fu, double fv, double amplitude = 100.0) {
  GrayImage img(h, w);
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c)
      img.at(r, c) = static_cast<std::uint8_t>(std::lround(
          128.0 + amplitude * std::cos(2.0 * std::numbers::pi * (fu * c + fv * r))));
  return img;
}

// Pair enumeration with explicit co-occurrence bookkeeping in a map.
std::array<double, 4> glcm_oracle(const GrayImage& img, int dr, int dc) {
  std::map<std::pair<int, int>, double> p;
  double n = 0;
  for (int r = 0; r < img.height; ++r)
    for (int c = 0; c < img.width; ++c) {
      const int r2 = r + dr, c2 = c + dc;
      if (r2 < 0 || c2 < 0 || r2 >= img.height || c2 >= img.width) continue;
      p[{img.at(r, c) / 4, img.at(r2, c2) / 4}] += 1;
      n += 1;
    }
  double mi = 0, mj = 0;
  for (auto& [ij, v] : p) {
    v /= n;
    mi += ij.first * v;
    mj += ij.second * v;
  }
  double con = 0, ene = 0, hom = 0, vi = 0, vj = 0, cov = 0;
  for (const auto& [ij, v] : p) {
    const auto [i, j] = ij;
    con += (i - j) * (i - j) * v;
    ene += v * v;
    hom += v / (1 + std::abs(i - j));
    vi += (i - mi) * (i - mi) * v;
    vj += (j - mj) * (j - mj) * v;
    cov += (i - mi) * (j - mj) * v;
  }
  const double corr = vi > 0 && vj > 0 ? cov / std::sqrt(vi * vj) : 0.0;
  return {con, corr, ene, hom};
}

std::array<double, 5> gldm_oracle(const GrayImage& img, int dr, int dc) {
  std::map<int, double> p;
  double n = 0;
  for (int r = 0; r < img.height; ++r)
    for (int c = 0; c < img.width; ++c) {
      const int r2 = r + dr, c2 = c + dc;
      if (r2 < 0 || c2 < 0 || r2 >= img.height || c2 >= img.width) continue;
      p[std::abs(int(img.at(r, c)) - int(img.at(r2, c2)))] += 1;
      n += 1;
    }
  double con = 0, asm_ = 0, ent = 0, mean = 0, idm = 0;
  for (auto [k, v] : p) {
    v /= n;
    con += double(k) * k * v;
    asm_ += v * v;
    ent -= v * std::log(v);
    mean += k * v;
    idm += v / (1.0 + double(k) * k);
  }
  return {con, asm_, ent, mean, idm};
}

template <std::size_t N>
void check_close(const std::array<double, N>& a, const std::array<double, N>& b) {
  for (std::size_t i = 0; i < N; ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
}

}  // namespace

TEST_CASE("method registry") {
  for (auto m : kAllMethods) {
    CHECK(parse_method(method_name(m)) == m);
  }
  CHECK_FALSE(parse_method("cita").has_value());
  CHECK_FALSE(parse_method("").has_value());
  CHECK(dimension(Method::fourier) == 64);
  CHECK(dimension(Method::glcm) == 32);
  CHECK(dimension(Method::gldm) == 60);
  CHECK(dimension(Method::gabor) == 64);
  CHECK(dimension(Method::lbpv) == 10);
}

TEST_CASE("every method returns its declared length on random images") {
  std::mt19937_64 rng(1);
  for (auto [h, w] : {std::pair{6, 6}, std::pair{20, 13}, std::pair{33, 40}}) {
    const auto img = test::random_image(rng, h, w);
    for (auto m : kAllMethods) {
      const auto v = compute(m, img);
      CHECK(v.size() == dimension(m));
      for (double x : v) CHECK(std::isfinite(x));
      CHECK(compute(m, img) == v);
    }
  }
}

TEST_CASE("minimum sizes") {
  CHECK_THROWS_AS(fourier_descriptors(GrayImage(1, 5)), InvalidInput);
  CHECK_THROWS_AS(glcm_haralick(GrayImage(2, 9)), InvalidInput);
  CHECK_THROWS_AS(gldm(GrayImage(5, 9)), InvalidInput);
  CHECK_THROWS_AS(gabor_bank(GrayImage(1, 1)), InvalidInput);
  CHECK_THROWS_AS(lbpv(GrayImage(2, 2)), InvalidInput);
  CHECK_NOTHROW(gldm(GrayImage(6, 6)));
}

TEST_CASE("constant image fixed points") {
  const GrayImage flat(16, 16, 91);

  const auto fourier = fourier_descriptors(flat);
  CHECK(std::count_if(fourier.begin(), fourier.end(), [](double x) { return x != 0.0; }) == 1);
  CHECK(fourier[0] == 91.0 * 256);

  const auto glcm = glcm_haralick(flat);
  for (int block = 0; block < 8; ++block) {
    CHECK(glcm[block * 4 + 0] == 0.0);
    CHECK(glcm[block * 4 + 1] == 0.0);
    CHECK(glcm[block * 4 + 2] == 1.0);
    CHECK(glcm[block * 4 + 3] == 1.0);
  }

  const auto d = gldm(flat);
  for (int block = 0; block < 12; ++block) {
    CHECK(d[block * 5 + 0] == 0.0);
    CHECK(d[block * 5 + 1] == 1.0);
    CHECK(d[block * 5 + 2] == 0.0);
    CHECK(d[block * 5 + 3] == 0.0);
    CHECK(d[block * 5 + 4] == 1.0);
  }

  for (double e : gabor_bank(flat)) CHECK(std::abs(e) < 1e-12);
  for (double x : lbpv(flat)) CHECK(x == 0.0);
}

TEST_CASE("fourier_sector binning") {
  CHECK(fourier_sector(0.0, 0.0) == 0);
  CHECK(fourier_sector(0.0625, 0.0) == 0);   // band edge goes to the lower band
  CHECK(fourier_sector(0.07, 0.0) == 8);
  CHECK(fourier_sector(-0.07, 0.0) == 8);    // angle pi folds onto 0
  CHECK(fourier_sector(0.0, 0.3) == 4 * 8 + 3);  // pi/2 is the edge of wedge 3
  CHECK(fourier_sector(0.0, -0.3) == 4 * 8 + 3);
  CHECK(fourier_sector(0.5, 0.5) == 7 * 8 + 1);  // past Nyquist, angle pi/4
  CHECK(fourier_sector(0.5, 0.0) == 7 * 8);
}

TEST_CASE("fourier concentrates a pure tone in its sector") {
  // u = 0.125 sits on the first band edge, so the tone belongs to band 1.
  const auto img = tone(32, 32, 4.0 / 32, 0.0);
  const auto f = fourier_descriptors(img);
  double ac = std::accumulate(f.begin(), f.end(), 0.0) - f[0];
  const auto best = std::max_element(f.begin() + 1, f.end()) - f.begin();
  CHECK(best == 8);
  CHECK(f[8] > 0.95 * ac);
}

TEST_CASE("fourier is unchanged by a 180 degree rotation") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 5; ++trial) {
    const auto img = test::random_image(rng, 18, 25);
    const auto a = fourier_descriptors(img);
    const auto b = fourier_descriptors(rotate180(img));
    for (std::size_t i = 0; i < a.size(); ++i)
      CHECK(b[i] == doctest::Approx(a[i]).epsilon(1e-9));
  }
}

TEST_CASE("glcm matches pair enumeration") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const auto img = test::random_image(rng, 9 + trial, 12, trial * 10, 255);
    for (auto [dr, dc] : {std::pair{0, 1}, {-1, 1}, {-1, 0}, {-1, -1}, {0, 2}, {-2, -2}})
      check_close(haralick_for_offset(img, dr, dc), glcm_oracle(img, dr, dc));
    const auto all = glcm_haralick(img);
    check_close(std::array{all[4 * 4], all[4 * 4 + 1], all[4 * 4 + 2], all[4 * 4 + 3]},
                glcm_oracle(img, 0, 2));
  }
}

TEST_CASE("glcm on a one-pixel checkerboard") {
  GrayImage board(8, 8);
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 8; ++c) board.at(r, c) = (r + c) % 2 ? 255 : 0;
  // Horizontal neighbours always differ: levels 0 and 63 in equal shares.
  const auto h = haralick_for_offset(board, 0, 1);
  CHECK(h[0] == doctest::Approx(63.0 * 63.0));
  CHECK(h[1] == doctest::Approx(-1.0));
  CHECK(h[2] == doctest::Approx(0.5));
  CHECK(h[3] == doctest::Approx(1.0 / 64.0));
  // Diagonal neighbours always agree; of the 49 pairs 24 are dark, 25 light.
  const auto d = haralick_for_offset(board, -1, 1);
  CHECK(d[0] == 0.0);
  CHECK(d[1] == doctest::Approx(1.0));
  CHECK(d[2] == doctest::Approx((24.0 * 24.0 + 25.0 * 25.0) / (49.0 * 49.0)));
  CHECK(d[3] == doctest::Approx(1.0));
}

TEST_CASE("gldm matches pair enumeration") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 10; ++trial) {
    const auto img = test::random_image(rng, 10, 7 + trial);
    for (auto [dr, dc] : {std::pair{0, 1}, {-3, 3}, {-5, 0}, {-1, -1}})
      check_close(gldm_for_offset(img, dr, dc), gldm_oracle(img, dr, dc));
    const auto all = gldm(img);
    for (std::size_t i = 0; i < all.size(); i += 5) {
      CHECK(all[i + 1] > 0.0);
      CHECK(all[i + 1] <= 1.0);
      CHECK(all[i + 2] >= 0.0);
    }
  }
}

TEST_CASE("gldm on vertical stripes") {
  // Columns alternate in pairs: 0 0 255 255 0 0 255 255.
  GrayImage stripes(8, 8);
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 8; ++c) stripes.at(r, c) = (c / 2) % 2 ? 255 : 0;
  // Horizontal h = 1: per row, 3 of the 7 pairs straddle a stripe edge.
  const auto s = gldm_for_offset(stripes, 0, 1);
  const double p = 3.0 / 7.0, q = 4.0 / 7.0;
  CHECK(s[0] == doctest::Approx(p * 255.0 * 255.0));
  CHECK(s[1] == doctest::Approx(p * p + q * q));
  CHECK(s[2] == doctest::Approx(-p * std::log(p) - q * std::log(q)));
  CHECK(s[3] == doctest::Approx(p * 255.0));
  CHECK(s[4] == doctest::Approx(q + p / (1.0 + 255.0 * 255.0)));
  // Vertical displacements never cross a stripe.
  const auto v = gldm_for_offset(stripes, -3, 0);
  CHECK(v[1] == 1.0);
  CHECK(v[3] == 0.0);
}

TEST_CASE("gabor frequencies are log spaced") {
  const auto f = gabor_frequencies();
  REQUIRE(f.size() == 8);
  CHECK(f.front() == doctest::Approx(0.01));
  CHECK(f.back() == doctest::Approx(0.4));
  for (std::size_t i = 2; i < f.size(); ++i)
    CHECK(f[i] / f[i - 1] == doctest::Approx(f[1] / f[0]));
}

TEST_CASE("gabor picks the filter matching an oriented tone") {
  const auto f = gabor_frequencies();
  const double target = std::round(f[6] * 128) / 128;  // nearest exact bin
  SUBCASE("horizontal variation") {
    const auto e = gabor_bank(tone(128, 128, target, 0.0));
    CHECK(std::max_element(e.begin(), e.end()) - e.begin() == 6 * 8 + 0);
  }
  SUBCASE("vertical variation") {
    const auto e = gabor_bank(tone(128, 128, 0.0, target));
    CHECK(std::max_element(e.begin(), e.end()) - e.begin() == 6 * 8 + 4);
  }
  SUBCASE("lower scale") {
    const double t3 = std::round(f[3] * 128) / 128;
    const auto e = gabor_bank(tone(128, 128, t3, 0.0));
    CHECK(std::max_element(e.begin(), e.end()) - e.begin() == 3 * 8 + 0);
  }
}

TEST_CASE("gabor energies are non-negative") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 5; ++trial)
    for (double e : gabor_bank(test::random_image(rng, 24, 17))) CHECK(e >= 0.0);
}

TEST_CASE("lbp_riu2_code") {
  const std::array<std::uint8_t, 8> all_high{9, 9, 9, 9, 9, 9, 9, 9};
  CHECK(lbp_riu2_code(5, all_high) == 8);
  CHECK(lbp_riu2_code(10, all_high) == 0);
  CHECK(lbp_riu2_code(9, all_high) == 8);  // ties count as set
  CHECK(lbp_riu2_code(5, {9, 9, 9, 0, 0, 0, 0, 0}) == 3);
  CHECK(lbp_riu2_code(5, {0, 0, 0, 0, 0, 0, 9, 9}) == 2);
  CHECK(lbp_riu2_code(5, {9, 0, 0, 0, 0, 0, 0, 9}) == 2);  // run wraps around
  CHECK(lbp_riu2_code(5, {9, 0, 9, 0, 9, 0, 9, 0}) == 9);
  CHECK(lbp_riu2_code(5, {9, 9, 0, 0, 9, 0, 0, 0}) == 9);
}

TEST_CASE("lbpv sums to one and is exact under 90 degree rotation") {
  std::mt19937_64 rng(16);
  for (int trial = 0; trial < 50; ++trial) {
    const auto img = test::random_image(rng, 16, 16);
    const auto h = lbpv(img);
    CHECK(std::accumulate(h.begin(), h.end(), 0.0) == doctest::Approx(1.0));
    for (double x : h) CHECK(x >= 0.0);
    auto r = img;
    for (int q = 0; q < 3; ++q) {
      r = rotate90(r);
      CHECK(lbpv(r) == h);
    }
  }
}
