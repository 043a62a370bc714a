#include "cita/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

namespace cita::synthetic {

namespace {

enum class Family { sinusoid, checkerboard, smooth_noise };

struct ClassSpec {
  const char* name;
  Family family;
  double scale;        // period (sinusoid), square side (checker), blur sigma (noise)
  double orientation;  // degrees, sinusoids only
};

// Periods and square sizes are distinct across the whole table so that no
// class is a rotated copy of another.
constexpr ClassSpec kClasses[] = {
    {"sine_p5_0", Family::sinusoid, 5.0, 0.0},
    {"sine_p9_30", Family::sinusoid, 9.0, 30.0},
    {"sine_p14_0", Family::sinusoid, 14.0, 0.0},
    {"sine_p22_60", Family::sinusoid, 22.0, 60.0},
    {"checker_2", Family::checkerboard, 2.0, 0.0},
    {"checker_4", Family::checkerboard, 4.0, 0.0},
    {"checker_7", Family::checkerboard, 7.0, 0.0},
    {"checker_12", Family::checkerboard, 12.0, 0.0},
    {"noise_s1", Family::smooth_noise, 1.0, 0.0},
    {"noise_s2", Family::smooth_noise, 2.0, 0.0},
    {"noise_s4", Family::smooth_noise, 4.0, 0.0},
};
constexpr int kClassCount = static_cast<int>(std::size(kClasses));

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double normal(std::mt19937_64& rng) {
  // Box-Muller on the engine's raw output, so values are library independent.
  const double u1 = (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<double> gaussian_blur(const std::vector<double>& src, int n, double sigma) {
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> kernel(2 * radius + 1);
  double norm = 0.0;
  for (int k = -radius; k <= radius; ++k)
    norm += kernel[k + radius] = std::exp(-0.5 * k * k / (sigma * sigma));
  for (double& k : kernel) k /= norm;

  auto wrap = [n](int i) { return ((i % n) + n) % n; };
  std::vector<double> tmp(src.size()), out(src.size());
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k) acc += kernel[k + radius] * src[r * n + wrap(c + k)];
      tmp[r * n + c] = acc;
    }
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k) acc += kernel[k + radius] * tmp[wrap(r + k) * n + c];
      out[r * n + c] = acc;
    }
  return out;
}

}  // namespace

std::vector<std::string> class_names() {
  std::vector<std::string> names;
  for (const auto& c : kClasses) names.emplace_back(c.name);
  return names;
}

GrayImage make_texture(int class_index, int sample, const CorpusOptions& options) {
  if (class_index < 0 || class_index >= kClassCount)
    throw InvalidInput("synthetic: class index out of range");
  if (options.size < 8) throw InvalidInput("synthetic: image size must be >= 8");
  const ClassSpec& spec = kClasses[class_index];
  const int n = options.size;
  std::mt19937_64 rng(mix(options.seed ^ mix(static_cast<std::uint64_t>(class_index) << 32 |
                                             static_cast<std::uint32_t>(sample))));

  const double mean = uniform(rng, 100.0, 150.0);
  const double amplitude = uniform(rng, 70.0, 95.0);
  std::vector<double> field(static_cast<std::size_t>(n) * n);

  switch (spec.family) {
    case Family::sinusoid: {
      const double phase = uniform(rng, 0.0, 2.0 * std::numbers::pi);
      const double theta = spec.orientation * std::numbers::pi / 180.0;
      const double kx = std::cos(theta) * 2.0 * std::numbers::pi / spec.scale;
      const double ky = std::sin(theta) * 2.0 * std::numbers::pi / spec.scale;
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) field[r * n + c] = std::sin(kx * c + ky * r + phase);
      break;
    }
    case Family::checkerboard: {
      const int side = static_cast<int>(spec.scale);
      const int dr = static_cast<int>(rng() % (2 * side));
      const int dc = static_cast<int>(rng() % (2 * side));
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
          field[r * n + c] = (((r + dr) / side + (c + dc) / side) % 2) ? 1.0 : -1.0;
      break;
    }
    case Family::smooth_noise: {
      for (double& v : field) v = normal(rng);
      field = gaussian_blur(field, n, spec.scale);
      double ss = 0.0;
      for (double v : field) ss += v * v;
      const double rms = std::sqrt(ss / static_cast<double>(field.size()));
      for (double& v : field) v /= 2.0 * rms;
      break;
    }
  }

  GrayImage img(n, n);
  for (std::size_t k = 0; k < field.size(); ++k) {
    const double v = mean + amplitude * field[k] + 3.0 * normal(rng);
    img.pixels[k] = static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
  }
  return img;
}

LabeledDataset make_corpus(const CorpusOptions& options) {
  if (options.samples_per_class < 1)
    throw InvalidInput("synthetic: samples_per_class must be >= 1");
  LabeledDataset ds;
  ds.class_names = class_names();
  for (int c = 0; c < kClassCount; ++c)
    for (int s = 0; s < options.samples_per_class; ++s) {
      char id[96];
      std::snprintf(id, sizeof id, "%s/%s_%02d", kClasses[c].name, kClasses[c].name, s);
      ds.ids.emplace_back(id);
      ds.images.push_back(make_texture(c, s, options));
      ds.labels.push_back(c);
    }
  return ds;
}

datasets::Manifest write_corpus(const LabeledDataset& corpus,
                                const std::filesystem::path& dir) {
  datasets::Manifest m;
  m.corpus = "synthetic";
  m.base_dir = dir;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const std::string rel = corpus.ids[i] + ".png";
    std::filesystem::create_directories((dir / rel).parent_path());
    datasets::write_png(dir / rel, corpus.images[i]);
    m.records.push_back({rel, corpus.class_names[corpus.labels[i]], ""});
  }
  datasets::write_manifest(m, dir / "manifest.csv");
  return m;
}

}  // namespace cita::synthetic
