#include "cita/datasets.hpp"

#include <cstdio>

namespace cita::datasets {

void PerturbationSpec::validate() const {
  if (kind == Kind::salt_pepper) {
    if (!(intensity >= 0.0 && intensity <= 1.0))
      throw InvalidInput("noise intensity must lie in [0, 1]");
  } else {
    if (angles.empty()) throw InvalidInput("rotation variant needs at least one angle");
    for (int a : angles)
      if (!is_supported_angle(a))
        throw InvalidInput("unsupported rotation angle " + std::to_string(a));
  }
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::string rotation_suffix(int degrees) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "_rot%03d", degrees);
  return buf;
}

}  // namespace

VariantResult build_variant(const Manifest& source, const PerturbationSpec& spec,
                            const fs::path& out_dir) {
  spec.validate();
  source.validate();
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());
  if (fs::weakly_canonical(out_dir) == fs::weakly_canonical(source.base_dir.empty()
                                                                ? fs::path(".")
                                                                : source.base_dir))
    throw InvalidInput("variant output directory must differ from the source corpus");

  const bool rotation = spec.kind == PerturbationSpec::Kind::rotation;
  const std::size_t per_record = rotation ? spec.angles.size() : 1;
  const std::size_t n = source.records.size();

  VariantResult result;
  result.manifest.corpus = source.corpus + (rotation ? "_rotated" : "_noisy");
  result.manifest.base_dir = out_dir;
  result.manifest.records.resize(n * per_record);
  std::vector<std::string> errors(n);

#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < n; ++i) {
    const auto& record = source.records[i];
    const std::string id = Manifest::id(record);
    try {
      const GrayImage img = load_grayscale(source.resolve(record));
      for (std::size_t a = 0; a < per_record; ++a) {
        const std::string rel =
            id + (rotation ? rotation_suffix(spec.angles[a]) : std::string()) + ".png";
        const fs::path dest = out_dir / rel;
        fs::create_directories(dest.parent_path());
        write_png(dest, rotation ? rotate(img, spec.angles[a])
                                 : salt_pepper(img, spec.intensity,
                                               splitmix64(spec.seed + i)));
        result.manifest.records[i * per_record + a] = {rel, record.label, record.split};
      }
    } catch (const std::exception& e) {
      errors[i] = record.path + ": " + e.what();
    }
  }

  for (auto& e : errors)
    if (!e.empty()) result.failures.push_back(std::move(e));
  result.manifest_path = out_dir / "manifest.csv";
  if (result.failures.empty()) {
    result.manifest.validate();
    write_manifest(result.manifest, result.manifest_path);
  }
  return result;
}

PairedManifests split_protocol(const Manifest& clean, const Manifest& noisy,
                               SplitMode mode) {
  if (clean.records.size() != noisy.records.size())
    throw InvalidInput("split_protocol: manifests differ in record count");
  for (std::size_t i = 0; i < clean.records.size(); ++i) {
    const auto& a = clean.records[i];
    const auto& b = noisy.records[i];
    if (Manifest::id(a) != Manifest::id(b) || a.label != b.label)
      throw InvalidInput("split_protocol: record " + std::to_string(i) + " (" +
                         Manifest::id(a) + ") has no matching noisy counterpart");
  }
  if (mode == SplitMode::both_noisy) return {mode, noisy, noisy};
  return {mode, clean, noisy};
}

}  // namespace cita::datasets
