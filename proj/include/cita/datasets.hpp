#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "cita/image.hpp"
#include "cita/labeled_dataset.hpp"

namespace cita::datasets {

namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// Manifest: CSV with header `path,label,split`. Paths are relative to the
// directory holding the manifest (absolute paths are kept as is).

struct ManifestRecord {
  std::string path;
  std::string label;
  std::string split;

  friend bool operator==(const ManifestRecord&, const ManifestRecord&) = default;
};

struct Manifest {
  std::string corpus;
  fs::path base_dir;
  std::vector<ManifestRecord> records;

  fs::path resolve(const ManifestRecord& record) const;
  /// Record id: the relative path without its extension. Variants keep the
  /// id stem so clean and perturbed records can be paired.
  static std::string id(const ManifestRecord& record);

  /// Throws InvalidInput on duplicate paths, empty labels, or (when
  /// min_classes > 0) fewer distinct labels than min_classes.
  void validate(int min_classes = 0) const;
  std::vector<std::string> class_names() const;  // sorted, distinct
};

Manifest read_manifest(const fs::path& path);
/// Writes to a temporary sibling and renames it into place.
void write_manifest(const Manifest& manifest, const fs::path& path);

/// Loads every image in the manifest as grayscale. Labels become indices
/// into the sorted distinct label list.
LabeledDataset load_dataset(const Manifest& manifest);

// ---------------------------------------------------------------------------
// Raster IO

/// Reads PNG (any bit depth / colour type) or binary/ASCII PGM. Colour is
/// reduced with luma weights 0.299/0.587/0.114 rounded half up; 16-bit
/// samples keep their high byte. Throws IoError if the file cannot be opened
/// or is truncated and FormatError for anything else unreadable.
GrayImage load_grayscale(const fs::path& path);

/// 8-bit grayscale PNG, written atomically.
void write_png(const fs::path& path, const GrayImage& img);

std::uint8_t luma(std::uint8_t r, std::uint8_t g, std::uint8_t b);

// ---------------------------------------------------------------------------
// Subimages

/// All non-overlapping tiles in row-major order from the top-left corner.
std::vector<GrayImage> extract_subimages(const GrayImage& img, int tile_h, int tile_w);

/// The first `count` grid tiles. When the grid holds exactly count - 1 tiles
/// (Brodatz: 640x640 at 200x200 gives 9 for 10 wanted) a tile centred in the
/// image is appended. Any other shortfall throws InvalidInput.
std::vector<GrayImage> extract_subimages(const GrayImage& img, int tile_h, int tile_w,
                                         int count);

// ---------------------------------------------------------------------------
// Perturbations

/// Each pixel is independently replaced with probability l by 0 or 255 with
/// equal chance. Deterministic for a given seed.
GrayImage salt_pepper(const GrayImage& img, double l, std::uint64_t seed);

inline constexpr int kRotationAngles[] = {0, 45, 90, 135, 180, 225, 270};

bool is_supported_angle(int degrees);

/// Counter-clockwise rotation. Multiples of 90 degrees permute indices
/// exactly. Odd multiples of 45 degrees resample bilinearly about the image
/// centre into a centred square of side floor(min(h, w) / sqrt 2), the
/// largest axis-aligned square inside the rotated footprint.
GrayImage rotate(const GrayImage& img, int degrees);

struct PerturbationSpec {
  enum class Kind { salt_pepper, rotation };
  Kind kind = Kind::salt_pepper;
  double intensity = 0.0;  // salt_pepper
  std::vector<int> angles{std::begin(kRotationAngles), std::end(kRotationAngles)};
  std::uint64_t seed = 0;

  void validate() const;
};

struct VariantResult {
  Manifest manifest;
  fs::path manifest_path;
  std::vector<std::string> failures;  // one message per record that failed
};

/// Writes perturbed PNGs and `manifest.csv` under out_dir. Noise keeps one
/// output per record, rotation writes one per angle (`<id>_rot<angle>.png`).
/// Per-record noise seeds derive from (spec.seed, record index) so output
/// does not depend on scheduling.
VariantResult build_variant(const Manifest& source, const PerturbationSpec& spec,
                            const fs::path& out_dir);

// ---------------------------------------------------------------------------
// Clean/noisy pairing

enum class SplitMode { both_noisy, train_clean_test_noisy };

struct PairedManifests {
  SplitMode mode;
  Manifest train_side;
  Manifest test_side;
};

/// both_noisy trains and tests on the noisy corpus; train_clean_test_noisy
/// trains on clean records and tests on their noisy counterparts. Throws
/// InvalidInput unless both manifests list the same ids and labels in the
/// same order.
PairedManifests split_protocol(const Manifest& clean, const Manifest& noisy,
                               SplitMode mode);

}  // namespace cita::datasets
