#pragma once

// Procedural texture corpus for desk-scale experiments. Every class is a
// family of images sharing a generator and its structural parameters; the
// individual samples differ in phase/offset, contrast, mean level and a
// little additive sensor noise.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "cita/datasets.hpp"
#include "cita/labeled_dataset.hpp"

namespace cita::synthetic {

struct CorpusOptions {
  int size = 64;
  int samples_per_class = 10;
  std::uint64_t seed = 20140915;
};

/// Names of the generated classes, in label order.
std::vector<std::string> class_names();

/// One texture of the given class. Deterministic in (class, sample, seed).
GrayImage make_texture(int class_index, int sample, const CorpusOptions& options);

LabeledDataset make_corpus(const CorpusOptions& options = {});

/// Writes `<class>/<class>_<sample>.png` files and `manifest.csv` under dir.
datasets::Manifest write_corpus(const LabeledDataset& corpus,
                                const std::filesystem::path& dir);

}  // namespace cita::synthetic
