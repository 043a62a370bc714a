#pragma once

#include <string>
#include <vector>

#include "cita/image.hpp"

namespace cita {

/// Images held in memory with integer class indices into class_names.
struct LabeledDataset {
  std::vector<std::string> ids;
  std::vector<GrayImage> images;
  std::vector<int> labels;
  std::vector<std::string> class_names;

  std::size_t size() const { return images.size(); }
  int class_count() const { return static_cast<int>(class_names.size()); }
};

}  // namespace cita
