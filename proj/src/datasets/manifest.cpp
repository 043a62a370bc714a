#include "cita/datasets.hpp"

#include <algorithm>
#include <exception>
#include <fstream>
#include <set>
#include <sstream>

#include "csv.hpp"

namespace cita::datasets {

fs::path Manifest::resolve(const ManifestRecord& record) const {
  const fs::path p(record.path);
  return p.is_absolute() ? p : base_dir / p;
}

std::string Manifest::id(const ManifestRecord& record) {
  fs::path p(record.path);
  p.replace_extension();
  return p.generic_string();
}

void Manifest::validate(int min_classes) const {
  std::set<std::string> seen;
  for (const auto& r : records) {
    if (r.path.empty()) throw InvalidInput("manifest: record with empty path");
    if (r.label.empty()) throw InvalidInput("manifest: record " + r.path + " has no label");
    if (!seen.insert(r.path).second)
      throw InvalidInput("manifest: duplicate path " + r.path);
  }
  if (min_classes > 0 && static_cast<int>(class_names().size()) < min_classes)
    throw InvalidInput("manifest: need at least " + std::to_string(min_classes) +
                       " classes");
}

std::vector<std::string> Manifest::class_names() const {
  std::set<std::string> names;
  for (const auto& r : records) names.insert(r.label);
  return {names.begin(), names.end()};
}

Manifest read_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest " + path.string());

  Manifest m;
  m.base_dir = path.parent_path();
  m.corpus = path.parent_path().filename().string();
  std::string line;
  if (!std::getline(in, line)) throw FormatError("manifest " + path.string() + " is empty");
  const auto header = detail::split_csv_line(line);
  auto column = [&](std::string_view name) -> int {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return static_cast<int>(i);
    return -1;
  };
  const int path_col = column("path");
  const int label_col = column("label");
  const int split_col = column("split");
  if (path_col < 0 || label_col < 0)
    throw FormatError("manifest " + path.string() + ": header must contain path,label");

  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto fields = detail::split_csv_line(line);
    const auto need = static_cast<std::size_t>(std::max(path_col, label_col));
    if (fields.size() <= need)
      throw FormatError("manifest " + path.string() + ":" + std::to_string(line_no) +
                        ": too few fields");
    ManifestRecord r{fields[path_col], fields[label_col], {}};
    if (split_col >= 0 && static_cast<std::size_t>(split_col) < fields.size())
      r.split = fields[split_col];
    m.records.push_back(std::move(r));
  }
  return m;
}

void write_manifest(const Manifest& manifest, const fs::path& path) {
  std::ostringstream out;
  out << "path,label,split\n";
  for (const auto& r : manifest.records)
    out << detail::csv_field(r.path) << ',' << detail::csv_field(r.label) << ','
        << detail::csv_field(r.split) << '\n';
  detail::write_file_atomic(path, out.str());
}

LabeledDataset load_dataset(const Manifest& manifest) {
  LabeledDataset ds;
  ds.class_names = manifest.class_names();
  const auto n = manifest.records.size();
  ds.ids.resize(n);
  ds.images.resize(n);
  ds.labels.resize(n);
  std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < n; ++i) {
    const auto& r = manifest.records[i];
    ds.ids[i] = Manifest::id(r);
    ds.labels[i] = static_cast<int>(
        std::lower_bound(ds.class_names.begin(), ds.class_names.end(), r.label) -
        ds.class_names.begin());
    try {
      ds.images[i] = load_grayscale(manifest.resolve(r));
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return ds;
}

}  // namespace cita::datasets
