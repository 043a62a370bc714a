#pragma once

// Machine-readable outputs: feature matrices (CSV + JSON sidecar), evaluation
// reports (JSON + one-line CSV summary) and sweep tables (CSV). Doubles are
// written in shortest round-trip form, so reading a file back reproduces
// every value bit for bit.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "cita/classify.hpp"
#include "cita/descriptor.hpp"

namespace cita::io {

namespace fs = std::filesystem;

std::string format_double(double v);

/// One row per sample: `id,label,v1,...,vD`.
struct FeatureTable {
  std::vector<std::string> ids;
  std::vector<std::string> labels;
  Eigen::MatrixXd values;
};

void write_feature_csv(const FeatureTable& table, const fs::path& path);
/// Throws IoError / FormatError.
FeatureTable read_feature_csv(const fs::path& path);

/// Sidecar describing how a feature table was produced.
struct FeatureSidecar {
  std::string method;
  std::string manifest;
  std::size_t rows = 0;
  std::size_t dimension = 0;
  /// Present for method "cita".
  std::optional<CitaParams> params;
};

void write_feature_sidecar(const FeatureSidecar& sidecar, const fs::path& path);
FeatureSidecar read_feature_sidecar(const fs::path& path);

struct ReportContext {
  std::string method;
  std::string dataset;
  std::string mode;
  std::vector<std::string> class_names;  // indexed by label value
};

std::string report_json(const classify::EvalReport& report, const ReportContext& ctx);
/// Header line plus `method,dataset,mean,std,k,seed`.
std::string report_summary_csv(const classify::EvalReport& report, const ReportContext& ctx);

/// Header line plus one `gamma,nu,best_rate,best_iterations` row per cell.
std::string sweep_csv(const SweepResult& result);

}  // namespace cita::io
