#include "cita/feature_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "csv.hpp"
#include "json.hpp"

namespace cita::io {

using nlohmann::ordered_json;

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {
double parse_double(const std::string& s, const fs::path& path, int line) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw FormatError(path.string() + ":" + std::to_string(line) + ": bad number '" + s +
                      "'");
  return v;
}
}  // namespace

void write_feature_csv(const FeatureTable& table, const fs::path& path) {
  std::ostringstream out;
  out << "id,label";
  for (Eigen::Index c = 0; c < table.values.cols(); ++c) out << ",v" << (c + 1);
  out << '\n';
  for (Eigen::Index r = 0; r < table.values.rows(); ++r) {
    out << detail::csv_field(table.ids[r]) << ',' << detail::csv_field(table.labels[r]);
    for (Eigen::Index c = 0; c < table.values.cols(); ++c)
      out << ',' << format_double(table.values(r, c));
    out << '\n';
  }
  detail::write_file_atomic(path, out.str());
}

FeatureTable read_feature_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw FormatError(path.string() + " is empty");
  const auto header = detail::split_csv_line(line);
  if (header.size() < 3 || header[0] != "id" || header[1] != "label")
    throw FormatError(path.string() + ": header must start with id,label,v1");
  const std::size_t dim = header.size() - 2;

  FeatureTable t;
  std::vector<std::vector<double>> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = detail::split_csv_line(line);
    if (fields.size() != header.size())
      throw FormatError(path.string() + ":" + std::to_string(line_no) +
                        ": field count differs from header");
    t.ids.push_back(fields[0]);
    t.labels.push_back(fields[1]);
    std::vector<double> row(dim);
    for (std::size_t c = 0; c < dim; ++c) row[c] = parse_double(fields[c + 2], path, line_no);
    rows.push_back(std::move(row));
  }
  t.values.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(dim));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < dim; ++c) t.values(r, c) = rows[r][c];
  return t;
}

void write_feature_sidecar(const FeatureSidecar& s, const fs::path& path) {
  ordered_json j;
  j["method"] = s.method;
  j["manifest"] = s.manifest;
  j["rows"] = s.rows;
  j["dimension"] = s.dimension;
  if (s.params) {
    j["params"] = {{"nu", s.params->nu},
                   {"gamma", s.params->gamma},
                   {"iterations", s.params->iterations}};
  }
  detail::write_file_atomic(path, j.dump(2) + "\n");
}

FeatureSidecar read_feature_sidecar(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    const auto j = ordered_json::parse(in);
    FeatureSidecar s;
    s.method = j.at("method").get<std::string>();
    s.manifest = j.value("manifest", "");
    s.rows = j.at("rows").get<std::size_t>();
    s.dimension = j.at("dimension").get<std::size_t>();
    if (j.contains("params")) {
      const auto& p = j["params"];
      s.params = CitaParams{p.at("nu").get<std::int64_t>(), p.at("gamma").get<double>(),
                            p.at("iterations").get<int>()};
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

std::string report_json(const classify::EvalReport& r, const ReportContext& ctx) {
  auto name = [&](int label) {
    return label >= 0 && static_cast<std::size_t>(label) < ctx.class_names.size()
               ? ctx.class_names[label]
               : std::to_string(label);
  };
  ordered_json j;
  j["method"] = ctx.method;
  j["dataset"] = ctx.dataset;
  j["mode"] = ctx.mode;
  j["k"] = r.k;
  j["seed"] = r.seed;
  j["shrinkage"] = r.shrinkage;
  j["mean_success_rate"] = r.mean_rate;
  j["fold_std"] = r.std_rate;
  j["correct"] = r.correct;
  j["total"] = r.total;
  j["fold_success_rates"] = r.fold_rates;
  j["fold_sizes"] = r.fold_sizes;
  ordered_json classes = ordered_json::array();
  for (int c : r.classes) classes.push_back(name(c));
  j["classes"] = classes;
  j["confusion"] = r.confusion;
  j["warnings"] = r.warnings;
  return j.dump(2) + "\n";
}

std::string report_summary_csv(const classify::EvalReport& r, const ReportContext& ctx) {
  std::ostringstream out;
  out << "method,dataset,mean,std,k,seed\n"
      << detail::csv_field(ctx.method) << ',' << detail::csv_field(ctx.dataset) << ','
      << format_double(r.mean_rate) << ',' << format_double(r.std_rate) << ',' << r.k
      << ',' << r.seed << '\n';
  return out.str();
}

std::string sweep_csv(const SweepResult& result) {
  std::ostringstream out;
  out << "gamma,nu,best_rate,best_iterations\n";
  for (const auto& c : result.cells)
    out << format_double(c.gamma) << ',' << c.nu << ',' << format_double(c.best_rate) << ','
        << c.best_iterations << '\n';
  return out.str();
}

}  // namespace cita::io
