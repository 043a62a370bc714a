#include "cita/cli.hpp"

#include <omp.h>

#include <exception>
#include <filesystem>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "cita/baselines.hpp"
#include "cita/classify.hpp"
#include "cita/datasets.hpp"
#include "cita/descriptor.hpp"
#include "cita/feature_io.hpp"
#include "cita/synthetic.hpp"
#include "csv.hpp"

namespace cita::cli {

namespace fs = std::filesystem;

namespace {

constexpr double kDefaultGammas[] = {0.01, 0.02, 0.03, 0.04, 0.05, 0.06, 0.07, 0.08};

bool is_cita(const std::string& method) { return method == "cita"; }

datasets::Manifest load_manifest(const std::string& path, int min_classes) {
  if (path.empty()) throw InvalidInput("--manifest is required");
  if (!fs::exists(path)) throw IoError("manifest not found: " + path);
  auto m = datasets::read_manifest(path);
  if (m.records.empty()) throw InvalidInput("manifest " + path + " has no records");
  m.validate(min_classes);
  return m;
}

void ensure_out_dir(const std::string& out) {
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw IoError("cannot create output directory " + out + ": " + ec.message());
}

struct ComputedFeatures {
  io::FeatureTable table;
  std::vector<int> labels;
  std::vector<std::string> class_names;
};

// Loads every image and computes one feature row per record, in manifest
// order. Unreadable images are collected and reported together.
ComputedFeatures compute_features(const datasets::Manifest& manifest,
                                  const RunConfig& cfg) {
  std::optional<baselines::Method> baseline;
  if (!is_cita(cfg.method)) baseline = baselines::parse_method(cfg.method);

  const auto n = manifest.records.size();
  const auto dim = baseline ? baselines::dimension(*baseline)
                            : static_cast<std::size_t>(cfg.params.iterations);
  ComputedFeatures out;
  out.class_names = manifest.class_names();
  out.table.values.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(dim));
  out.table.ids.resize(n);
  out.table.labels.resize(n);
  out.labels.resize(n);
  std::vector<std::string> errors(n);
  std::vector<bool> io_failure(n, false);

#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < n; ++i) {
    const auto& rec = manifest.records[i];
    out.table.ids[i] = datasets::Manifest::id(rec);
    out.table.labels[i] = rec.label;
    out.labels[i] = static_cast<int>(
        std::lower_bound(out.class_names.begin(), out.class_names.end(), rec.label) -
        out.class_names.begin());
    try {
      const GrayImage img = datasets::load_grayscale(manifest.resolve(rec));
      const std::vector<double> v =
          baseline ? baselines::compute(*baseline, img)
                   : extract(img, cfg.params, {}, ca::Execution::serial).values;
      for (std::size_t c = 0; c < dim; ++c) out.table.values(i, c) = v[c];
    } catch (const InvalidInput& e) {
      errors[i] = rec.path + ": " + e.what();
    } catch (const std::exception& e) {
      errors[i] = rec.path + ": " + e.what();
      io_failure[i] = true;
    }
  }

  std::size_t failures = 0;
  bool any_io = false;
  for (std::size_t i = 0; i < n; ++i)
    if (!errors[i].empty()) {
      std::cerr << "error: " << errors[i] << '\n';
      ++failures;
      any_io = any_io || io_failure[i];
    }
  if (failures > 0) {
    const std::string msg = std::to_string(failures) + " of " + std::to_string(n) +
                            " images failed";
    if (any_io) throw IoError(msg);
    throw InvalidInput(msg);
  }
  return out;
}

void check_method(const std::string& method) {
  if (!is_cita(method) && !baselines::parse_method(method))
    throw CLI::ValidationError("--method", "unknown method '" + method + "'");
}

// --- extract ---------------------------------------------------------------

int cmd_extract(const RunConfig& cfg) {
  const auto manifest = load_manifest(cfg.manifest, 0);
  if (is_cita(cfg.method)) cfg.params.validate();
  auto features = compute_features(manifest, cfg);
  ensure_out_dir(cfg.out);

  const fs::path csv = fs::path(cfg.out) / "features.csv";
  io::write_feature_csv(features.table, csv);
  io::FeatureSidecar sidecar{cfg.method, cfg.manifest,
                             static_cast<std::size_t>(features.table.values.rows()),
                             static_cast<std::size_t>(features.table.values.cols()),
                             std::nullopt};
  if (is_cita(cfg.method)) sidecar.params = cfg.params;
  io::write_feature_sidecar(sidecar, fs::path(cfg.out) / "features.json");
  std::cout << csv.string() << '\n';
  return kOk;
}

// --- evaluate --------------------------------------------------------------

int cmd_evaluate(const RunConfig& cfg) {
  if (cfg.k < 2) throw InvalidInput("--k must be >= 2");
  if (!(cfg.shrinkage >= 0.0 && cfg.shrinkage <= 1.0))
    throw InvalidInput("--shrinkage must lie in [0, 1]");

  Eigen::MatrixXd train, test;
  std::vector<int> labels;
  std::vector<std::string> class_names;
  std::string dataset;

  if (!cfg.features.empty()) {
    if (!cfg.test_manifest.empty())
      throw InvalidInput("--features cannot be combined with --test-manifest");
    auto table = io::read_feature_csv(cfg.features);
    if (table.values.rows() == 0) throw InvalidInput("feature file has no rows");
    std::map<std::string, int> index;
    for (const auto& l : table.labels) index.emplace(l, 0);
    for (auto& [name, id] : index) {
      id = static_cast<int>(class_names.size());
      class_names.push_back(name);
    }
    for (const auto& l : table.labels) labels.push_back(index[l]);
    train = test = table.values;
    dataset = fs::path(cfg.features).parent_path().filename().string();
  } else {
    const auto clean = load_manifest(cfg.manifest, 2);
    if (is_cita(cfg.method)) cfg.params.validate();
    dataset = clean.corpus;
    if (cfg.test_manifest.empty()) {
      auto f = compute_features(clean, cfg);
      train = test = f.table.values;
      labels = f.labels;
      class_names = f.class_names;
    } else {
      const auto noisy = load_manifest(cfg.test_manifest, 2);
      const auto mode = cfg.mode == "train_clean_test_noisy"
                            ? datasets::SplitMode::train_clean_test_noisy
                            : datasets::SplitMode::both_noisy;
      const auto paired = datasets::split_protocol(clean, noisy, mode);
      auto f_test = compute_features(paired.test_side, cfg);
      test = f_test.table.values;
      train = mode == datasets::SplitMode::both_noisy
                  ? test
                  : compute_features(paired.train_side, cfg).table.values;
      labels = f_test.labels;
      class_names = f_test.class_names;
      dataset = noisy.corpus;
    }
  }
  if (class_names.size() < 2) throw InvalidInput("evaluation needs at least two classes");

  const auto report =
      classify::evaluate_paired(train, test, labels, cfg.k, cfg.seed, cfg.shrinkage);
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';

  const io::ReportContext ctx{cfg.method, dataset,
                              cfg.test_manifest.empty() ? "clean" : cfg.mode, class_names};
  ensure_out_dir(cfg.out);
  detail::write_file_atomic(fs::path(cfg.out) / "report.json", io::report_json(report, ctx));
  const auto summary = io::report_summary_csv(report, ctx);
  detail::write_file_atomic(fs::path(cfg.out) / "summary.csv", summary);
  std::cout << summary.substr(summary.find('\n') + 1);
  return kOk;
}

// --- perturb ---------------------------------------------------------------

int cmd_perturb(const RunConfig& cfg) {
  const auto manifest = load_manifest(cfg.manifest, 0);
  datasets::PerturbationSpec spec;
  if (cfg.subcommand == "noise") {
    spec.kind = datasets::PerturbationSpec::Kind::salt_pepper;
    spec.intensity = cfg.noise_level;
    spec.seed = cfg.seed;
  } else {
    spec.kind = datasets::PerturbationSpec::Kind::rotation;
  }
  spec.validate();
  ensure_out_dir(cfg.out);
  const auto result = datasets::build_variant(manifest, spec, cfg.out);
  if (!result.failures.empty()) {
    for (const auto& f : result.failures) std::cerr << "error: " << f << '\n';
    std::cerr << result.failures.size() << " of " << manifest.records.size()
              << " images failed; no manifest written\n";
    return kIo;
  }
  std::cout << result.manifest_path.string() << '\n';
  return kOk;
}

// --- sweep -----------------------------------------------------------------

int cmd_sweep(const RunConfig& cfg) {
  if (cfg.k < 2) throw InvalidInput("--k must be >= 2");
  std::vector<double> gammas = cfg.gammas;
  if (gammas.empty()) gammas.assign(std::begin(kDefaultGammas), std::end(kDefaultGammas));
  std::vector<std::int64_t> nus = cfg.nus;
  if (nus.empty())
    for (std::int64_t nu = 0; nu <= 10; ++nu) nus.push_back(nu);
  for (double g : gammas)
    if (!(g >= 0.0 && g <= 1.0)) throw InvalidInput("gamma values must lie in [0, 1]");
  for (auto nu : nus)
    if (nu < 0) throw InvalidInput("nu values must be >= 0");

  const auto manifest = load_manifest(cfg.manifest, 2);
  const auto dataset = datasets::load_dataset(manifest);
  const RateEvaluator evaluator = [&](const Eigen::MatrixXd& x, std::span<const int> y) {
    return classify::evaluate(x, y, cfg.k, cfg.seed, cfg.shrinkage).mean_rate;
  };
  const auto result = sweep(dataset, gammas, nus,
                            SweepOptions{cfg.params.iterations, cfg.stride}, evaluator);
  ensure_out_dir(cfg.out);
  const fs::path out = fs::path(cfg.out) / "sweep.csv";
  detail::write_file_atomic(out, io::sweep_csv(result));
  std::cout << out.string() << '\n';
  return kOk;
}

// --- synth -----------------------------------------------------------------

int cmd_synth(const RunConfig& cfg) {
  synthetic::CorpusOptions opts{cfg.synth_size, cfg.synth_samples, cfg.seed};
  const auto corpus = synthetic::make_corpus(opts);
  ensure_out_dir(cfg.out);
  synthetic::write_corpus(corpus, cfg.out);
  std::cout << (fs::path(cfg.out) / "manifest.csv").string() << '\n';
  return kOk;
}

void add_cita_flags(CLI::App* app, RunConfig& cfg) {
  app->add_option("--nu", cfg.params.nu, "Surface roughness threshold")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app->add_option("--gamma", cfg.params.gamma, "Pitting power")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
}

int dispatch(const RunConfig& cfg) {
  if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
  if (cfg.command == "extract") return cmd_extract(cfg);
  if (cfg.command == "evaluate") return cmd_evaluate(cfg);
  if (cfg.command == "perturb") return cmd_perturb(cfg);
  if (cfg.command == "sweep") return cmd_sweep(cfg);
  if (cfg.command == "synth") return cmd_synth(cfg);
  return kUsage;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  RunConfig cfg;
  CLI::App app{"Corrosion-inspired texture analysis toolkit"};
  app.set_config("--config", "", "TOML/INI file supplying defaults for any flag");
  app.require_subcommand(1);
  app.add_option("--threads", cfg.threads, "Worker threads (0: OpenMP default)")
      ->check(CLI::NonNegativeNumber);

  auto* extract_cmd = app.add_subcommand("extract", "Compute one feature row per image");
  auto* evaluate_cmd = app.add_subcommand("evaluate", "LDA with stratified k-fold CV");
  auto* perturb_cmd = app.add_subcommand("perturb", "Build a noisy or rotated corpus");
  auto* sweep_cmd = app.add_subcommand("sweep", "Scan (gamma, nu) and prefix lengths");
  auto* synth_cmd = app.add_subcommand("synth", "Write the procedural texture corpus");

  for (auto* sub : {extract_cmd, evaluate_cmd, perturb_cmd, sweep_cmd, synth_cmd}) {
    sub->add_option("--out", cfg.out, "Output directory")->capture_default_str();
    sub->add_option("--threads", cfg.threads, "Worker threads (0: OpenMP default)")
        ->check(CLI::NonNegativeNumber);
  }
  for (auto* sub : {extract_cmd, evaluate_cmd, perturb_cmd, sweep_cmd})
    sub->add_option("--manifest", cfg.manifest, "Corpus manifest (path,label,split)");

  for (auto* sub : {extract_cmd, evaluate_cmd}) {
    sub->add_option("--method", cfg.method, "cita|fourier|glcm|gldm|gabor|lbpv")
        ->capture_default_str();
    add_cita_flags(sub, cfg);
    sub->add_option("--iterations", cfg.params.iterations, "CA steps")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  }

  for (auto* sub : {evaluate_cmd, sweep_cmd}) {
    sub->add_option("--k", cfg.k, "Folds")->check(CLI::Range(2, 1000))->capture_default_str();
    sub->add_option("--shrinkage", cfg.shrinkage, "LDA covariance shrinkage")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
  }
  for (auto* sub : {evaluate_cmd, sweep_cmd, perturb_cmd, synth_cmd})
    sub->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();

  evaluate_cmd->add_option("--features", cfg.features, "Evaluate an existing features.csv");
  evaluate_cmd->add_option("--test-manifest", cfg.test_manifest,
                           "Perturbed counterpart of --manifest");
  evaluate_cmd->add_option("--mode", cfg.mode, "Pairing with --test-manifest")
      ->check(CLI::IsMember({"both_noisy", "train_clean_test_noisy"}))
      ->capture_default_str();

  auto* noise_cmd = perturb_cmd->add_subcommand("noise", "Salt-and-pepper noise");
  noise_cmd->add_option("--l", cfg.noise_level, "Share of pixels replaced")
      ->required()
      ->check(CLI::Range(0.0, 1.0));
  noise_cmd->add_option("--manifest", cfg.manifest, "Corpus manifest");
  noise_cmd->add_option("--seed", cfg.seed, "Random seed");
  noise_cmd->add_option("--out", cfg.out, "Output directory");
  noise_cmd->fallthrough();
  auto* rotate_cmd = perturb_cmd->add_subcommand("rotate", "Seven rotations per image");
  rotate_cmd->add_option("--manifest", cfg.manifest, "Corpus manifest");
  rotate_cmd->add_option("--out", cfg.out, "Output directory");
  rotate_cmd->fallthrough();
  perturb_cmd->require_subcommand(1);

  sweep_cmd->add_option("--gammas", cfg.gammas, "Comma-separated gamma values")
      ->delimiter(',')
      ->check(CLI::Range(0.0, 1.0));
  sweep_cmd->add_option("--nus", cfg.nus, "Comma-separated nu values")
      ->delimiter(',')
      ->check(CLI::NonNegativeNumber);
  int sweep_budget = 200;
  sweep_cmd->add_option("--iterations", sweep_budget, "Iteration budget")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sweep_cmd->add_option("--stride", cfg.stride, "Prefix length step")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  synth_cmd->add_option("--size", cfg.synth_size, "Image side")
      ->check(CLI::Range(8, 4096))
      ->capture_default_str();
  synth_cmd->add_option("--samples", cfg.synth_samples, "Samples per class")
      ->check(CLI::Range(1, 100000))
      ->capture_default_str();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    for (auto* sub : app.get_subcommands()) {
      cfg.command = sub->get_name();
      for (auto* leaf : sub->get_subcommands()) cfg.subcommand = leaf->get_name();
    }
    if (cfg.command == "sweep") cfg.params.iterations = sweep_budget;
    if (cfg.command == "extract" || cfg.command == "evaluate") check_method(cfg.method);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    return dispatch(cfg);
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataValidation;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  }
}

int run(int argc, char** argv) { return run(std::vector<std::string>(argv, argv + argc)); }

}  // namespace cita::cli
