// Acceptance harness: one PASS/FAIL/SKIP line per criterion, non-zero exit if
// any criterion fails.

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "cita/baselines.hpp"
#include "cita/ca_core.hpp"
#include "cita/classify.hpp"
#include "cita/cli.hpp"
#include "cita/datasets.hpp"
#include "cita/descriptor.hpp"
#include "cita/synthetic.hpp"
#include "test_util.hpp"

using namespace cita;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  enum { pass, fail, skip } status = pass;
  std::string detail;
};

Outcome bad(std::string d) { return {Outcome::fail, std::move(d)}; }
Outcome check(bool good, std::string d) { return {good ? Outcome::pass : Outcome::fail, std::move(d)}; }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

int failures = 0;

void criterion(const char* id, const char* title, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = bad(std::string("exception: ") + e.what());
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const char* tag = out.status == Outcome::pass ? "PASS" : out.status == Outcome::fail ? "FAIL" : "SKIP";
  if (out.status == Outcome::fail) ++failures;
  std::printf("%s %-4s %-34s %7.2fs  %s\n", tag, id, title, secs, out.detail.c_str());
  std::fflush(stdout);
}

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

GrayImage transform(const GrayImage& img, int which) {
  auto g = test::to_grid(img);
  switch (which) {
    case 0: g = test::rot90(g); break;
    case 1: g = test::rot90(test::rot90(g)); break;
    case 2: g = test::rot90(test::rot90(test::rot90(g))); break;
    case 3: g = test::flip_h(g); break;
    default: g = test::flip_v(g); break;
  }
  return test::to_image(g);
}

std::vector<int> nearest_centroid(const Eigen::MatrixXd& x, std::span<const int> y,
                                  const Eigen::MatrixXd& probe) {
  std::map<int, std::pair<Eigen::VectorXd, int>> acc;
  for (std::size_t i = 0; i < y.size(); ++i) {
    auto& [sum, n] = acc[y[i]];
    if (n == 0) sum = Eigen::VectorXd::Zero(x.cols());
    sum += x.row(i).transpose();
    ++n;
  }
  std::vector<int> out;
  for (Eigen::Index r = 0; r < probe.rows(); ++r) {
    int best = 0;
    double best_d = INFINITY;
    for (const auto& [label, sn] : acc) {
      const double d = (probe.row(r).transpose() - sn.first / sn.second).squaredNorm();
      if (d < best_d) best_d = d, best = label;
    }
    out.push_back(best);
  }
  return out;
}

double cita_rate(const LabeledDataset& ds) {
  const auto x = extract_all(ds.images, default_params());
  return classify::evaluate(x, ds.labels, cli::kDefaultFolds, cli::kDefaultSeed).mean_rate;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Every regular file under dir, keyed by relative path.
std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file())
      files[fs::relative(e.path(), dir).generic_string()] = slurp(e.path());
  return files;
}

int tool(std::vector<std::string> args) {
  args.insert(args.begin(), "cita");
  return cli::run(args);
}

}  // namespace

int main() {
  const int default_threads = omp_get_max_threads();

  criterion("AC1", "step oracle equivalence", [] {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<int> nu(0, 10), g(1, 10);
    int mismatches = 0;
    for (int trial = 0; trial < 200; ++trial) {
      const CitaParams p{nu(rng), g(rng) / 100.0, 1};
      auto grid = test::random_grid(rng, 16, 16);
      for (int t = 0; t < 20; ++t) {
        const auto ref = ca::reference::step(grid, p);
        const auto fast = ca::step(grid, p, ca::Execution::parallel);
        const auto serial = ca::step(grid, p, ca::Execution::serial);
        if (!(fast.grid == ref.grid && fast.mass == ref.mass && serial.grid == ref.grid &&
              serial.mass == ref.mass))
          ++mismatches;
        grid = ref.grid;
      }
    }
    const double secs = elapsed(t0);
    return check(mismatches == 0 && secs < 10.0,
                 fmt("200 grids x 20 steps, %d mismatches, %.2fs (limit 10s)", mismatches, secs));
  });

  criterion("AC2", "exact dihedral symmetry", [] {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(2);
    int broken = 0;
    for (int trial = 0; trial < 50; ++trial) {
      const auto img = test::random_image(rng, 32, 32);
      const auto base = extract(img, default_params()).values;
      if (base.size() != 158) return bad("descriptor length != 158");
      for (int which = 0; which < 5; ++which)
        broken += extract(transform(img, which), default_params()).values != base;
    }
    const double secs = elapsed(t0);
    return check(broken == 0 && secs < 30.0,
                 fmt("50 grids x 5 transforms, %d differ, %.2fs (limit 30s)", broken, secs));
  });

  criterion("AC3", "mass accounting and freezing", [] {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> nu(0, 10), g(1, 10), dim(1, 24);
    int violations = 0;
    for (int trial = 0; trial < 100; ++trial) {
      const CitaParams p{nu(rng), g(rng) / 100.0, 158};
      const auto g0 = test::random_grid(rng, dim(rng), dim(rng));
      const auto bound = static_cast<ca::State>(std::floor(255 * p.gamma));
      const auto series = ca::run(g0, p);
      ca::PittingAutomaton automaton(g0, p, ca::Execution::serial);
      ca::CellGrid prev = g0;
      bool frozen = false;
      for (int t = 0; t < p.iterations; ++t) {
        const auto mass = automaton.advance();
        const auto cur = automaton.grid();
        violations += series.cumulative_mass[t] != cur.total() - g0.total();
        violations += t > 0 && series.cumulative_mass[t] < series.cumulative_mass[t - 1];
        violations += mass != series.per_iteration_mass[t];
        violations += frozen && mass != 0;
        frozen = frozen || mass == 0;
        for (std::size_t k = 0; k < cur.size(); ++k) {
          const auto inc = cur.states()[k] - prev.states()[k];
          violations += inc < 0 || inc > bound;
        }
        prev = cur;
      }
    }
    return check(violations == 0, fmt("100 grids x 158 steps, %d violations", violations));
  });

  criterion("AC4", "3x3 worked example", [] {
    const ca::CellGrid g(3, 3, {10, 10, 10, 10, 0, 10, 10, 10, 10});
    const auto [next, mass] = ca::step(g, CitaParams{5, 0.05, 1});
    const ca::CellGrid expected(3, 3, {22, 22, 22, 22, 0, 22, 22, 22, 22});
    return check(mass == 96 && next == expected,
                 fmt("mass %lld, border %lld, centre %lld", static_cast<long long>(mass),
                     static_cast<long long>(next.at(0, 0)), static_cast<long long>(next.at(1, 1))));
  });

  const auto corpus = synthetic::make_corpus();
  const double chance = 100.0 / corpus.class_count();
  double clean_rate = -1.0;

  criterion("AC5", "synthetic corpus classification", [&] {
    omp_set_num_threads(1);
    const auto t0 = std::chrono::steady_clock::now();
    clean_rate = cita_rate(corpus);
    LabeledDataset noisy = corpus;
    for (std::size_t i = 0; i < noisy.size(); ++i)
      noisy.images[i] = datasets::salt_pepper(corpus.images[i], 0.1, 1000 + i);
    const double noisy_rate = cita_rate(noisy);
    const double secs = elapsed(t0);
    omp_set_num_threads(default_threads);
    return check(clean_rate >= 90.0 && noisy_rate >= chance + 30.0 && secs < 300.0,
                 fmt("%d classes: clean %.2f%% (>=90), l=0.1 %.2f%% (>=%.2f), %.1fs single thread",
                     corpus.class_count(), clean_rate, noisy_rate, chance + 30.0, secs));
  });

  criterion("AC6", "rotation protocol", [&] {
    LabeledDataset rotated;
    rotated.class_names = corpus.class_names;
    for (std::size_t i = 0; i < corpus.size(); ++i)
      for (int angle : datasets::kRotationAngles) {
        rotated.images.push_back(datasets::rotate(corpus.images[i], angle));
        rotated.labels.push_back(corpus.labels[i]);
        rotated.ids.push_back(corpus.ids[i] + "_" + std::to_string(angle));
      }
    if (clean_rate < 0) clean_rate = cita_rate(corpus);
    const double rot_rate = cita_rate(rotated);
    return check(clean_rate - rot_rate < 3.0,
                 fmt("%zu images: unrotated %.2f%%, rotated %.2f%%, drop %.2f (<3)",
                     rotated.size(), clean_rate, rot_rate, clean_rate - rot_rate));
  });

  criterion("AC7", "LDA shrinkage=1 vs nearest centroid", [] {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> cls(2, 5), dim(1, 8), per(2, 40);
    std::normal_distribution<double> n01;
    int mismatched = 0;
    for (int trial = 0; trial < 100; ++trial) {
      const int c = cls(rng), d = dim(rng), m = std::min(per(rng), 200 / c);
      std::vector<int> y;
      for (int k = 0; k < c; ++k) y.insert(y.end(), m, k);
      Eigen::MatrixXd x(static_cast<Eigen::Index>(y.size()), d), probe(100, d);
      for (Eigen::Index i = 0; i < x.rows(); ++i)
        for (int j = 0; j < d; ++j) x(i, j) = n01(rng) + (y[i] * 7 + j) % 4 * 0.7;
      for (Eigen::Index i = 0; i < probe.rows(); ++i)
        for (int j = 0; j < d; ++j) probe(i, j) = 2.0 * n01(rng) + 1.0;
      const auto model = classify::lda_fit(x, y, 1.0);
      mismatched += classify::lda_predict(model, probe) != nearest_centroid(x, y, probe);
      mismatched += classify::lda_predict(model, x) != nearest_centroid(x, y, x);
    }
    return check(mismatched == 0,
                 fmt("100 balanced datasets, %d prediction vectors differ", mismatched));
  });

  criterion("AC8", "chance level on shuffled labels", [] {
    std::mt19937_64 rng(8);
    std::normal_distribution<double> n01;
    Eigen::MatrixXd x(500, 6);
    for (Eigen::Index i = 0; i < x.rows(); ++i)
      for (int j = 0; j < 6; ++j) x(i, j) = n01(rng);
    std::vector<int> y;
    for (int c = 0; c < 10; ++c) y.insert(y.end(), 50, c);
    std::vector<double> rates;
    for (int seed = 0; seed < 20; ++seed) {
      std::shuffle(y.begin(), y.end(), rng);
      rates.push_back(classify::evaluate(x, y, 10, seed).mean_rate);
    }
    const double mean = std::accumulate(rates.begin(), rates.end(), 0.0) / 20.0;
    // Standard error of the pooled success rate over 20 x 500 predictions.
    const double se = 100.0 * std::sqrt(0.1 * 0.9 / (20.0 * 500.0));
    return check(std::abs(mean - 10.0) <= 4.0 * se,
                 fmt("mean %.3f%%, |mean - 10| = %.3f, 4 SE = %.3f", mean, std::abs(mean - 10.0),
                     4.0 * se));
  });

  criterion("AC9", "baseline fixed points", [] {
    int violations = 0;
    for (int level : {0, 1, 128, 255})
      for (auto [h, w] : {std::pair{8, 8}, std::pair{17, 30}}) {
        const GrayImage flat(h, w, static_cast<std::uint8_t>(level));
        const auto glcm = baselines::glcm_haralick(flat);
        for (int b = 0; b < 8; ++b)
          violations += glcm[b * 4] != 0.0 || glcm[b * 4 + 2] != 1.0 || glcm[b * 4 + 3] != 1.0;
        const auto gldm = baselines::gldm(flat);
        for (int b = 0; b < 12; ++b)
          violations += gldm[b * 5 + 1] != 1.0 || gldm[b * 5 + 2] != 0.0 ||
                        gldm[b * 5 + 3] != 0.0 || gldm[b * 5 + 4] != 1.0;
        for (double v : extract(flat, CitaParams{1, 0.05, 158}).values) violations += v != 0.0;
        const auto f = baselines::fourier_descriptors(flat);
        const auto nonzero = std::count_if(f.begin(), f.end(), [](double v) { return v != 0.0; });
        violations += level == 0 ? nonzero != 0 : nonzero != 1;
      }
    return check(violations == 0, fmt("4 levels x 2 sizes, %d violations", violations));
  });

  criterion("AC10", "CLI determinism across threads", [] {
    const auto root = test::scratch_dir("acceptance_cli");
    std::map<std::string, std::string> runs[2];
    int bad_exit = 0;
    for (int r = 0; r < 2; ++r) {
      const std::string threads = r == 0 ? "1" : "4";
      // Same paths for both runs: the sidecar records the manifest path.
      const auto dir = root / "run";
      fs::remove_all(dir);
      const auto s = (dir / "synth").string();
      const auto m = (dir / "synth" / "manifest.csv").string();
      bad_exit += tool({"synth", "--out", s, "--size", "32", "--samples", "4", "--threads", threads}) != 0;
      bad_exit += tool({"extract", "--manifest", m, "--out", (dir / "ex").string(), "--threads", threads}) != 0;
      bad_exit += tool({"extract", "--manifest", m, "--method", "gabor", "--out", (dir / "exg").string(), "--threads", threads}) != 0;
      bad_exit += tool({"evaluate", "--manifest", m, "--k", "4", "--out", (dir / "ev").string(), "--threads", threads}) != 0;
      bad_exit += tool({"perturb", "noise", "--manifest", m, "--l", "0.1", "--out", (dir / "noisy").string(), "--threads", threads}) != 0;
      bad_exit += tool({"perturb", "rotate", "--manifest", m, "--out", (dir / "rot").string(), "--threads", threads}) != 0;
      bad_exit += tool({"evaluate", "--manifest", m, "--test-manifest", (dir / "noisy" / "manifest.csv").string(),
                        "--mode", "train_clean_test_noisy", "--k", "4", "--out", (dir / "evn").string(), "--threads", threads}) != 0;
      bad_exit += tool({"sweep", "--manifest", m, "--gammas", "0.03,0.05", "--nus", "1,2", "--iterations", "40",
                        "--k", "4", "--out", (dir / "sw").string(), "--threads", threads}) != 0;
      runs[r] = snapshot(dir);
    }
    int differing = 0;
    for (const auto& [path, bytes] : runs[0]) {
      const auto it = runs[1].find(path);
      differing += it == runs[1].end() || it->second != bytes;
    }
    differing += runs[0].size() != runs[1].size();
    return check(bad_exit == 0 && differing == 0 && !runs[0].empty(),
                 fmt("%zu files per run, %d differ, %d failed commands", runs[0].size(),
                     differing, bad_exit));
  });
  omp_set_num_threads(default_threads);

  criterion("AC11", "corpus reproduction (conditional)", [] {
    struct Corpus { const char* env; const char* name; double target; };
    std::string detail;
    bool any = false, good = true;
    for (const Corpus c : {Corpus{"CITA_BRODATZ_MANIFEST", "brodatz", 99.0},
                           Corpus{"CITA_VISTEX_MANIFEST", "vistex", 97.0}}) {
      const char* path = std::getenv(c.env);
      if (!path || !*path) continue;
      any = true;
      const auto ds = datasets::load_dataset(datasets::read_manifest(path));
      const double rate = cita_rate(ds);
      good = good && std::abs(rate - c.target) <= 3.0;
      detail += fmt("%s %.2f%% (target %.0f +/- 3); ", c.name, rate, c.target);
    }
    if (!any) return Outcome{Outcome::skip, "set CITA_BRODATZ_MANIFEST / CITA_VISTEX_MANIFEST to run"};
    return check(good, detail);
  });

  std::printf("%s: %d criterion(s) failed\n", failures ? "FAILED" : "OK", failures);
  return failures ? EXIT_FAILURE : EXIT_SUCCESS;
}
