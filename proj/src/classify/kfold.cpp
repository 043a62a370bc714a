#include "cita/classify.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "cita/error.hpp"

namespace cita::classify {

namespace {
// Uniform integer in [0, n) by rejection, independent of the standard
// library's distribution implementation.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % n;
  std::uint64_t x;
  do x = rng(); while (x >= limit);
  return x % n;
}
}  // namespace

FoldAssignment stratified_kfold(std::span<const int> labels, int k,
                                std::uint64_t seed) {
  if (k < 2) throw InvalidInput("stratified_kfold: k must be >= 2");
  if (labels.empty()) throw InvalidInput("stratified_kfold: no samples");

  std::map<int, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < labels.size(); ++i) members[labels[i]].push_back(i);

  FoldAssignment out{k, seed, std::vector<int>(labels.size(), -1), {}};
  std::mt19937_64 rng(seed);
  std::size_t offset = 0;
  for (auto& [label, idx] : members) {
    for (std::size_t i = idx.size(); i > 1; --i)
      std::swap(idx[i - 1], idx[uniform_below(rng, i)]);
    for (std::size_t p = 0; p < idx.size(); ++p)
      out.fold[idx[p]] = static_cast<int>((offset + p) % k);
    offset = (offset + idx.size()) % k;
    if (idx.size() < static_cast<std::size_t>(k))
      out.warnings.push_back("class " + std::to_string(label) + " has " +
                             std::to_string(idx.size()) + " samples, fewer than k = " +
                             std::to_string(k));
  }
  return out;
}

}  // namespace cita::classify
