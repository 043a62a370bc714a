#include "cita/ca_core.hpp"

namespace cita::ca::reference {

StepResult step(const CellGrid& grid, const CitaParams& params) {
  params.validate();
  const PaddedGrid padded = reflect_pad(grid);
  const int h = grid.height();
  const int w = grid.width();

  std::vector<State> diff(grid.size());
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < w; ++j)
      diff[static_cast<std::size_t>(i) * w + j] = local_difference(padded, i, j);

  std::vector<State> next(grid.states().begin(), grid.states().end());
  State mass = 0;
  for (std::size_t k = 0; k < next.size(); ++k) {
    const State d = diff[k];
    if (d >= params.nu && d < kMaxDepth) {
      const State inc = pit_growth(d, params.gamma);
      next[k] += inc;
      mass += inc;
    }
  }
  return {CellGrid(h, w, std::move(next)), mass};
}

MassSeries run(const CellGrid& grid, const CitaParams& params) {
  params.validate();
  MassSeries series;
  CellGrid current = grid;
  State total = 0;
  for (int t = 0; t < params.iterations; ++t) {
    auto [next, mass] = reference::step(current, params);
    current = std::move(next);
    total += mass;
    series.per_iteration_mass.push_back(mass);
    series.cumulative_mass.push_back(total);
  }
  return series;
}

}  // namespace cita::ca::reference
