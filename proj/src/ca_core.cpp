#include "cita/ca_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace cita {

void CitaParams::validate() const {
  if (nu < 0) throw InvalidInput("CitaParams: nu must be >= 0");
  if (!(gamma >= 0.0 && gamma <= 1.0))
    throw InvalidInput("CitaParams: gamma must lie in [0, 1]");
  if (iterations < 1) throw InvalidInput("CitaParams: iterations must be >= 1");
}

namespace ca {

CellGrid::CellGrid(int height, int width, std::vector<State> states)
    : height_(height), width_(width), states_(std::move(states)) {
  if (height < 0 || width < 0 ||
      states_.size() != static_cast<std::size_t>(height) * width)
    throw InvalidInput("CellGrid: state buffer does not match dimensions");
  if (std::any_of(states_.begin(), states_.end(), [](State s) { return s < 0; }))
    throw InvalidInput("CellGrid: states must be non-negative");
}

State CellGrid::total() const {
  return std::accumulate(states_.begin(), states_.end(), State{0});
}

namespace {

// Fills the ghost ring of a (h+2)x(w+2) buffer from its interior. Columns
// first on the interior rows, then whole rows, so corners take the value of
// the interior corner cell.
void fill_ghosts(std::vector<State>& buf, int h, int w) {
  const std::size_t pw = static_cast<std::size_t>(w) + 2;
  for (int r = 1; r <= h; ++r) {
    State* row = buf.data() + r * pw;
    row[0] = row[1];
    row[w + 1] = row[w];
  }
  std::copy_n(buf.data() + pw, pw, buf.data());
  std::copy_n(buf.data() + h * pw, pw, buf.data() + (h + 1) * pw);
}

std::vector<State> padded_copy(const CellGrid& grid) {
  const int h = grid.height();
  const int w = grid.width();
  const std::size_t pw = static_cast<std::size_t>(w) + 2;
  std::vector<State> buf(static_cast<std::size_t>(h + 2) * pw);
  auto src = grid.states();
  for (int r = 0; r < h; ++r)
    std::copy_n(src.data() + static_cast<std::size_t>(r) * w, w,
                buf.data() + (r + 1) * pw + 1);
  fill_ghosts(buf, h, w);
  return buf;
}

}  // namespace

PaddedGrid::PaddedGrid(const CellGrid& interior)
    : height_(interior.height()), width_(interior.width()) {
  if (interior.empty()) throw InvalidInput("reflect_pad: empty grid");
  cells_ = padded_copy(interior);
}

CellGrid init_from_image(const GrayImage& img) {
  if (img.empty()) throw InvalidInput("init_from_image: empty image");
  std::vector<State> states(img.pixels.begin(), img.pixels.end());
  return CellGrid(img.height, img.width, std::move(states));
}

CellGrid init_from_values(int height, int width, std::span<const int> values) {
  if (height <= 0 || width <= 0 || values.empty())
    throw InvalidInput("init_from_values: empty image");
  if (values.size() != static_cast<std::size_t>(height) * width)
    throw InvalidInput("init_from_values: value count does not match dimensions");
  std::vector<State> states;
  states.reserve(values.size());
  for (int v : values) {
    if (v < 0 || v > 255)
      throw InvalidInput("init_from_values: gray level " + std::to_string(v) +
                         " outside 0..255");
    states.push_back(v);
  }
  return CellGrid(height, width, std::move(states));
}

PaddedGrid reflect_pad(const CellGrid& grid) { return PaddedGrid(grid); }

State local_difference(const PaddedGrid& padded, int i, int j) {
  if (i < 0 || j < 0 || i >= padded.interior_height() ||
      j >= padded.interior_width())
    throw std::out_of_range("local_difference: cell outside the interior");
  const int r = i + 1;
  const int c = j + 1;
  State lo = padded.at(r, c);
  for (int dr = -1; dr <= 1; ++dr)
    for (int dc = -1; dc <= 1; ++dc) lo = std::min(lo, padded.at(r + dr, c + dc));
  return padded.at(r, c) - lo;
}

State pit_growth(State d, double gamma) {
  if (d < 0 || d >= kMaxDepth)
    throw InvalidInput("pit_growth: difference must lie in [0, 255)");
  if (!(gamma >= 0.0 && gamma <= 1.0))
    throw InvalidInput("pit_growth: gamma must lie in [0, 1]");
  return static_cast<State>(std::floor(static_cast<double>(kMaxDepth - d) * gamma));
}

std::vector<State> growth_table(const CitaParams& params) {
  params.validate();
  std::vector<State> table(kMaxDepth, 0);
  for (State d = params.nu; d < kMaxDepth; ++d) table[d] = pit_growth(d, params.gamma);
  return table;
}

PittingAutomaton::PittingAutomaton(const CellGrid& initial,
                                   const CitaParams& params, Execution exec)
    : height_(initial.height()),
      width_(initial.width()),
      exec_(exec),
      table_(growth_table(params)) {
  if (initial.empty()) throw InvalidInput("PittingAutomaton: empty grid");
  current_ = padded_copy(initial);
  next_ = current_;
}

void PittingAutomaton::refresh_ghosts(std::vector<State>& buf) const {
  fill_ghosts(buf, height_, width_);
}

State PittingAutomaton::advance() {
  const int h = height_;
  const int w = width_;
  const std::size_t pw = static_cast<std::size_t>(w) + 2;
  const State* cur = current_.data();
  State* nxt = next_.data();
  const State* table = table_.data();
  State mass = 0;

  // The 3x3 minimum is separable: a vertical min over three padded rows,
  // then a horizontal min over three adjacent columns of that.
#pragma omp parallel if (exec_ == Execution::parallel && h > 1) reduction(+ : mass)
  {
    std::vector<State> column_min(pw);
#pragma omp for schedule(static)
    for (int i = 1; i <= h; ++i) {
      const State* up = cur + (i - 1) * pw;
      const State* mid = cur + i * pw;
      const State* down = cur + (i + 1) * pw;
      for (std::size_t c = 0; c < pw; ++c)
        column_min[c] = std::min({up[c], mid[c], down[c]});
      State* out = nxt + i * pw;
      for (int c = 1; c <= w; ++c) {
        const State lo =
            std::min({column_min[c - 1], column_min[c], column_min[c + 1]});
        const State d = mid[c] - lo;
        const State inc = d < kMaxDepth ? table[d] : 0;
        out[c] = mid[c] + inc;
        mass += inc;
      }
    }
  }

  refresh_ghosts(next_);
  current_.swap(next_);
  ++steps_;
  return mass;
}

CellGrid PittingAutomaton::grid() const {
  const std::size_t pw = static_cast<std::size_t>(width_) + 2;
  std::vector<State> states(static_cast<std::size_t>(height_) * width_);
  for (int r = 0; r < height_; ++r)
    std::copy_n(current_.data() + (r + 1) * pw + 1, width_,
                states.data() + static_cast<std::size_t>(r) * width_);
  return CellGrid(height_, width_, std::move(states));
}

StepResult step(const CellGrid& grid, const CitaParams& params, Execution exec) {
  PittingAutomaton automaton(grid, params, exec);
  const State mass = automaton.advance();
  return {automaton.grid(), mass};
}

MassSeries run(const CellGrid& grid, const CitaParams& params, Execution exec) {
  PittingAutomaton automaton(grid, params, exec);
  const auto n = static_cast<std::size_t>(params.iterations);
  MassSeries series{std::vector<State>(n, 0), std::vector<State>(n, 0)};
  State total = 0;
  bool frozen = false;
  for (std::size_t t = 0; t < n; ++t) {
    const State mass = frozen ? 0 : automaton.advance();
    frozen = mass == 0;
    total += mass;
    series.per_iteration_mass[t] = mass;
    series.cumulative_mass[t] = total;
  }
  return series;
}

}  // namespace ca
}  // namespace cita
