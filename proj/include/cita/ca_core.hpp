#pragma once

// Pitting-corrosion cellular automaton.
//
// Each cell holds a pit depth initialised from the pixel gray level. At every
// step the grid is padded with a reflecting ghost ring, each cell's depth is
// compared with the minimum of its 3x3 Moore neighbourhood (itself included)
// and cells whose difference d satisfies nu <= d < 255 deepen by
// floor((255 - d) * gamma). All cells update synchronously from the same
// time-t snapshot. The sum of the increments of one step is the corroded mass
// of that step.

#include <cstdint>
#include <span>
#include <vector>

#include "cita/image.hpp"

namespace cita {

/// Model parameters: surface roughness threshold, pitting power and the
/// number of steps to simulate.
struct CitaParams {
  std::int64_t nu = 1;
  double gamma = 0.05;
  int iterations = 158;

  /// Throws InvalidInput unless nu >= 0, 0 <= gamma <= 1 and iterations >= 1.
  void validate() const;

  friend bool operator==(const CitaParams&, const CitaParams&) = default;
};

namespace ca {

/// Pit depth. Depths start in 0..255 and grow without an upper bound.
using State = std::int64_t;

/// Largest difference that still corrodes is kMaxDepth - 1.
inline constexpr State kMaxDepth = 255;

enum class Execution { serial, parallel };

class CellGrid {
 public:
  CellGrid() = default;
  /// Throws InvalidInput if the buffer size mismatches or any state is < 0.
  CellGrid(int height, int width, std::vector<State> states);

  int height() const { return height_; }
  int width() const { return width_; }
  bool empty() const { return states_.empty(); }
  std::size_t size() const { return states_.size(); }

  State at(int i, int j) const {
    return states_[static_cast<std::size_t>(i) * width_ + j];
  }
  std::span<const State> states() const { return states_; }

  /// Sum of all states.
  State total() const;

  friend bool operator==(const CellGrid&, const CellGrid&) = default;

 private:
  int height_ = 0;
  int width_ = 0;
  std::vector<State> states_;
};

/// Grid with a one-cell reflecting ghost ring. Ghost rows/columns copy the
/// adjacent interior row/column; corner ghosts copy the interior corner cell.
class PaddedGrid {
 public:
  explicit PaddedGrid(const CellGrid& interior);

  int interior_height() const { return height_; }
  int interior_width() const { return width_; }
  int padded_height() const { return height_ + 2; }
  int padded_width() const { return width_ + 2; }

  /// Access in padded coordinates, 0 <= r < height+2, 0 <= c < width+2.
  State at(int r, int c) const {
    return cells_[static_cast<std::size_t>(r) * (width_ + 2) + c];
  }
  std::span<const State> cells() const { return cells_; }

 private:
  int height_;
  int width_;
  std::vector<State> cells_;
};

struct StepResult {
  CellGrid grid;
  State mass = 0;
};

struct MassSeries {
  std::vector<State> per_iteration_mass;
  std::vector<State> cumulative_mass;
};

/// Identity mapping of gray levels onto initial states.
CellGrid init_from_image(const GrayImage& img);

/// As init_from_image, for untyped integer rasters. Throws InvalidInput on an
/// empty raster or any value outside 0..255.
CellGrid init_from_values(int height, int width, std::span<const int> values);

/// Throws InvalidInput on an empty grid.
PaddedGrid reflect_pad(const CellGrid& grid);

/// d = s(i,j) - min over the Moore neighbourhood of (i,j), including the cell.
/// (i,j) are interior coordinates; throws std::out_of_range otherwise.
State local_difference(const PaddedGrid& padded, int i, int j);

/// floor((255 - d) * gamma). Requires 0 <= d < 255 and 0 <= gamma <= 1.
State pit_growth(State d, double gamma);

/// Per-difference increment table: entry d is the increment applied to a cell
/// with difference d, 0 for d < nu or d >= 255.
std::vector<State> growth_table(const CitaParams& params);

/// Double-buffered stepping engine. Owns two padded buffers and swaps them
/// after every step; ghosts are refreshed from the new interior each time.
class PittingAutomaton {
 public:
  PittingAutomaton(const CellGrid& initial, const CitaParams& params,
                   Execution exec = Execution::parallel);

  /// Applies one synchronous step and returns its corroded mass.
  State advance();

  CellGrid grid() const;
  int steps_taken() const { return steps_; }

 private:
  void refresh_ghosts(std::vector<State>& buf) const;

  int height_;
  int width_;
  Execution exec_;
  std::vector<State> table_;
  std::vector<State> current_;
  std::vector<State> next_;
  int steps_ = 0;
};

StepResult step(const CellGrid& grid, const CitaParams& params,
                Execution exec = Execution::parallel);

/// Applies params.iterations steps. Stops simulating once a step corrodes
/// nothing, since the grid is then a fixed point; remaining entries repeat.
MassSeries run(const CellGrid& grid, const CitaParams& params,
               Execution exec = Execution::parallel);

/// Straightforward two-pass implementation, kept as the oracle for the
/// optimised kernel: compute every d from a freshly padded grid, then apply.
namespace reference {

StepResult step(const CellGrid& grid, const CitaParams& params);
MassSeries run(const CellGrid& grid, const CitaParams& params);

}  // namespace reference

}  // namespace ca
}  // namespace cita
