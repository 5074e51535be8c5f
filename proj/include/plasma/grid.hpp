#pragma once

#include <vector>

namespace plasma {

/// Uniform cell-centered grid on [x_left, x_right] with N cells.
/// Cell centers sit at x_left + (i + 1/2) dx; faces at x_left + i dx.
class Grid {
 public:
  /// Placeholder grid; replaced before use by every producer.
  Grid() : x_left_(0.0), x_right_(1.0), dx_(1.0 / 8.0), cells_(8) {}
  Grid(double x_left, double x_right, int cells);

  int cells() const { return cells_; }
  double x_left() const { return x_left_; }
  double x_right() const { return x_right_; }
  double dx() const { return dx_; }

  double center(int i) const { return x_left_ + (i + 0.5) * dx_; }
  /// Face i sits between cells i-1 and i; faces run 0..cells().
  double face(int i) const { return x_left_ + i * dx_; }

  std::vector<double> centers() const;
  std::vector<double> faces() const;

 private:
  double x_left_, x_right_, dx_;
  int cells_;
};

/// Cell-centered values on a Grid at one time level.
struct Field {
  double time = 0.0;
  std::vector<double> values;
};

/// A time-indexed stack of fields on a common grid, as produced by the
/// finite-volume solver or by sampling a closed-form solution.
struct SolutionSamples {
  Grid grid;
  std::vector<double> times;
  /// data[k][i] = value at times[k], grid.center(i).
  std::vector<std::vector<double>> data;

  int frames() const { return static_cast<int>(times.size()); }
};

}  // namespace plasma
