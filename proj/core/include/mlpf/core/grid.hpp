#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mlpf {

/// Uniform grid on [0, length] with `cells` cells and cells+1 nodes.
class Grid {
 public:
  /// Throws DomainError unless length > 0 and cells >= 2.
  Grid(double length, int cells);

  [[nodiscard]] double length() const noexcept { return length_; }
  [[nodiscard]] int cells() const noexcept { return cells_; }
  [[nodiscard]] std::size_t nodes() const noexcept { return static_cast<std::size_t>(cells_) + 1; }
  [[nodiscard]] double dx() const noexcept { return dx_; }

  /// x_i = i*dx, with x_N pinned to `length`.
  [[nodiscard]] double node(std::size_t i) const noexcept;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  double length_;
  int cells_;
  double dx_;
};

/// Nodal values of a field on a Grid.
class SpatialProfile {
 public:
  explicit SpatialProfile(Grid grid, double fill = 0.0);
  SpatialProfile(Grid grid, std::vector<double> values);

  template <class F>
  static SpatialProfile sample(const Grid& grid, F&& fn) {
    SpatialProfile p(grid);
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = fn(grid.node(i));
    return p;
  }

  [[nodiscard]] const Grid& grid() const noexcept { return grid_; }
  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
  [[nodiscard]] double& operator[](std::size_t i) { return values_[i]; }
  [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }
  [[nodiscard]] double front() const { return values_.front(); }
  [[nodiscard]] double back() const { return values_.back(); }
  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
  [[nodiscard]] std::span<double> values() noexcept { return values_; }

  /// Piecewise-linear value at x, clamped to [0, length].
  [[nodiscard]] double at(double x) const;
  [[nodiscard]] double max_abs() const noexcept;
  [[nodiscard]] double min() const noexcept;
  [[nodiscard]] bool all_finite() const noexcept;
  /// Largest |v_{i+1} - v_i| / dx.
  [[nodiscard]] double lipschitz() const noexcept;

 private:
  Grid grid_;
  std::vector<double> values_;
};

/// max_i |a_i - b_i|; sizes must agree.
[[nodiscard]] double max_abs_diff(const SpatialProfile& a, const SpatialProfile& b);

}  // namespace mlpf
