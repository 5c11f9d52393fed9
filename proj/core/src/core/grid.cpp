#include "mlpf/core/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mlpf/core/errors.hpp"

namespace mlpf {

Grid::Grid(double length, int cells) : length_(length), cells_(cells), dx_(0.0) {
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw Error(ErrorKind::Domain, "grid length must be positive, got " + std::to_string(length));
  }
  if (cells < 2) {
    throw Error(ErrorKind::Domain, "grid needs at least 2 cells, got " + std::to_string(cells));
  }
  dx_ = length_ / cells_;
}

double Grid::node(std::size_t i) const noexcept {
  if (i >= static_cast<std::size_t>(cells_)) return length_;
  return static_cast<double>(i) * dx_;
}

SpatialProfile::SpatialProfile(Grid grid, double fill)
    : grid_(grid), values_(grid.nodes(), fill) {}

SpatialProfile::SpatialProfile(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.nodes()) {
    throw Error(ErrorKind::Domain, "profile length " + std::to_string(values_.size()) +
                                       " does not match grid nodes " +
                                       std::to_string(grid_.nodes()));
  }
}

double SpatialProfile::at(double x) const {
  const double dx = grid_.dx();
  if (x <= 0.0) return values_.front();
  if (x >= grid_.length()) return values_.back();
  const auto cell = std::min(static_cast<std::size_t>(x / dx), values_.size() - 2);
  const double theta = (x - grid_.node(cell)) / dx;
  return values_[cell] + theta * (values_[cell + 1] - values_[cell]);
}

double SpatialProfile::max_abs() const noexcept {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double SpatialProfile::min() const noexcept {
  return *std::min_element(values_.begin(), values_.end());
}

bool SpatialProfile::all_finite() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

double SpatialProfile::lipschitz() const noexcept {
  double m = 0.0;
  for (std::size_t i = 0; i + 1 < values_.size(); ++i) {
    m = std::max(m, std::abs(values_[i + 1] - values_[i]));
  }
  return m / grid_.dx();
}

double max_abs_diff(const SpatialProfile& a, const SpatialProfile& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::Domain, "profile size mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace mlpf
