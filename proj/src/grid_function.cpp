#include "dcreg/grid_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dcreg {

GridFunction::GridFunction(const Grid& grid, std::vector<ExtReal> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    fail(ErrorCode::DimensionMismatch, "value count does not match the grid");
  infimum_ = std::numeric_limits<double>::infinity();
  double max_abs = 0.0;
  for (ExtReal v : values_) {
    if (v.is_infinite()) continue;
    ++finite_count_;
    infimum_ = std::min(infimum_, v.raw());
    max_abs = std::max(max_abs, std::abs(v.raw()));
  }
  if (finite_count_ == 0)
    fail(ErrorCode::ImproperFunction, "grid function is identically +inf");
  scale_ = 1.0 + max_abs;
}

GridFunction GridFunction::sample(const Grid& grid, const Sampler& sampler) {
  std::vector<ExtReal> values;
  values.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values.push_back(sampler(grid.point(i)));
  return GridFunction(grid, std::move(values));
}

GridFunction GridFunction::from_values(const Grid& grid, std::vector<ExtReal> values) {
  return GridFunction(grid, std::move(values));
}

GridFunction GridFunction::constant(const Grid& grid, double c) {
  return GridFunction(grid, std::vector<ExtReal>(grid.size(), ExtReal(c)));
}

std::vector<std::size_t> GridFunction::argmin_set(double tol) const {
  if (!(tol >= 0.0)) fail(ErrorCode::InvalidArgument, "argmin tolerance must be >= 0");
  std::vector<std::size_t> out;
  const double bound = infimum_ + tol;
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (values_[i].is_finite() && values_[i].raw() <= bound) out.push_back(i);
  return out;
}

GridFunction GridFunction::shifted(double c) const {
  std::vector<ExtReal> out(values_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = values_[i] + ExtReal(c);
  return GridFunction(grid_, std::move(out));
}

GridFunction GridFunction::negated() const {
  std::vector<ExtReal> out(values_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = -values_[i];
  return GridFunction(grid_, std::move(out));
}

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
  require_same_grid(a.grid(), b.grid());
  std::vector<ExtReal> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] + b[i];
  return GridFunction::from_values(a.grid(), std::move(out));
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
  require_same_grid(a.grid(), b.grid());
  std::vector<ExtReal> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] - b[i];
  return GridFunction::from_values(a.grid(), std::move(out));
}

double max_excess(const GridFunction& a, const GridFunction& b) {
  require_same_grid(a.grid(), b.grid());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (b[i].is_infinite()) continue;
    if (a[i].is_infinite()) return std::numeric_limits<double>::infinity();
    worst = std::max(worst, a[i].raw() - b[i].raw());
  }
  return worst;
}

double max_abs_diff(const GridFunction& a, const GridFunction& b) {
  require_same_grid(a.grid(), b.grid());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_finite() != b[i].is_finite()) return std::numeric_limits<double>::infinity();
    if (a[i].is_finite()) worst = std::max(worst, std::abs(a[i].raw() - b[i].raw()));
  }
  return worst;
}

}  // namespace dcreg
