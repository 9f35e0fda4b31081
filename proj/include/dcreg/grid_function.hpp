#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "dcreg/ext_real.hpp"
#include "dcreg/grid.hpp"

namespace dcreg {

/// Extended-real samples on the nodes of a Grid. Always proper: at least one
/// node carries a finite value. Immutable after construction.
class GridFunction {
 public:
  using Sampler = std::function<ExtReal(const Point&)>;

  /// values[i] = sampler(node i). Throws ImproperFunction if every sample is
  /// +inf; NaN samples are rejected by ExtReal itself (InvalidValue).
  static GridFunction sample(const Grid& grid, const Sampler& sampler);
  static GridFunction from_values(const Grid& grid, std::vector<ExtReal> values);
  static GridFunction constant(const Grid& grid, double c);

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const ExtReal> values() const noexcept { return values_; }
  ExtReal operator[](std::size_t i) const noexcept { return values_[i]; }

  bool all_finite() const noexcept { return finite_count_ == values_.size(); }
  std::size_t finite_count() const noexcept { return finite_count_; }

  /// min over finite values.
  double infimum() const noexcept { return infimum_; }
  /// 1 + max |finite value|; the reference magnitude for tolerances.
  double scale() const noexcept { return scale_; }

  /// Nodes whose value is <= infimum() + tol, ascending. Ties are all kept.
  std::vector<std::size_t> argmin_set(double tol = 0.0) const;

  /// Node-wise sum with a finite constant.
  GridFunction shifted(double c) const;
  /// Node-wise negation; requires every value finite.
  GridFunction negated() const;

 private:
  GridFunction(const Grid& grid, std::vector<ExtReal> values);

  Grid grid_;
  std::vector<ExtReal> values_;
  std::size_t finite_count_ = 0;
  double infimum_ = 0.0;
  double scale_ = 1.0;
};

/// a + b node-wise (+inf absorbs).
GridFunction operator+(const GridFunction& a, const GridFunction& b);
/// a - b node-wise; b must be finite everywhere.
GridFunction operator-(const GridFunction& a, const GridFunction& b);

/// Largest violation of a <= b over nodes where both are finite (0 if none).
/// A finite a against +inf b never violates; +inf a against finite b counts
/// as an infinite violation.
double max_excess(const GridFunction& a, const GridFunction& b);
/// max |a - b| over nodes where both are finite; +inf if the finite masks
/// differ.
double max_abs_diff(const GridFunction& a, const GridFunction& b);

}  // namespace dcreg
