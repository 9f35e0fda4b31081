#pragma once

#include <cstddef>
#include <vector>

#include "dcreg/grid.hpp"
#include "dcreg/kernel.hpp"

namespace dcreg {

/// A kernel restricted to the nodes of one grid, with lookup tables so the
/// O(N^2) operators never call pow in their inner loops.
///
/// On a uniform grid x_i + x_j depends only on the per-axis index sums, so
/// |x_i + x_j|^p is tabulated over (2 n0 - 1) x (2 n1 - 1) entries; for the
/// Hilbert kernel the per-axis squared differences are tabulated instead.
/// Values are exactly symmetric in (i, j), exactly 0 for i == j, and clamped
/// at 0.
class GridKernel {
 public:
  GridKernel(const Kernel& kernel, const Grid& grid);

  const Kernel& kernel() const noexcept { return kernel_; }
  const Grid& grid() const noexcept { return grid_; }

  double operator()(std::size_t i, std::size_t j) const noexcept {
    if (i == j) return 0.0;
    const double v = raw(i, j);
    return v > 0.0 ? v : 0.0;
  }

  double raw(std::size_t i, std::size_t j) const noexcept {
    if (hilbert_) {
      const std::size_t d0 = axis0_[i] > axis0_[j] ? axis0_[i] - axis0_[j] : axis0_[j] - axis0_[i];
      const std::size_t d1 = axis1_[i] > axis1_[j] ? axis1_[i] - axis1_[j] : axis1_[j] - axis1_[i];
      return sq0_[d0] + sq1_[d1];
    }
    return (c_[i] + c_[j]) - sum_power_[sum_index(i, j)];
  }

  /// c_K at node i.
  double c(std::size_t i) const noexcept { return c_[i]; }
  /// d_K(x_i, x_j), convex in x_i for fixed j.
  double d(std::size_t i, std::size_t j) const noexcept;

 private:
  std::size_t sum_index(std::size_t i, std::size_t j) const noexcept {
    return (axis0_[i] + axis0_[j]) * sum_stride_ + (axis1_[i] + axis1_[j]);
  }

  Kernel kernel_;
  Grid grid_;
  bool hilbert_ = false;
  std::vector<std::size_t> axis0_, axis1_;
  std::vector<double> c_;
  std::vector<double> sum_power_;
  std::size_t sum_stride_ = 1;
  std::vector<double> sq0_, sq1_;
};

}  // namespace dcreg
