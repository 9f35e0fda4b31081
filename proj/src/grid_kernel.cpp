#include "dcreg/grid_kernel.hpp"

#include "dcreg/error.hpp"

namespace dcreg {

GridKernel::GridKernel(const Kernel& kernel, const Grid& grid)
    : kernel_(kernel), grid_(grid), hilbert_(kernel.kind() == KernelKind::Hilbert) {
  if (grid.dim() != kernel.dim())
    fail(ErrorCode::DimensionMismatch, "grid and kernel dimensions differ");
  const std::size_t n = grid.size();
  axis0_.resize(n);
  axis1_.resize(n);
  c_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto mi = grid.multi_index(i);
    axis0_[i] = mi[0];
    axis1_[i] = mi[1];
    c_[i] = kernel.c(grid.point(i));
  }
  const std::size_t n0 = grid.nodes(0);
  const std::size_t n1 = grid.nodes(1);
  if (hilbert_) {
    sq0_.resize(n0);
    sq1_.resize(n1, 0.0);
    for (std::size_t k = 0; k < n0; ++k) {
      const double t = static_cast<double>(k) * grid.step(0);
      sq0_[k] = t * t;
    }
    if (grid.dim() == 2)
      for (std::size_t k = 0; k < n1; ++k) {
        const double t = static_cast<double>(k) * grid.step(1);
        sq1_[k] = t * t;
      }
    return;
  }
  sum_stride_ = 2 * n1 - 1;
  sum_power_.resize((2 * n0 - 1) * sum_stride_);
  for (std::size_t s0 = 0; s0 < 2 * n0 - 1; ++s0)
    for (std::size_t s1 = 0; s1 < sum_stride_; ++s1) {
      Point sum{2.0 * grid.lo(0) + static_cast<double>(s0) * grid.step(0),
                grid.dim() == 2 ? 2.0 * grid.lo(1) + static_cast<double>(s1) * grid.step(1) : 0.0};
      sum_power_[s0 * sum_stride_ + s1] = kernel.power_norm(sum);
    }
}

double GridKernel::d(std::size_t i, std::size_t j) const noexcept {
  if (hilbert_) return kernel_.d(grid_.point(i), grid_.point(j));
  return sum_power_[sum_index(i, j)] - c_[j];
}

}  // namespace dcreg
