#pragma once

#include <cstddef>
#include <vector>

#include "dcreg/grid_function.hpp"
#include "dcreg/grid_kernel.hpp"
#include "dcreg/kernel.hpp"

namespace dcreg {

/// Positive smoothing scale n (the weight on the kernel).
class SmoothingScale {
 public:
  explicit SmoothingScale(double n);
  double value() const noexcept { return n_; }
  friend auto operator<=>(SmoothingScale, SmoothingScale) = default;

 private:
  double n_;
};

/// out(x_i) = min_j f(y_j) + n K(x_i, y_j) over finite nodes y_j.
/// out <= f, out >= inf f and out is finite everywhere.
GridFunction inf_convolve(const GridFunction& f, const Kernel& k, SmoothingScale n);
GridFunction inf_convolve(const GridFunction& f, const GridKernel& k, SmoothingScale n);

/// out(x_i) = max_j f(y_j) - n K(x_i, y_j) = -inf_convolve(-f)(x_i).
/// Rejects f containing +inf (InfiniteValueInSup).
GridFunction sup_convolve(const GridFunction& f, const Kernel& k, SmoothingScale n);
GridFunction sup_convolve(const GridFunction& f, const GridKernel& k, SmoothingScale n);

/// inf_convolve applied twice at the same scale.
GridFunction iterated_smooth(const GridFunction& f, const Kernel& k, SmoothingScale n);

/// sup_convolve(inf_convolve(f, n), m). With `require_order` the scales must
/// satisfy m > n (ScaleOrder otherwise); m == n is allowed when it is false.
GridFunction lasry_lions(const GridFunction& f, const Kernel& k, SmoothingScale n,
                         SmoothingScale m, bool require_order = true);

/// Nodes y with f(y) + n K(center, y) <= inf_convolve(f)(center) + 1.
struct OmegaSet {
  std::size_t center = 0;
  double n = 0.0;
  std::vector<std::size_t> members;
  double diameter = 0.0;  // max pairwise distance in the kernel's norm
};
OmegaSet omega_set(const GridFunction& f, const Kernel& k, SmoothingScale n, std::size_t center);

/// Separable lower envelope of parabolas: the same result as inf_convolve
/// for a quadratic kernel in O(N) per grid line. UnsupportedKernel otherwise.
GridFunction fast_quadratic_inf_convolve(const GridFunction& f, const Kernel& k, SmoothingScale n);

}  // namespace dcreg
