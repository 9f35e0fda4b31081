#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dcreg/grid_function.hpp"
#include "dcreg/kernel.hpp"

namespace dcreg {

/// A grid function whose finite samples are discretely convex: nonnegative
/// second differences along both axes and both diagonals, up to 1e-9 * scale.
/// Only the envelope constructors, the conjugate oracles and certify() can
/// build one.
class ConvexGridFunction {
 public:
  const GridFunction& base() const noexcept { return base_; }
  bool certified() const noexcept { return certified_; }

  /// Verifies convexity numerically; VerificationFailure when it fails.
  static ConvexGridFunction certify(const GridFunction& f);

 private:
  explicit ConvexGridFunction(GridFunction f) : base_(std::move(f)), certified_(true) {}

  friend ConvexGridFunction make_trusted_convex(GridFunction f);

  GridFunction base_;
  bool certified_;
};

/// Largest negative discrete second difference over interior finite triples
/// (0 for a discretely convex function).
double convexity_defect(const GridFunction& f);

/// Lower convex hull of the finite samples, evaluated at every node. Nodes
/// outside the convex hull of the finite nodes get +inf; +inf nodes inside it
/// get the hull value.
ConvexGridFunction convex_envelope_1d(const GridFunction& f);
ConvexGridFunction convex_envelope_2d(const GridFunction& f);
ConvexGridFunction convex_envelope(const GridFunction& f);

/// Uniform grid of slopes; axis a of `slopes` samples the a-th slope
/// component.
struct SlopeGrid {
  Grid slopes;
};

/// count_factor * nodes slopes per axis spanning the extreme adjacent
/// difference quotients of f, padded by 10% of the span.
SlopeGrid default_slope_grid(const GridFunction& f, std::size_t count_factor = 4);

/// f*(s) = max over finite nodes x of <s, x> - f(x), on the slope grid.
GridFunction legendre_transform(const GridFunction& f, const SlopeGrid& slopes);

/// f**(x) = max over slope nodes s of <s, x> - f*(s), at the nodes of f.
/// SlopeRangeTooNarrow when the slope grid misses the extreme difference
/// quotients of f.
ConvexGridFunction legendre_biconjugate(const GridFunction& f, const SlopeGrid& slopes);

/// Biconjugate with a continuous slope variable: the concave dual objective
/// is maximised per node by golden-section search over the range of `slopes`
/// (the last axis in 2D; the first slope component is eliminated exactly).
/// Matches the envelope wherever that range holds a subgradient.
ConvexGridFunction legendre_biconjugate_refined(const GridFunction& f, const SlopeGrid& slopes);

struct HolderEstimate {
  double alpha = 1.0;
  double constant = 0.0;        // max positive ratio over all probes
  double most_negative = 0.0;   // min ratio over all probes (<= 0)
  std::vector<double> per_radius;
  double stability_ratio = 1.0; // max / min of per_radius
};

/// max over nodes x and probes y of (v(x+y) + v(x-y) - 2 v(x)) / |y|^(1+alpha),
/// with y = k * step along the axes (and diagonals in 2D) for each k in
/// `offsets`. Centres within `boundary_mask` nodes of the box are skipped.
HolderEstimate second_difference_holder(const GridFunction& nu, double alpha,
                                        std::span<const std::size_t> offsets,
                                        const NormSpec& norm,
                                        std::size_t boundary_mask = 0);
HolderEstimate second_difference_holder(const GridFunction& nu, double alpha);

}  // namespace dcreg
