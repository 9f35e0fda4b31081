#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dcreg/grid.hpp"

namespace dcreg {

/// The l_p norm on R^dim (p in [1, inf]) together with its declared power
/// types. For 1 < p < inf the modulus of smoothness has power type min(p, 2)
/// and the modulus of convexity power type max(p, 2); l_1 and l_inf have
/// neither and carry nullopt.
struct NormSpec {
  int dim = 1;
  double p_norm = 2.0;
  std::optional<double> smoothness_power;
  std::optional<double> convexity_power;

  static NormSpec lp(int dim, double p);
  static NormSpec euclidean(int dim) { return lp(dim, 2.0); }

  bool is_euclidean() const noexcept { return p_norm == 2.0; }
  /// Fast path used by the grid operators; ignores coordinates >= dim.
  double operator()(const Point& x) const noexcept;
};

/// ||x||_p; throws DimensionMismatch unless x.size() == norm.dim.
double norm_eval(const NormSpec& norm, std::span<const double> x);

enum class KernelKind { Kp, Hilbert };

/// Plain-data description used by config files: `norm_p`, `dim`,
/// `exponent_p`, `kind` ("kp" | "hilbert").
struct KernelSpec {
  double norm_p = 2.0;
  int dim = 1;
  double exponent_p = 2.0;
  KernelKind kind = KernelKind::Kp;
};

std::string kernel_kind_name(KernelKind kind);
KernelKind parse_kernel_kind(const std::string& name);

/// Two-point kernel with convex decomposition K(x, y) = c(x) - d(x, y).
///
///   Kp:      K(x,y) = 2^(p-1)|x|^p + 2^(p-1)|y|^p - |x+y|^p
///            c(x)   = 2^(p-1)|x|^p,  d(x,y) = |x+y|^p - 2^(p-1)|y|^p
///   Hilbert: K(x,y) = |x-y|_2^2,  c(x) = |x|^2,  d(x,y) = 2<x,y> - |y|^2
///
/// Evaluation is exactly symmetric in (x, y) and exactly 0 on the diagonal.
class Kernel {
 public:
  static Kernel kp(const NormSpec& norm, double p);
  static Kernel hilbert(int dim);
  static Kernel from_spec(const KernelSpec& spec);

  const NormSpec& norm() const noexcept { return norm_; }
  int dim() const noexcept { return norm_.dim; }
  double exponent() const noexcept { return p_; }
  KernelKind kind() const noexcept { return kind_; }
  KernelSpec spec() const;

  /// True when K(x,y) = |x-y|_2^2 (Hilbert kernel, or Kp with p = 2 on the
  /// Euclidean norm).
  bool is_quadratic() const noexcept;

  /// |x|^p for the kernel's norm and exponent.
  double power_norm(const Point& x) const noexcept;
  double c(const Point& x) const noexcept;
  double d(const Point& x, const Point& y) const noexcept;
  /// K before clamping; may be a few ulps negative.
  double raw(const Point& x, const Point& y) const noexcept;
  /// K clamped at 0.
  double operator()(const Point& x, const Point& y) const noexcept;

 private:
  Kernel(NormSpec norm, double p, KernelKind kind);

  NormSpec norm_;
  double p_;
  KernelKind kind_;
  double half_weight_;  // 2^(p-1)
};

Point to_point(const Kernel& k, std::span<const double> x);

/// Clamped K(x, y); DimensionMismatch if x or y does not match the kernel.
double kernel_eval(const Kernel& k, std::span<const double> x, std::span<const double> y);

struct KernelDecomposition {
  std::function<double(std::span<const double>)> c;
  std::function<double(std::span<const double>, std::span<const double>)> d;
};
KernelDecomposition kernel_decompose(const Kernel& k);

/// Growth pair (eta, gamma) with K(x,y) >= gamma |y|^p whenever
/// |y| >= eta |x|, gamma = 2^(p-1) - (1 + 1/eta)^p, eta the first entry of
/// {2, 3, 4, 8, 16, 32} giving gamma > 0. The bound is then checked on
/// `samples` random admissible pairs.
struct GrowthConstants {
  double eta = 0.0;
  double gamma = 0.0;
  double worst_ratio = 0.0;  // min over samples of K / (gamma |y|^p)
  std::size_t samples = 0;
};
GrowthConstants estimate_growth_constants(const Kernel& k, std::size_t samples,
                                          std::uint64_t seed = 0);

/// min of K(x,y) / |x-y|^p over sampled pairs with |x| <= r, |x-y| >= delta.
/// Random pairs are complemented by a fixed set of probes on the sphere of
/// radius r so flat faces of l_1 / l_inf balls are always visited.
double estimate_separation_constant(const Kernel& k, double r, double delta,
                                    std::size_t samples, std::uint64_t seed = 0);

/// Same ratio, minimised exhaustively over node pairs of a grid with
/// |x-y| >= delta.
double grid_separation_constant(const Kernel& k, const Grid& grid, double delta);

}  // namespace dcreg
