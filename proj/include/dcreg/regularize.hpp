#pragma once

#include <optional>
#include <vector>

#include "dcreg/envelope.hpp"
#include "dcreg/grid_function.hpp"
#include "dcreg/infconv.hpp"
#include "dcreg/kernel.hpp"

namespace dcreg {

/// value = plus - minus, with plus = co(I f + n c_K) and minus = n c_K.
/// Where plus touches I f + n c_K the value is I f itself, so nodes on the
/// envelope reproduce the smoothed function bit for bit.
struct DeltaConvexFunction {
  ConvexGridFunction plus;
  ConvexGridFunction minus;
  GridFunction value;
};

/// n * c_K sampled at every node.
GridFunction scaled_c(const Grid& grid, const Kernel& k, SmoothingScale n);

/// I f + n c_K.
GridFunction g_n(const GridFunction& f, const Kernel& k, SmoothingScale n);

/// Same quantity evaluated literally as
///   inf_y { f(y) + a n |x|^p + a n |y|^p - n |x+y|^p } + a n |x|^p,  a = 2^(p-1),
/// without going through the kernel tables. Kp kernels only.
GridFunction g_n_direct(const GridFunction& f, const Kernel& k, SmoothingScale n);

/// Assembles the decomposition from precomputed stages.
DeltaConvexFunction assemble_delta(const GridFunction& inf_conv, const GridFunction& g,
                                   const ConvexGridFunction& co_g, const GridFunction& nc);
GridFunction delta_value(const GridFunction& inf_conv, const GridFunction& g,
                         const GridFunction& co_g, const GridFunction& nc);

DeltaConvexFunction delta_regularize(const GridFunction& f, const Kernel& k, SmoothingScale n);

/// Stages of one scale as plain samples, so a run can be rebuilt from CSV
/// artifacts (including tampered ones) and checked.
struct ScaleStages {
  double n = 0.0;
  GridFunction I_f;
  GridFunction II_f;
  GridFunction g_n;
  GridFunction co_g_n;
  GridFunction nc;
  GridFunction delta;
};

struct RunOptions {
  /// f is replaced by max(f, floor) before smoothing.
  std::optional<double> clip_floor;
  /// Use the separable parabola path for I f when the kernel is quadratic.
  bool fast_quadratic = false;
};

struct RegularizationRun {
  GridFunction input;  // f after clipping
  Kernel kernel;
  std::vector<double> schedule;
  std::vector<ScaleStages> stages;
  std::optional<double> clip_floor;
};

/// Runs the pipeline at every scale. The schedule must be strictly
/// increasing (ScaleOrder otherwise).
RegularizationRun run_regularization(const GridFunction& f, const Kernel& k,
                                     const std::vector<double>& schedule,
                                     const RunOptions& options = {});

/// 1, 2, 4, ..., 2^K.
std::vector<double> doubling_schedule(int K = 6);

/// D_n g(x) = max_y g(y) + n d_K(x, y) over nodes. g must be finite.
ConvexGridFunction dual_part(const GridFunction& g, const Kernel& k, SmoothingScale n);

struct EnvelopeChainReport {
  double precondition_violation = 0.0;  // max of (d - c) - e
  double lower_violation = 0.0;         // max of (d - c) - (co(e + c) - c)
  double upper_violation = 0.0;         // max of (co(e + c) - c) - e
  double tolerance = 0.0;
  bool pass = false;
};

/// Checks d - c <= co(e + c) - c <= e node-wise on nodes where c and e are
/// finite. PreconditionViolated when d - c <= e fails beyond tolerance.
EnvelopeChainReport envelope_chain_check(const GridFunction& c, const ConvexGridFunction& d, const GridFunction& e);

/// Pipeline applied to dist(x, F) = min over F of |x - y| in the kernel norm.
/// EmptySet if no node is selected.
DeltaConvexFunction distance_regularize(const Grid& grid, const std::vector<std::size_t>& target,
                                        const Kernel& k, SmoothingScale n);
GridFunction distance_function(const Grid& grid, const std::vector<std::size_t>& target,
                               const NormSpec& norm);

/// Pipeline applied to a function that is +inf off its support S. The result
/// is finite everywhere and keeps inf and argmin of f on S.
DeltaConvexFunction extend_regularize(const GridFunction& f_S, const Kernel& k, SmoothingScale n);

/// max over finite nodes of f_S - value (the on-support gap).
double support_gap(const GridFunction& f_S, const GridFunction& value);

}  // namespace dcreg
