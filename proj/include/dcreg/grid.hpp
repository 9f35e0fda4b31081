#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>

namespace dcreg {

/// A point of R^d for d <= 2. The second coordinate is zero for 1D grids.
using Point = std::array<double, 2>;

/// Uniform box grid in one or two dimensions. Nodes are ordered row-major
/// with the first axis slowest: index = i0 * nodes(1) + i1.
class Grid {
 public:
  /// One-dimensional grid on [lo, hi].
  static Grid line(double lo, double hi, std::size_t nodes);
  /// Two-dimensional grid on [lo0, hi0] x [lo1, hi1].
  static Grid box(double lo0, double hi0, std::size_t nodes0,
                  double lo1, double hi1, std::size_t nodes1);
  /// Parses "lo:hi:nodes" per axis, comma separated for 2D.
  static Grid parse(std::string_view domain);

  int dim() const noexcept { return dim_; }
  double lo(int axis) const noexcept { return lo_[axis]; }
  double hi(int axis) const noexcept { return hi_[axis]; }
  std::size_t nodes(int axis) const noexcept { return nodes_[axis]; }
  double step(int axis) const noexcept { return step_[axis]; }
  std::size_t size() const noexcept { return nodes_[0] * nodes_[1]; }

  /// lo + i * step on the given axis; the last node is exactly hi.
  double coord(int axis, std::size_t i) const noexcept {
    if (i + 1 == nodes_[axis]) return hi_[axis];
    return lo_[axis] + static_cast<double>(i) * step_[axis];
  }

  std::size_t index(std::size_t i0, std::size_t i1 = 0) const noexcept {
    return i0 * nodes_[1] + i1;
  }
  std::array<std::size_t, 2> multi_index(std::size_t idx) const noexcept {
    return {idx / nodes_[1], idx % nodes_[1]};
  }

  Point point(std::size_t idx) const noexcept;

  /// True when idx lies within `width` nodes of the box boundary on any axis.
  bool near_boundary(std::size_t idx, std::size_t width) const noexcept;

  /// Inverse of parse.
  std::string to_domain_string() const;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  Grid() = default;
  void finalize();

  int dim_ = 1;
  std::array<double, 2> lo_{0.0, 0.0};
  std::array<double, 2> hi_{0.0, 0.0};
  std::array<std::size_t, 2> nodes_{1, 1};
  std::array<double, 2> step_{0.0, 0.0};
};

/// Throws IncompatibleGrid unless a == b.
void require_same_grid(const Grid& a, const Grid& b);

}  // namespace dcreg
