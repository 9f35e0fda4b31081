#include "dcreg/grid.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <vector>

#include "dcreg/error.hpp"
#include "dcreg/text.hpp"

namespace dcreg {

namespace {

void check_axis(double lo, double hi, std::size_t nodes) {
  if (!std::isfinite(lo) || !std::isfinite(hi))
    fail(ErrorCode::InvalidGrid, "grid bounds must be finite");
  if (!(lo < hi)) fail(ErrorCode::InvalidGrid, "grid requires lo < hi on every axis");
  if (nodes < 2) fail(ErrorCode::InvalidGrid, "grid requires at least 2 nodes per axis");
}

}  // namespace

Grid Grid::line(double lo, double hi, std::size_t nodes) {
  check_axis(lo, hi, nodes);
  Grid g;
  g.dim_ = 1;
  g.lo_ = {lo, 0.0};
  g.hi_ = {hi, 0.0};
  g.nodes_ = {nodes, 1};
  g.finalize();
  return g;
}

Grid Grid::box(double lo0, double hi0, std::size_t nodes0,
               double lo1, double hi1, std::size_t nodes1) {
  check_axis(lo0, hi0, nodes0);
  check_axis(lo1, hi1, nodes1);
  Grid g;
  g.dim_ = 2;
  g.lo_ = {lo0, lo1};
  g.hi_ = {hi0, hi1};
  g.nodes_ = {nodes0, nodes1};
  g.finalize();
  return g;
}

void Grid::finalize() {
  for (int a = 0; a < dim_; ++a)
    step_[a] = (hi_[a] - lo_[a]) / static_cast<double>(nodes_[a] - 1);
}

Grid Grid::parse(std::string_view domain) {
  std::vector<std::string_view> axes = split(domain, ',');
  if (axes.empty() || axes.size() > 2)
    fail(ErrorCode::InvalidGrid, "domain must have one or two comma-separated axes");
  std::array<double, 2> lo{}, hi{};
  std::array<std::size_t, 2> n{};
  for (std::size_t a = 0; a < axes.size(); ++a) {
    std::vector<std::string_view> parts = split(trim(axes[a]), ':');
    if (parts.size() != 3)
      fail(ErrorCode::InvalidGrid,
           "axis spec '" + std::string(axes[a]) + "' is not lo:hi:nodes");
    try {
      lo[a] = parse_double(parts[0]);
      hi[a] = parse_double(parts[1]);
    } catch (const Error& e) {
      fail(ErrorCode::InvalidGrid, "axis spec '" + std::string(axes[a]) + "': " + e.what());
    }
    std::string_view count = trim(parts[2]);
    auto [ptr, ec] = std::from_chars(count.data(), count.data() + count.size(), n[a]);
    if (ec != std::errc() || ptr != count.data() + count.size())
      fail(ErrorCode::InvalidGrid, "bad node count '" + std::string(count) + "'");
  }
  if (axes.size() == 1) return line(lo[0], hi[0], n[0]);
  return box(lo[0], hi[0], n[0], lo[1], hi[1], n[1]);
}

Point Grid::point(std::size_t idx) const noexcept {
  if (dim_ == 1) return {coord(0, idx), 0.0};
  auto [i0, i1] = multi_index(idx);
  return {coord(0, i0), coord(1, i1)};
}

bool Grid::near_boundary(std::size_t idx, std::size_t width) const noexcept {
  if (width == 0) return false;
  auto mi = multi_index(idx);
  for (int a = 0; a < dim_; ++a) {
    std::size_t i = dim_ == 1 ? idx : mi[a];
    if (i < width || i + width >= nodes_[a]) return true;
  }
  return false;
}

std::string Grid::to_domain_string() const {
  std::ostringstream os;
  for (int a = 0; a < dim_; ++a) {
    if (a) os << ',';
    os << format_double(lo_[a]) << ':' << format_double(hi_[a]) << ':' << nodes_[a];
  }
  return os.str();
}

void require_same_grid(const Grid& a, const Grid& b) {
  if (!(a == b)) fail(ErrorCode::IncompatibleGrid, "grid functions live on different grids");
}

}  // namespace dcreg
