#include "dcreg/csv.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dcreg/text.hpp"

namespace dcreg {

const GridFunction& Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return columns[i];
  fail(ErrorCode::IoError, "CSV has no column '" + name + "'");
}

bool Table::has_column(const std::string& name) const {
  for (const auto& n : names)
    if (n == name) return true;
  return false;
}

void write_table(std::ostream& os, const Grid& grid,
                 const std::vector<std::pair<std::string, const GridFunction*>>& columns) {
  for (const auto& [name, f] : columns) require_same_grid(grid, f->grid());
  os << (grid.dim() == 1 ? "x" : "x,y");
  for (const auto& [name, f] : columns) os << ',' << name;
  os << '\n';
  for (std::size_t i = 0; i < grid.size(); ++i) {
    Point p = grid.point(i);
    os << format_double(p[0]);
    if (grid.dim() == 2) os << ',' << format_double(p[1]);
    for (const auto& [name, f] : columns) os << ',' << format_double((*f)[i].raw());
    os << '\n';
  }
}

namespace {

bool close_coord(double a, double b, double step) {
  return std::abs(a - b) <= 1e-9 * step;
}

Grid infer_grid(int dim, const std::vector<std::array<double, 2>>& coords) {
  const std::size_t rows = coords.size();
  if (rows < 2) fail(ErrorCode::IoError, "CSV needs at least two rows");
  if (dim == 1) {
    Grid g = Grid::line(coords.front()[0], coords.back()[0], rows);
    for (std::size_t i = 0; i < rows; ++i)
      if (!close_coord(coords[i][0], g.coord(0, i), g.step(0)))
        fail(ErrorCode::IoError, "x column is not a uniform ascending grid");
    return g;
  }
  std::size_t n1 = 1;
  while (n1 < rows && coords[n1][0] == coords[0][0]) ++n1;
  if (n1 < 2 || rows % n1 != 0)
    fail(ErrorCode::IoError, "2D CSV rows are not a row-major box grid");
  const std::size_t n0 = rows / n1;
  Grid g = Grid::box(coords.front()[0], coords.back()[0], n0,
                     coords.front()[1], coords[n1 - 1][1], n1);
  for (std::size_t i = 0; i < rows; ++i) {
    Point p = g.point(i);
    if (!close_coord(coords[i][0], p[0], g.step(0)) || !close_coord(coords[i][1], p[1], g.step(1)))
      fail(ErrorCode::IoError, "2D CSV coordinates are not a uniform row-major grid");
  }
  return g;
}

}  // namespace

Table read_table(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) fail(ErrorCode::IoError, "empty CSV");
  std::vector<std::string_view> header = split(trim(line), ',');
  for (auto& h : header) h = trim(h);
  int dim = 0;
  if (header.size() >= 2 && header[0] == "x" && header[1] == "y") dim = 2;
  else if (!header.empty() && header[0] == "x") dim = 1;
  else fail(ErrorCode::IoError, "CSV header must start with x[,y]");
  if (header.size() <= static_cast<std::size_t>(dim))
    fail(ErrorCode::IoError, "CSV has no value columns");

  Table t;
  for (std::size_t c = dim; c < header.size(); ++c) t.names.emplace_back(header[c]);
  const std::size_t ncols = t.names.size();

  std::vector<std::array<double, 2>> coords;
  std::vector<std::vector<ExtReal>> data(ncols);
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    std::string_view row = trim(line);
    if (row.empty()) continue;
    std::vector<std::string_view> cells = split(row, ',');
    if (cells.size() != header.size())
      fail(ErrorCode::IoError, "CSV line " + std::to_string(lineno) + " has wrong column count");
    auto cell = [&](std::size_t c) {
      try {
        return parse_double(cells[c]);
      } catch (const Error& e) {
        fail(ErrorCode::IoError, "CSV line " + std::to_string(lineno) + ": " + e.what());
      }
    };
    std::array<double, 2> xy{cell(0), dim == 2 ? cell(1) : 0.0};
    if (!std::isfinite(xy[0]) || !std::isfinite(xy[1]))
      fail(ErrorCode::IoError, "CSV line " + std::to_string(lineno) + " has a non-finite coordinate");
    coords.push_back(xy);
    for (std::size_t c = 0; c < ncols; ++c) data[c].emplace_back(cell(dim + c));
  }
  t.grid = infer_grid(dim, coords);
  for (std::size_t c = 0; c < ncols; ++c)
    t.columns.push_back(GridFunction::from_values(t.grid, std::move(data[c])));
  return t;
}

void write_csv(std::ostream& os, const GridFunction& f) {
  write_table(os, f.grid(), {{"value", &f}});
}

GridFunction read_csv(std::istream& is) {
  Table t = read_table(is);
  if (t.columns.size() != 1) fail(ErrorCode::IoError, "expected a single value column");
  return t.columns.front();
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) fail(ErrorCode::IoError, "cannot open '" + tmp.string() + "' for writing");
    os << contents;
    if (!os) fail(ErrorCode::IoError, "write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) fail(ErrorCode::IoError, "rename to '" + path + "' failed: " + ec.message());
}

GridFunction read_csv_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) fail(ErrorCode::IoError, "cannot open '" + path + "'");
  return read_csv(is);
}

Table read_table_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) fail(ErrorCode::IoError, "cannot open '" + path + "'");
  return read_table(is);
}

}  // namespace dcreg
