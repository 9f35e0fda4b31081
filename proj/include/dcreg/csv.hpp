#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "dcreg/grid_function.hpp"

namespace dcreg {

/// A set of named grid functions sharing one grid, as stored in CSV form:
/// header `x[,y],<name>...`, one row per node in row-major order, `+inf` for
/// +inf, values in shortest round-trip decimal form.
struct Table {
  Grid grid = Grid::line(0.0, 1.0, 2);
  std::vector<std::string> names;
  std::vector<GridFunction> columns;

  const GridFunction& column(const std::string& name) const;
  bool has_column(const std::string& name) const;
};

void write_table(std::ostream& os, const Grid& grid,
                 const std::vector<std::pair<std::string, const GridFunction*>>& columns);
Table read_table(std::istream& is);

/// Single-column form with header `x[,y],value`.
void write_csv(std::ostream& os, const GridFunction& f);
GridFunction read_csv(std::istream& is);

/// File helpers. write_* go through a temporary file and a rename so a
/// reader never sees a partially written artifact.
void write_file_atomic(const std::string& path, const std::string& contents);
GridFunction read_csv_file(const std::string& path);
Table read_table_file(const std::string& path);

}  // namespace dcreg
