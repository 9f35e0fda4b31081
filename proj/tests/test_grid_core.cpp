#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "dcreg/csv.hpp"
#include "dcreg/error.hpp"
#include "dcreg/ext_real.hpp"
#include "dcreg/grid.hpp"
#include "dcreg/grid_function.hpp"
#include "dcreg/text.hpp"

using namespace dcreg;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode{};
}

}  // namespace

TEST(ExtReal, RejectsNanAndNegativeInfinity) {
  EXPECT_EQ(code_of([] { ExtReal(std::nan("")); }), ErrorCode::InvalidValue);
  EXPECT_EQ(code_of([] { ExtReal(-HUGE_VAL); }), ErrorCode::InvalidValue);
  EXPECT_TRUE(ExtReal(HUGE_VAL).is_infinite());
}

TEST(ExtReal, InfinityAbsorbsAndCannotBeSubtracted) {
  EXPECT_TRUE((ExtReal::infinity() + ExtReal(-5.0)).is_infinite());
  EXPECT_TRUE((ExtReal::infinity() - ExtReal(3.0)).is_infinite());
  EXPECT_EQ(code_of([] { (void)(ExtReal(1.0) - ExtReal::infinity()); }), ErrorCode::InvalidValue);
  EXPECT_EQ(code_of([] { (void)(-ExtReal::infinity()); }), ErrorCode::InvalidValue);
}

TEST(Grid, LastNodeIsExactlyHi) {
  const Grid g = Grid::line(-2.0, 2.0, 401);
  EXPECT_EQ(g.coord(0, 0), -2.0);
  EXPECT_EQ(g.coord(0, 400), 2.0);
  EXPECT_DOUBLE_EQ(g.step(0), 0.01);
  const Grid b = Grid::box(-1.0, 0.3, 7, 0.0, 1.1, 5);
  EXPECT_EQ(b.coord(0, 6), 0.3);
  EXPECT_EQ(b.coord(1, 4), 1.1);
}

TEST(Grid, RowMajorIndexing) {
  const Grid b = Grid::box(0, 1, 3, 0, 1, 4);
  EXPECT_EQ(b.size(), 12u);
  EXPECT_EQ(b.index(2, 1), 9u);
  const auto m = b.multi_index(9);
  EXPECT_EQ(m[0], 2u);
  EXPECT_EQ(m[1], 1u);
  EXPECT_EQ(b.point(9)[0], 1.0);
}

TEST(Grid, ParseRoundTrip) {
  for (const char* s : {"-2:2:401", "-4:4:801", "-2:2:41,-2:2:41", "0.1:0.7:3,-1e-3:5:2"}) {
    const Grid g = Grid::parse(s);
    EXPECT_EQ(Grid::parse(g.to_domain_string()), g) << s;
  }
}

TEST(Grid, RejectsMalformedDomains) {
  for (const char* s : {"", "1:0:5", "0:1:1", "0:1", "0:1:5,0:1:5,0:1:5", "a:b:c", "0:1:2.5", "0:inf:4"})
    EXPECT_EQ(code_of([&] { Grid::parse(s); }), ErrorCode::InvalidGrid) << s;
}

TEST(Grid, NearBoundary) {
  const Grid g = Grid::line(0, 1, 11);
  EXPECT_TRUE(g.near_boundary(0, 1));
  EXPECT_TRUE(g.near_boundary(10, 1));
  EXPECT_FALSE(g.near_boundary(1, 1));
  EXPECT_TRUE(g.near_boundary(1, 2));
}

TEST(GridFunction, AllInfiniteIsImproper) {
  const Grid g = Grid::line(0, 1, 3);
  EXPECT_EQ(code_of([&] { GridFunction::from_values(g, {HUGE_VAL, HUGE_VAL, HUGE_VAL}); }),
            ErrorCode::ImproperFunction);
}

TEST(GridFunction, InfimumArgminAndScale) {
  const Grid g = Grid::line(0, 1, 5);
  const GridFunction f = GridFunction::from_values(g, {3.0, -1.0, HUGE_VAL, -1.0, 2.0});
  EXPECT_EQ(f.infimum(), -1.0);
  EXPECT_EQ(f.argmin_set(), (std::vector<std::size_t>{1, 3}));
  EXPECT_EQ(f.scale(), 4.0);
  EXPECT_EQ(f.finite_count(), 4u);
}

TEST(GridFunction, ExcessAndDiffRespectInfinity) {
  const Grid g = Grid::line(0, 1, 3);
  const GridFunction a = GridFunction::from_values(g, {1.0, 2.0, 3.0});
  const GridFunction b = GridFunction::from_values(g, {0.5, HUGE_VAL, 3.25});
  EXPECT_EQ(max_excess(a, b), 0.5);
  EXPECT_EQ(max_excess(b, a), HUGE_VAL);
  EXPECT_EQ(max_abs_diff(a, b), HUGE_VAL);
}

TEST(Text, FormatDoubleRoundTrips) {
  for (double v : {0.1, -2.0, 1e-300, 123456.789, 1.0 / 3.0, 0.0, 4.9e-324}) {
    EXPECT_EQ(parse_double(format_double(v)), v);
  }
  EXPECT_EQ(format_double(HUGE_VAL), "+inf");
  EXPECT_EQ(parse_double("+inf"), HUGE_VAL);
}

TEST(Csv, RoundTripIsBitExact1D) {
  const Grid g = Grid::line(-1, 1, 7);
  const GridFunction f = GridFunction::sample(g, [](const Point& p) -> ExtReal {
    return p[0] > 0.5 ? ExtReal::infinity() : ExtReal(std::sin(p[0]) / 3.0);
  });
  std::stringstream ss;
  write_csv(ss, f);
  const GridFunction back = read_csv(ss);
  EXPECT_EQ(back.grid(), g);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(back[i].raw(), f[i].raw());
}

TEST(Csv, TableRoundTrip2D) {
  const Grid g = Grid::box(-1, 1, 4, 0, 2, 3);
  const GridFunction a = GridFunction::sample(g, [](const Point& p) { return ExtReal(p[0] * p[1] + 0.1); });
  const GridFunction b = a.shifted(2.5);
  std::stringstream ss;
  write_table(ss, g, {{"a", &a}, {"b", &b}});
  const Table t = read_table(ss);
  EXPECT_EQ(t.grid, g);
  ASSERT_TRUE(t.has_column("b"));
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(t.column("b")[i].raw(), b[i].raw());
}

TEST(Csv, RejectsBadInput) {
  std::stringstream s1("x,value\n0,1\n0.5,nope\n1,2\n");
  EXPECT_EQ(code_of([&] { read_csv(s1); }), ErrorCode::IoError);
  std::stringstream s2("x,value\n0,1\n0.3,1\n1,2\n");  // not uniform
  EXPECT_EQ(code_of([&] { read_csv(s2); }), ErrorCode::IoError);
}

TEST(Csv, MissingFileIsIoError) {
  EXPECT_EQ(code_of([] { read_csv_file("/nonexistent/dir/f.csv"); }), ErrorCode::IoError);
}
