#include <sstream>

#include "doctest.h"
#include "minorsep/errors.hpp"
#include "minorsep/io.hpp"

using namespace minorsep;

TEST_CASE("separator files") {
  const VertexSet s = VertexSet::from_sorted({2, 5, 9});
  std::stringstream buf;
  write_separator(buf, s);
  CHECK(buf.str() == "separator 3\n2\n5\n9\n");
  CHECK(read_separator(buf) == s);

  std::stringstream empty;
  write_separator(empty, {});
  CHECK(read_separator(empty).empty());

  std::istringstream wrong("separator 2\n1\n");
  CHECK_THROWS_AS(read_separator(wrong), InputError);
  std::istringstream header("sep 1\n1\n");
  CHECK_THROWS_AS(read_separator(header), InputError);
}

TEST_CASE("minor files") {
  MinorModel m{{VertexSet::from_sorted({0, 1}), VertexSet::from_sorted({4}), VertexSet::from_sorted({2, 3, 7})}};
  std::stringstream buf;
  write_minor(buf, m);
  CHECK(buf.str() == "minor 3\n0 1\n4\n2 3 7\n");
  CHECK(read_minor(buf).branch_sets == m.branch_sets);

  std::istringstream short_file("minor 2\n0 1\n");
  CHECK_THROWS_AS(read_minor(short_file), InputError);
  std::istringstream junk("minor 1\n0 q\n");
  CHECK_THROWS_AS(read_minor(junk), InputError);
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("2/3") == Rational{2, 3});
  CHECK(parse_rational("4/6") == Rational{2, 3});
  CHECK(parse_rational("1") == Rational{1, 1});
  CHECK(parse_rational("0.5") == Rational{1, 2});
  CHECK(parse_rational("0.125") == Rational{1, 8});
  CHECK_THROWS_AS(parse_rational("1/0"), InputError);
  CHECK_THROWS_AS(parse_rational("abc"), InputError);
  CHECK_THROWS_AS(parse_rational(""), InputError);
  CHECK_THROWS_AS(parse_rational("-1/2"), InputError);
}

TEST_CASE("malformed traces are rejected") {
  CHECK_THROWS(trace_from_json("{"));
  CHECK_THROWS(trace_from_json("[1, 2]"));
}
