#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include "doctest.h"
#include "gsmin/csv.hpp"
#include "gsmin/error.hpp"

using namespace gsmin;

TEST_CASE("shortest round-trip formatting") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(-2.5e-300) == "-2.5e-300");
  CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
  for (double x : {M_PI, 1.0 / 3.0, 6.02214076e23, 4.9e-324})
    CHECK(std::strtod(format_double(x).c_str(), nullptr) == x);
}

TEST_CASE("writer quotes and checks widths") {
  const std::string file = "test_writer.csv";
  {
    CsvWriter w(file, {"a", "b", "c"});
    w.row({1, "x,y", 0.5});
    w.row({true, "say \"hi\"", 2L});
    CHECK_THROWS_AS(w.row({1, 2}), Error);
    w.close();
  }
  std::ifstream in(file);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == "a,b,c\n1,\"x,y\",0.5\ntrue,\"say \"\"hi\"\"\",2\n");
  CHECK_THROWS_AS(CsvWriter("/nonexistent-dir/x.csv", {"a"}), Error);
}
