#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"

#include "blockfade/util.hpp"

using namespace blockfade;

TEST_CASE("format_double is shortest round-trip decimal") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(-2.5) == "-2.5");
  for (double x : {3.3e-3, 1.0 / 3.0, 12.065, -1e-9, 123456789.123}) {
    CHECK(std::stod(format_double(x)) == x);
  }
}

TEST_CASE("round9 keeps 9 significant digits and is idempotent") {
  CHECK(round9(0.0) == 0.0);
  CHECK(round9(1.0 / 3.0) == doctest::Approx(0.333333333).epsilon(1e-12));
  CHECK(round9(123456789.123) == 123456789.0);
  for (double x : {5.61, -2.15, 0.42, 3.3e-3, 282.123456789}) {
    CHECK(round9(round9(x)) == round9(x));
  }
}

TEST_CASE("fnv1a64_hex matches known vectors") {
  CHECK(fnv1a64_hex("") == "cbf29ce484222325");
  CHECK(fnv1a64_hex("a") == "af63dc4c8601ec8c");
  CHECK(fnv1a64_hex("foobar") == "85944171f73967e8");
}

TEST_CASE("mean and stddev use population denominators") {
  std::vector<double> v{1.0, 3.0};
  CHECK(mean_of(v) == 2.0);
  CHECK(stddev_of(v) == 1.0);
  CHECK(mean_of({}) == 0.0);
  CHECK(stddev_of({5.0}) == 0.0);
}

TEST_CASE("sorted_quantile interpolates linearly") {
  std::vector<double> v{0.0, 10.0};
  CHECK(sorted_quantile(v, 0.0) == 0.0);
  CHECK(sorted_quantile(v, 1.0) == 10.0);
  CHECK(sorted_quantile(v, 0.5) == 5.0);
  CHECK(sorted_quantile(v, 0.25) == 2.5);
  CHECK(sorted_quantile({7.0}, 0.9) == 7.0);
  CHECK_THROWS_AS(sorted_quantile({}, 0.5), std::invalid_argument);
}

TEST_CASE("read_file_bytes reports missing files") {
  CHECK_THROWS_AS(read_file_bytes("/nonexistent/file"), std::runtime_error);
}
