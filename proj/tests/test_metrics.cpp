#include <doctest.h>

#include <cmath>
#include <vector>

#include "featknn/error.hpp"
#include "featknn/metrics.hpp"
#include "support/oracles.hpp"

using namespace featknn;
using V = std::vector<double>;

namespace {
double d(MetricKind k, const V& x, const V& y) { return distance(k, std::span<const double>(x), std::span<const double>(y)); }
}  // namespace

TEST_CASE("euclidean examples") {
  CHECK(euclidean(V{0, 0}, V{3, 4}) == 5.0);
  CHECK(euclidean(V{1, 2, 3}, V{4, 6, 3}) == 5.0);
  CHECK(euclidean(V{0.3, -7}, V{0.3, -7}) == 0.0);
}

TEST_CASE("city_block examples") {
  CHECK(city_block(V{1, 2}, V{4, 6}) == 7.0);
  CHECK(city_block(V{0, 0, 0}, V{-1, 1, -1}) == 3.0);
  CHECK(city_block(V{0.3, -7}, V{0.3, -7}) == 0.0);
}

TEST_CASE("canberra examples") {
  CHECK(canberra(V{1, 0}, V{3, 0}) == 0.5);
  CHECK(canberra(V{0, 0}, V{0, 0}) == 0.0);
  CHECK(std::fabs(canberra(V{1, 2}, V{3, 4}) - (2.0 / 4.0 + 2.0 / 6.0)) < 1e-12);
  CHECK(std::fabs(canberra(V{1, 2}, V{3, 4}) - 0.8333333333333333) < 1e-12);
}

TEST_CASE("cosine examples") {
  CHECK(cosine(V{1, 0}, V{0, 1}) == 1.0);
  CHECK(cosine(V{1, 1}, V{2, 2}) == 0.0);
  CHECK(cosine(V{1, 0}, V{-1, 0}) == 2.0);
  CHECK_THROWS_AS(cosine(V{0, 0}, V{1, 2}), ZeroVectorError);
  CHECK_THROWS_AS(cosine(V{1, 2}, V{0, 0}), ZeroVectorError);
}

TEST_CASE("dimension mismatch") {
  for (auto k : kAllMetrics) CHECK_THROWS_AS(d(k, V{1, 2}, V{1, 2, 3}), DimensionError);
}

TEST_CASE("distance dispatch matches frozen direct evaluation") {
  // Values computed independently with numpy from the one-line formulas.
  const V x{-1.241436, 1.999485, 0.346644, 1.340402, -0.937151, -1.550075, 1.144101, 0.079768};
  const V y{1.745056, 0.577948, -1.217119, 0.033269, 0.709351, 1.128837, -0.854632, 1.166229};
  CHECK(d(MetricKind::Euclidean, x, y) == doctest::Approx(5.491513703693091).epsilon(1e-13));
  CHECK(d(MetricKind::CityBlock, x, y) == doctest::Approx(14.689533).epsilon(1e-13));
  CHECK(d(MetricKind::Canberra, x, y) == doctest::Approx(7.37505516448458).epsilon(1e-13));
  CHECK(d(MetricKind::Cosine, x, y) == doctest::Approx(1.4569817328189196).epsilon(1e-13));
  CHECK(d(MetricKind::Euclidean, V{0, 0}, V{3, 4}) == 5.0);
  CHECK(d(MetricKind::Canberra, x, x) == 0.0);
}

TEST_CASE("float and double overloads agree on representable inputs") {
  const std::vector<float> xf{0.5f, -1.25f, 3.0f};
  const std::vector<float> yf{1.5f, 0.25f, -2.0f};
  const V xd(xf.begin(), xf.end());
  const V yd(yf.begin(), yf.end());
  for (auto k : kAllMetrics)
    CHECK(distance(k, std::span<const float>(xf), std::span<const float>(yf)) == d(k, xd, yd));
}

TEST_CASE("metric names parse case-insensitively and round-trip") {
  for (auto k : kAllMetrics) CHECK(parse_metric(to_string(k)) == k);
  CHECK(parse_metric("CityBlock") == MetricKind::CityBlock);
  CHECK(parse_metric("EUCLIDEAN") == MetricKind::Euclidean);
  CHECK_FALSE(parse_metric("manhattan").has_value());
  CHECK_FALSE(parse_metric("").has_value());
}

TEST_CASE("properties on random pairs") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t dim = 1 + rng() % 64;
    const auto x = oracle::random_vec(rng, dim);
    const auto y = oracle::random_vec(rng, dim);
    for (auto k : kAllMetrics) {
      CHECK(d(k, x, x) == 0.0);
      CHECK(d(k, x, y) == d(k, y, x));
      CHECK(d(k, x, y) >= 0.0);
    }
    CHECK(city_block(x, y) >= euclidean(x, y));
    CHECK(canberra(x, y) <= static_cast<double>(dim));
  }
}
