#include "featknn/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "featknn/error.hpp"

namespace featknn {

std::optional<MetricKind> parse_metric(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  for (auto kind : kAllMetrics)
    if (to_string(kind) == lower) return kind;
  return std::nullopt;
}

std::string_view to_string(MetricKind kind) noexcept {
  switch (kind) {
    case MetricKind::Euclidean: return "euclidean";
    case MetricKind::CityBlock: return "cityblock";
    case MetricKind::Canberra: return "canberra";
    case MetricKind::Cosine: return "cosine";
  }
  return "unknown";
}

namespace {

template <typename T>
void check_dims(std::span<const T> x, std::span<const T> y) {
  if (x.size() != y.size()) throw DimensionError(x.size(), y.size());
}

template <typename T>
double euclidean_impl(std::span<const T> x, std::span<const T> y) {
  check_dims(x, y);
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = static_cast<double>(x[i]) - static_cast<double>(y[i]);
    acc += d * d;
  }
  return std::sqrt(acc);
}

template <typename T>
double city_block_impl(std::span<const T> x, std::span<const T> y) {
  check_dims(x, y);
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += std::abs(static_cast<double>(x[i]) - static_cast<double>(y[i]));
  return acc;
}

template <typename T>
double canberra_impl(std::span<const T> x, std::span<const T> y) {
  check_dims(x, y);
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double a = x[i];
    const double b = y[i];
    const double denom = std::abs(a) + std::abs(b);
    if (denom > 0.0) acc += std::abs(a - b) / denom;
  }
  return acc;
}

template <typename T>
double cosine_impl(std::span<const T> x, std::span<const T> y) {
  check_dims(x, y);
  double dot = 0.0;
  double xx = 0.0;
  double yy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double a = x[i];
    const double b = y[i];
    dot += a * b;
    xx += a * a;
    yy += b * b;
  }
  if (xx == 0.0 || yy == 0.0) throw ZeroVectorError();
  // sqrt(xx * yy) rather than sqrt(xx) * sqrt(yy): sqrt(fl(a*a)) == a, so d(x, x) is exactly 0.
  return std::clamp(1.0 - dot / std::sqrt(xx * yy), 0.0, 2.0);
}

template <typename T>
double dispatch(MetricKind kind, std::span<const T> x, std::span<const T> y) {
  switch (kind) {
    case MetricKind::Euclidean: return euclidean_impl(x, y);
    case MetricKind::CityBlock: return city_block_impl(x, y);
    case MetricKind::Canberra: return canberra_impl(x, y);
    case MetricKind::Cosine: return cosine_impl(x, y);
  }
  throw ParameterError("unknown metric");
}

}  // namespace

double euclidean(std::span<const float> x, std::span<const float> y) { return euclidean_impl(x, y); }
double euclidean(std::span<const double> x, std::span<const double> y) { return euclidean_impl(x, y); }
double city_block(std::span<const float> x, std::span<const float> y) { return city_block_impl(x, y); }
double city_block(std::span<const double> x, std::span<const double> y) { return city_block_impl(x, y); }
double canberra(std::span<const float> x, std::span<const float> y) { return canberra_impl(x, y); }
double canberra(std::span<const double> x, std::span<const double> y) { return canberra_impl(x, y); }
double cosine(std::span<const float> x, std::span<const float> y) { return cosine_impl(x, y); }
double cosine(std::span<const double> x, std::span<const double> y) { return cosine_impl(x, y); }

double distance(MetricKind kind, std::span<const float> x, std::span<const float> y) { return dispatch(kind, x, y); }
double distance(MetricKind kind, std::span<const double> x, std::span<const double> y) {
  return dispatch(kind, x, y);
}

}  // namespace featknn
