#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace featknn {

enum class MetricKind { Euclidean, CityBlock, Canberra, Cosine };

inline constexpr MetricKind kAllMetrics[] = {MetricKind::Euclidean, MetricKind::CityBlock,
                                             MetricKind::Canberra, MetricKind::Cosine};

/// "euclidean" | "cityblock" | "canberra" | "cosine", case-insensitive.
std::optional<MetricKind> parse_metric(std::string_view name);
std::string_view to_string(MetricKind kind) noexcept;

// All distances accumulate in double regardless of the input precision.
// Mismatched lengths throw DimensionError.

double euclidean(std::span<const float> x, std::span<const float> y);
double euclidean(std::span<const double> x, std::span<const double> y);

double city_block(std::span<const float> x, std::span<const float> y);
double city_block(std::span<const double> x, std::span<const double> y);

/// A term with x_i == y_i == 0 contributes 0.
double canberra(std::span<const float> x, std::span<const float> y);
double canberra(std::span<const double> x, std::span<const double> y);

/// 1 - cos(angle). Throws ZeroVectorError if either vector has zero norm.
double cosine(std::span<const float> x, std::span<const float> y);
double cosine(std::span<const double> x, std::span<const double> y);

double distance(MetricKind kind, std::span<const float> x, std::span<const float> y);
double distance(MetricKind kind, std::span<const double> x, std::span<const double> y);

}  // namespace featknn
