#pragma once

#include <span>
#include <vector>

#include "featknn/feature_set.hpp"
#include "featknn/matrix.hpp"

namespace featknn {

/// Per-dimension minimum and maximum over a database.
struct NormalizationStats {
  std::vector<double> min_vals;
  std::vector<double> max_vals;

  std::size_t dim() const noexcept { return min_vals.size(); }
  friend bool operator==(const NormalizationStats&, const NormalizationStats&) = default;
};

NormalizationStats fit_minmax(const FeatureSet& database);
NormalizationStats fit_minmax(const Matrix<float>& database);

/// (x - min) / (max - min) per dimension; a constant column maps to 0.
/// No clamping, so test vectors may leave [0, 1].
std::vector<double> apply_minmax(const NormalizationStats& stats, std::span<const float> x);
std::vector<double> apply_minmax(const NormalizationStats& stats, std::span<const double> x);

inline constexpr double kDefaultVarianceThreshold = 0.99;

/// Projection onto the leading principal axes of a database.
struct PcaTransform {
  std::vector<double> mean;                     // dim
  Matrix<double> components;                    // n_components x dim, orthonormal rows
  std::vector<double> explained_variance_ratio; // n_components, non-increasing

  std::size_t dim() const noexcept { return mean.size(); }
  std::size_t n_components() const noexcept { return components.rows(); }
  double retained_variance() const noexcept;

  friend bool operator==(const PcaTransform&, const PcaTransform&) = default;
};

/// Fits PCA by SVD of the mean-centred data and keeps the smallest number of
/// axes whose cumulative explained-variance ratio reaches `variance_threshold`.
/// Each axis is sign-normalised so its largest-magnitude entry (lowest index
/// on ties) is positive.
PcaTransform fit_pca(const Matrix<double>& database, double variance_threshold = kDefaultVarianceThreshold);

/// components * (x - mean)
std::vector<double> apply_pca(const PcaTransform& transform, std::span<const double> x);

/// Smallest m with cumulative(ratios[0..m)) >= threshold. Stops early once
/// the remaining variance is numerically zero, and never exceeds ratios.size().
std::size_t select_component_count(std::span<const double> ratios, double threshold);

}  // namespace featknn
