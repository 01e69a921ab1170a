#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "featknn/feature_set.hpp"
#include "featknn/kernels.hpp"
#include "featknn/matrix.hpp"
#include "featknn/metrics.hpp"
#include "featknn/preprocess.hpp"

namespace featknn {

struct PipelineConfig {
  bool use_pca = true;
  double variance_threshold = kDefaultVarianceThreshold;

  friend bool operator==(const PipelineConfig&, const PipelineConfig&) = default;
};

/// Frozen classifier: normalisation stats, optional PCA and the processed
/// database rows. Immutable; safe to query from many threads.
class KnnModel {
 public:
  /// Validates the pieces against each other (used by fit and the KNNM reader).
  KnnModel(NormalizationStats stats, std::optional<PcaTransform> pca, Matrix<float> database,
           std::vector<ClassIndex> labels, std::vector<std::string> class_names, PipelineConfig config);

  const NormalizationStats& stats() const noexcept { return stats_; }
  const std::optional<PcaTransform>& pca() const noexcept { return pca_; }
  const Matrix<float>& database() const noexcept { return database_; }
  const std::vector<ClassIndex>& labels() const noexcept { return labels_; }
  const std::vector<std::string>& class_names() const noexcept { return class_names_; }
  const PipelineConfig& config() const noexcept { return config_; }

  std::size_t size() const noexcept { return database_.rows(); }
  std::size_t raw_dim() const noexcept { return stats_.dim(); }
  std::size_t processed_dim() const noexcept { return database_.cols(); }

 private:
  NormalizationStats stats_;
  std::optional<PcaTransform> pca_;
  Matrix<float> database_;
  std::vector<ClassIndex> labels_;
  std::vector<std::string> class_names_;
  PipelineConfig config_;
};

struct Neighbor {
  std::size_t index = 0;
  double distance = 0.0;
  ClassIndex label = 0;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

struct Prediction {
  ClassIndex predicted_class = 0;
  std::vector<std::size_t> votes;   // one count per class
  std::vector<Neighbor> neighbors;  // ascending distance, ties by index

  friend bool operator==(const Prediction&, const Prediction&) = default;
};

KnnModel fit(const FeatureSet& database, const PipelineConfig& config);

/// Raw vector -> min-max -> optional PCA, rounded to the stored f32 precision.
std::vector<float> apply_pipeline(const KnnModel& model, std::span<const float> raw);

std::vector<Neighbor> neighbors(const KnnModel& model, std::span<const float> raw, std::size_t k,
                                MetricKind metric, Execution exec = Execution::Serial);

Prediction classify(const KnnModel& model, std::span<const float> raw, std::size_t k, MetricKind metric,
                    Execution exec = Execution::Serial);

/// The k smallest of `distances` ordered by (distance, index).
std::vector<Neighbor> select_neighbors(std::span<const double> distances, std::span<const ClassIndex> labels,
                                       std::size_t k);

/// Majority vote over `nearest`. Ties go to the smaller summed distance, then
/// the smaller class index.
Prediction vote(std::vector<Neighbor> nearest, std::size_t n_classes);

struct TimedPrediction {
  Prediction prediction;
  double seconds = 0.0;
};

/// Classifies every row of `queries`. The Parallel path splits queries across
/// OpenMP threads; results are identical to the serial loop.
std::vector<TimedPrediction> classify_batch(const KnnModel& model, const Matrix<float>& queries, std::size_t k,
                                            MetricKind metric, Execution exec = Execution::Parallel);

}  // namespace featknn
