#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "featknn/feature_set.hpp"
#include "featknn/knn.hpp"
#include "featknn/matrix.hpp"
#include "featknn/metrics.hpp"

namespace featknn {

/// Rows are true classes, columns predicted classes.
struct ConfusionMatrix {
  Matrix<std::uint64_t> counts;
  std::vector<std::string> class_names;

  std::uint64_t total() const noexcept;
  std::uint64_t trace() const noexcept;
  std::uint64_t row_sum(std::size_t r) const noexcept;

  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

struct EvaluationReport {
  double accuracy = 0.0;
  ConfusionMatrix confusion;
  std::vector<double> per_class_accuracy;  // NaN-free: classes absent from the test set report 0
  double mean_query_seconds = 0.0;
  double median_query_seconds = 0.0;
  std::size_t k = 0;
  MetricKind metric = MetricKind::CityBlock;
  PipelineConfig config;
  std::size_t n_components = 0;  // processed dimension of the model

  /// Equality on everything except the two timing fields.
  bool same_results(const EvaluationReport& other) const;
};

/// Builds the report fields derived from a confusion matrix.
EvaluationReport make_report(ConfusionMatrix confusion, std::span<const double> query_seconds, std::size_t k,
                             MetricKind metric, const KnnModel& model);

/// Classifies every test vector. Test class names must equal the model's,
/// in order; timing covers the classify calls only.
EvaluationReport evaluate(const KnnModel& model, const FeatureSet& test, std::size_t k, MetricKind metric,
                          Execution exec = Execution::Parallel);

struct SweepOptions {
  std::vector<MetricKind> metrics{std::begin(kAllMetrics), std::end(kAllMetrics)};
  std::vector<std::size_t> ks{1, 3, 5, 7, 9};
  std::vector<bool> pca_options{false, true};
  double variance_threshold = kDefaultVarianceThreshold;
  Execution exec = Execution::Parallel;
};

/// One report per (pca option, metric, k), in that nesting order. A model is
/// fitted once per pca option.
std::vector<EvaluationReport> sweep(const FeatureSet& train, const FeatureSet& test, const SweepOptions& options);

/// Index into `reports` of the best accuracy for each (pca, metric) group;
/// ties keep the smallest k.
struct BestCell {
  bool use_pca = false;
  MetricKind metric = MetricKind::CityBlock;
  std::size_t report_index = 0;
};
std::vector<BestCell> best_per_metric(const std::vector<EvaluationReport>& reports);

enum class ReportFormat { Text, Json, Csv };

std::optional<ReportFormat> parse_report_format(std::string_view name);

/// Text: aligned summary plus confusion table. Json: one object with the
/// documented keys. Csv: one row per (true, predicted) cell and a summary row.
std::string render_report(const EvaluationReport& report, ReportFormat format);

/// Inverse of the Json rendering.
EvaluationReport report_from_json(std::string_view json);

/// Grid rendering for sweep output. Text marks the best k per metric with '*'.
std::string render_sweep(const std::vector<EvaluationReport>& reports, ReportFormat format, bool color = false);

/// "96.67%"
std::string format_percent(double fraction);

}  // namespace featknn
