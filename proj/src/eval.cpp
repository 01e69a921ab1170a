#include "featknn/eval.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "featknn/error.hpp"

namespace featknn {

std::uint64_t ConfusionMatrix::total() const noexcept {
  return std::accumulate(counts.values().begin(), counts.values().end(), std::uint64_t{0});
}

std::uint64_t ConfusionMatrix::trace() const noexcept {
  std::uint64_t t = 0;
  for (std::size_t i = 0; i < counts.rows(); ++i) t += counts(i, i);
  return t;
}

std::uint64_t ConfusionMatrix::row_sum(std::size_t r) const noexcept {
  const auto row = counts.row(r);
  return std::accumulate(row.begin(), row.end(), std::uint64_t{0});
}

bool EvaluationReport::same_results(const EvaluationReport& other) const {
  return accuracy == other.accuracy && confusion == other.confusion &&
         per_class_accuracy == other.per_class_accuracy && k == other.k && metric == other.metric &&
         config == other.config && n_components == other.n_components;
}

namespace {

void check_vocabulary(const std::vector<std::string>& model, const std::vector<std::string>& test) {
  if (model == test) return;
  std::string msg = "test class names differ from the model's:";
  const auto n = std::max(model.size(), test.size());
  for (std::size_t i = 0; i < n; ++i) {
    const std::string a = i < model.size() ? model[i] : "<none>";
    const std::string b = i < test.size() ? test[i] : "<none>";
    if (a != b) msg += " [" + std::to_string(i) + "] model '" + a + "' vs test '" + b + "';";
  }
  throw VocabularyError(msg);
}

double median_of(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const auto mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

}  // namespace

EvaluationReport make_report(ConfusionMatrix confusion, std::span<const double> query_seconds, std::size_t k,
                             MetricKind metric, const KnnModel& model) {
  EvaluationReport report;
  const auto total = confusion.total();
  report.accuracy = total ? static_cast<double>(confusion.trace()) / static_cast<double>(total) : 0.0;
  report.per_class_accuracy.resize(confusion.counts.rows());
  for (std::size_t r = 0; r < confusion.counts.rows(); ++r) {
    const auto rs = confusion.row_sum(r);
    report.per_class_accuracy[r] = rs ? static_cast<double>(confusion.counts(r, r)) / static_cast<double>(rs) : 0.0;
  }
  report.confusion = std::move(confusion);
  if (!query_seconds.empty()) {
    report.mean_query_seconds = std::accumulate(query_seconds.begin(), query_seconds.end(), 0.0) /
                                static_cast<double>(query_seconds.size());
    report.median_query_seconds = median_of({query_seconds.begin(), query_seconds.end()});
  }
  report.k = k;
  report.metric = metric;
  report.config = model.config();
  report.n_components = model.pca() ? model.pca()->n_components() : 0;
  return report;
}

EvaluationReport evaluate(const KnnModel& model, const FeatureSet& test, std::size_t k, MetricKind metric,
                          Execution exec) {
  check_vocabulary(model.class_names(), test.class_names());
  if (test.dim() != model.raw_dim()) throw DimensionError(model.raw_dim(), test.dim());

  const auto results = classify_batch(model, test.vectors(), k, metric, exec);

  const auto n_classes = model.class_names().size();
  ConfusionMatrix confusion{Matrix<std::uint64_t>(n_classes, n_classes, 0), model.class_names()};
  std::vector<double> seconds;
  seconds.reserve(results.size());
  for (std::size_t i = 0; i < results.size(); ++i) {
    ++confusion.counts(test.labels()[i], results[i].prediction.predicted_class);
    seconds.push_back(results[i].seconds);
  }
  return make_report(std::move(confusion), seconds, k, metric, model);
}

std::vector<EvaluationReport> sweep(const FeatureSet& train, const FeatureSet& test, const SweepOptions& options) {
  if (options.metrics.empty() || options.ks.empty() || options.pca_options.empty())
    throw ParameterError("sweep needs at least one metric, one k and one PCA option");
  check_vocabulary(train.class_names(), test.class_names());
  std::vector<EvaluationReport> reports;
  reports.reserve(options.metrics.size() * options.ks.size() * options.pca_options.size());
  for (bool use_pca : options.pca_options) {
    const auto model = fit(train, PipelineConfig{use_pca, options.variance_threshold});
    for (auto metric : options.metrics)
      for (auto k : options.ks) reports.push_back(evaluate(model, test, k, metric, options.exec));
  }
  return reports;
}

std::vector<BestCell> best_per_metric(const std::vector<EvaluationReport>& reports) {
  std::vector<BestCell> best;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    auto it = std::find_if(best.begin(), best.end(), [&](const BestCell& b) {
      return b.use_pca == r.config.use_pca && b.metric == r.metric;
    });
    if (it == best.end()) {
      best.push_back({r.config.use_pca, r.metric, i});
      continue;
    }
    const auto& cur = reports[it->report_index];
    if (r.accuracy > cur.accuracy || (r.accuracy == cur.accuracy && r.k < cur.k)) it->report_index = i;
  }
  return best;
}

}  // namespace featknn
