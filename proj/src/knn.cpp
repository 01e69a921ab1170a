#include "featknn/knn.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <numeric>

#include "featknn/error.hpp"

namespace featknn {

namespace {

void check_config(const PipelineConfig& config) {
  if (!(config.variance_threshold > 0.0 && config.variance_threshold <= 1.0))
    throw ParameterError("threshold must be in (0,1]");
}

std::vector<float> run_pipeline(const NormalizationStats& stats, const std::optional<PcaTransform>& pca,
                                std::span<const float> raw) {
  auto normalized = apply_minmax(stats, raw);
  if (pca) normalized = apply_pca(*pca, normalized);
  return {normalized.begin(), normalized.end()};
}

void check_k(std::size_t k, std::size_t n) {
  if (k < 1 || k > n)
    throw ParameterError("k must be in [1, " + std::to_string(n) + "], got " + std::to_string(k));
}

}  // namespace

KnnModel::KnnModel(NormalizationStats stats, std::optional<PcaTransform> pca, Matrix<float> database,
                   std::vector<ClassIndex> labels, std::vector<std::string> class_names, PipelineConfig config)
    : stats_(std::move(stats)),
      pca_(std::move(pca)),
      database_(std::move(database)),
      labels_(std::move(labels)),
      class_names_(std::move(class_names)),
      config_(config) {
  check_config(config_);
  if (config_.use_pca != pca_.has_value()) throw InvalidData("PCA flag does not match the stored transform");
  const auto raw_dim = stats_.dim();
  if (raw_dim == 0 || stats_.max_vals.size() != raw_dim) throw InvalidData("malformed normalization stats");
  for (std::size_t j = 0; j < raw_dim; ++j) {
    if (!std::isfinite(stats_.min_vals[j]) || !std::isfinite(stats_.max_vals[j]))
      throw InvalidData("non-finite normalization stat at dimension " + std::to_string(j));
    if (stats_.min_vals[j] > stats_.max_vals[j])
      throw InvalidData("min > max at dimension " + std::to_string(j));
  }
  std::size_t expected_cols = raw_dim;
  if (pca_) {
    const auto m = pca_->n_components();
    if (m == 0 || pca_->dim() != raw_dim || pca_->components.cols() != raw_dim ||
        pca_->explained_variance_ratio.size() != m)
      throw InvalidData("PCA transform does not match raw dimension " + std::to_string(raw_dim));
    for (double v : pca_->mean)
      if (!std::isfinite(v)) throw InvalidData("non-finite PCA mean");
    for (double v : pca_->components.values())
      if (!std::isfinite(v)) throw InvalidData("non-finite PCA component");
    for (double v : pca_->explained_variance_ratio)
      if (!(v > 0.0 && v <= 1.0)) throw InvalidData("explained-variance ratio outside (0,1]");
    expected_cols = m;
  }
  if (database_.rows() == 0) throw InvalidData("model database is empty");
  if (database_.cols() != expected_cols)
    throw InvalidData("database has " + std::to_string(database_.cols()) + " columns, expected " +
                      std::to_string(expected_cols));
  for (float v : database_.values())
    if (!std::isfinite(v)) throw InvalidData("non-finite database value");
  if (labels_.size() != database_.rows()) throw InvalidData("label count does not match database rows");
  validate_class_names(class_names_);
  if (class_names_.empty()) throw InvalidData("empty class vocabulary");
  for (auto label : labels_)
    if (label >= class_names_.size()) throw InvalidData("label " + std::to_string(label) + " out of range");
}

KnnModel fit(const FeatureSet& database, const PipelineConfig& config) {
  check_config(config);
  auto stats = fit_minmax(database);
  std::optional<PcaTransform> pca;
  if (config.use_pca) {
    Matrix<double> normalized(database.size(), database.dim());
    for (std::size_t i = 0; i < database.size(); ++i) {
      const auto row = apply_minmax(stats, database.vectors().row(i));
      std::copy(row.begin(), row.end(), normalized.row(i).begin());
    }
    pca = fit_pca(normalized, config.variance_threshold);
  }
  const auto cols = pca ? pca->n_components() : database.dim();
  Matrix<float> processed(database.size(), cols);
  for (std::size_t i = 0; i < database.size(); ++i) {
    const auto row = run_pipeline(stats, pca, database.vectors().row(i));
    std::copy(row.begin(), row.end(), processed.row(i).begin());
  }
  return KnnModel(std::move(stats), std::move(pca), std::move(processed), database.labels(), database.class_names(),
                  config);
}

std::vector<float> apply_pipeline(const KnnModel& model, std::span<const float> raw) {
  return run_pipeline(model.stats(), model.pca(), raw);
}

std::vector<Neighbor> select_neighbors(std::span<const double> distances, std::span<const ClassIndex> labels,
                                       std::size_t k) {
  if (labels.size() != distances.size()) throw DimensionError(distances.size(), labels.size());
  check_k(k, distances.size());
  std::vector<std::size_t> order(distances.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      return distances[a] < distances[b] || (distances[a] == distances[b] && a < b);
                    });
  std::vector<Neighbor> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.push_back({order[i], distances[order[i]], labels[order[i]]});
  return out;
}

Prediction vote(std::vector<Neighbor> nearest, std::size_t n_classes) {
  if (nearest.empty()) throw ParameterError("cannot vote over zero neighbors");
  std::vector<std::size_t> votes(n_classes, 0);
  std::vector<double> distance_sum(n_classes, 0.0);
  for (const auto& nb : nearest) {
    if (nb.label >= n_classes) throw InvalidData("neighbor label out of range");
    ++votes[nb.label];
    distance_sum[nb.label] += nb.distance;
  }
  std::size_t best = 0;
  for (std::size_t c = 1; c < n_classes; ++c) {
    if (votes[c] > votes[best] || (votes[c] == votes[best] && distance_sum[c] < distance_sum[best])) best = c;
  }
  return Prediction{static_cast<ClassIndex>(best), std::move(votes), std::move(nearest)};
}

std::vector<Neighbor> neighbors(const KnnModel& model, std::span<const float> raw, std::size_t k, MetricKind metric,
                                Execution exec) {
  check_k(k, model.size());
  const auto query = apply_pipeline(model, raw);
  std::vector<double> distances(model.size());
  kernels::scan_distances(exec, metric, model.database(), query, distances);
  return select_neighbors(distances, model.labels(), k);
}

Prediction classify(const KnnModel& model, std::span<const float> raw, std::size_t k, MetricKind metric,
                    Execution exec) {
  return vote(neighbors(model, raw, k, metric, exec), model.class_names().size());
}

std::vector<TimedPrediction> classify_batch(const KnnModel& model, const Matrix<float>& queries, std::size_t k,
                                            MetricKind metric, Execution exec) {
  if (queries.cols() != model.raw_dim()) throw DimensionError(model.raw_dim(), queries.cols());
  check_k(k, model.size());
  std::vector<TimedPrediction> out(queries.rows());
  auto run_one = [&](std::size_t q) {
    const auto start = std::chrono::steady_clock::now();
    out[q].prediction = classify(model, queries.row(q), k, metric, Execution::Serial);
    out[q].seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  if (exec == Execution::Serial) {
    for (std::size_t q = 0; q < queries.rows(); ++q) run_one(q);
    return out;
  }

  const auto n = static_cast<std::ptrdiff_t>(queries.rows());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t q = 0; q < n; ++q) {
    try {
      run_one(static_cast<std::size_t>(q));
    } catch (...) {
#pragma omp critical(featknn_batch_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace featknn
