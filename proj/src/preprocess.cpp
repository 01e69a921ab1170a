#include "featknn/preprocess.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <numeric>

#include "featknn/error.hpp"
#include "featknn/kernels.hpp"

namespace featknn {

NormalizationStats fit_minmax(const Matrix<float>& database) {
  if (database.rows() == 0 || database.cols() == 0) throw InsufficientData("cannot fit min-max on an empty database");
  for (float v : database.values())
    if (!std::isfinite(v)) throw InvalidData("non-finite value in database");
  NormalizationStats stats{std::vector<double>(database.cols()), std::vector<double>(database.cols())};
  kernels::omp::column_minmax(database, stats.min_vals, stats.max_vals);
  return stats;
}

NormalizationStats fit_minmax(const FeatureSet& database) { return fit_minmax(database.vectors()); }

namespace {

template <typename T>
std::vector<double> minmax_impl(const NormalizationStats& stats, std::span<const T> x) {
  if (x.size() != stats.dim()) throw DimensionError(stats.dim(), x.size());
  std::vector<double> out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double lo = stats.min_vals[j];
    const double hi = stats.max_vals[j];
    out[j] = hi > lo ? (static_cast<double>(x[j]) - lo) / (hi - lo) : 0.0;
  }
  return out;
}

}  // namespace

std::vector<double> apply_minmax(const NormalizationStats& stats, std::span<const float> x) {
  return minmax_impl(stats, x);
}

std::vector<double> apply_minmax(const NormalizationStats& stats, std::span<const double> x) {
  return minmax_impl(stats, x);
}

double PcaTransform::retained_variance() const noexcept {
  return std::accumulate(explained_variance_ratio.begin(), explained_variance_ratio.end(), 0.0);
}

std::size_t select_component_count(std::span<const double> ratios, double threshold) {
  // Once less than this fraction of the variance is left, further axes are
  // rounding noise and are never worth keeping, whatever the threshold.
  constexpr double kNegligibleRemainder = 1e-12;
  double cumulative = 0.0;
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    cumulative += ratios[i];
    if (cumulative >= threshold || 1.0 - cumulative <= kNegligibleRemainder) return i + 1;
  }
  return ratios.size();
}

PcaTransform fit_pca(const Matrix<double>& database, double variance_threshold) {
  if (!(variance_threshold > 0.0 && variance_threshold <= 1.0))
    throw ParameterError("threshold must be in (0,1]");
  const auto n = database.rows();
  const auto dim = database.cols();
  if (n < 2) throw InsufficientData("PCA needs at least 2 database vectors, got " + std::to_string(n));
  if (dim == 0) throw InsufficientData("PCA on zero-dimensional data");

  bool all_equal = true;
  for (std::size_t i = 1; i < n && all_equal; ++i)
    all_equal = std::equal(database.row(i).begin(), database.row(i).end(), database.row(0).begin());
  if (all_equal) throw DegenerateData("all database vectors are identical; total variance is zero");

  PcaTransform out;
  out.mean.assign(dim, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < dim; ++j) out.mean[j] += database(i, j);
  for (auto& m : out.mean) m /= static_cast<double>(n);

  Eigen::MatrixXd centered(n, dim);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < dim; ++j) centered(i, j) = database(i, j) - out.mean[j];

  const double total = centered.squaredNorm();
  if (!(total > 0.0)) throw DegenerateData("total variance is zero");

  Eigen::BDCSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const Eigen::MatrixXd& axes = svd.matrixV();

  const std::size_t available = std::min<std::size_t>(n - 1, dim);
  std::vector<double> ratios(available);
  for (std::size_t i = 0; i < available; ++i) ratios[i] = std::min(1.0, sv(i) * sv(i) / total);

  const auto m = select_component_count(ratios, variance_threshold);
  out.explained_variance_ratio.assign(ratios.begin(), ratios.begin() + m);
  out.components = Matrix<double>(m, dim);
  for (std::size_t c = 0; c < m; ++c) {
    std::size_t pivot = 0;
    for (std::size_t j = 1; j < dim; ++j)
      if (std::abs(axes(j, c)) > std::abs(axes(pivot, c))) pivot = j;
    const double sign = axes(pivot, c) < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < dim; ++j) out.components(c, j) = sign * axes(j, c);
  }
  return out;
}

std::vector<double> apply_pca(const PcaTransform& transform, std::span<const double> x) {
  if (x.size() != transform.dim()) throw DimensionError(transform.dim(), x.size());
  std::vector<double> centered(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) centered[j] = x[j] - transform.mean[j];
  std::vector<double> out(transform.n_components());
  for (std::size_t c = 0; c < out.size(); ++c) {
    const auto axis = transform.components.row(c);
    double acc = 0.0;
    for (std::size_t j = 0; j < centered.size(); ++j) acc += axis[j] * centered[j];
    out[c] = acc;
  }
  return out;
}

}  // namespace featknn
