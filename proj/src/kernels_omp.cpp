#include <omp.h>

#include <algorithm>
#include <exception>
#include <vector>

#include "featknn/error.hpp"
#include "featknn/kernels.hpp"

namespace featknn::kernels {

namespace {
const int kDefaultThreads = omp_get_max_threads();
}

void set_thread_count(int n) { omp_set_num_threads(n > 0 ? n : kDefaultThreads); }

int max_threads() { return omp_get_max_threads(); }

namespace omp {

void scan_distances(MetricKind kind, const Matrix<float>& database, std::span<const float> query,
                    std::span<double> out) {
  if (out.size() != database.rows()) throw DimensionError(database.rows(), out.size());
  const auto n = static_cast<std::ptrdiff_t>(database.rows());
  std::exception_ptr failure;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[i] = distance(kind, database.row(i), query);
    } catch (...) {
#pragma omp critical(featknn_scan_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

void column_minmax(const Matrix<float>& data, std::span<double> min_out, std::span<double> max_out) {
  if (min_out.size() != data.cols()) throw DimensionError(data.cols(), min_out.size());
  if (max_out.size() != data.cols()) throw DimensionError(data.cols(), max_out.size());
  const auto cols = data.cols();
  const auto rows = static_cast<std::ptrdiff_t>(data.rows());
  auto first = data.row(0);
  std::copy(first.begin(), first.end(), min_out.begin());
  std::copy(first.begin(), first.end(), max_out.begin());
#pragma omp parallel
  {
    std::vector<double> lo(min_out.begin(), min_out.end());
    std::vector<double> hi(lo);
#pragma omp for schedule(static) nowait
    for (std::ptrdiff_t i = 1; i < rows; ++i) {
      const auto row = data.row(i);
      for (std::size_t j = 0; j < cols; ++j) {
        const double v = row[j];
        lo[j] = std::min(lo[j], v);
        hi[j] = std::max(hi[j], v);
      }
    }
#pragma omp critical(featknn_minmax_merge)
    for (std::size_t j = 0; j < cols; ++j) {
      min_out[j] = std::min(min_out[j], lo[j]);
      max_out[j] = std::max(max_out[j], hi[j]);
    }
  }
}

}  // namespace omp
}  // namespace featknn::kernels
