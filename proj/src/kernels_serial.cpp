#include <algorithm>

#include "featknn/error.hpp"
#include "featknn/kernels.hpp"

namespace featknn::kernels::serial {

void scan_distances(MetricKind kind, const Matrix<float>& database, std::span<const float> query,
                    std::span<double> out) {
  if (out.size() != database.rows()) throw DimensionError(database.rows(), out.size());
  for (std::size_t i = 0; i < database.rows(); ++i) out[i] = distance(kind, database.row(i), query);
}

void column_minmax(const Matrix<float>& data, std::span<double> min_out, std::span<double> max_out) {
  if (min_out.size() != data.cols()) throw DimensionError(data.cols(), min_out.size());
  if (max_out.size() != data.cols()) throw DimensionError(data.cols(), max_out.size());
  const auto first = data.row(0);
  std::copy(first.begin(), first.end(), min_out.begin());
  std::copy(first.begin(), first.end(), max_out.begin());
  for (std::size_t i = 1; i < data.rows(); ++i) {
    const auto row = data.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) {
      min_out[j] = std::min<double>(min_out[j], row[j]);
      max_out[j] = std::max<double>(max_out[j], row[j]);
    }
  }
}

}  // namespace featknn::kernels::serial
