#pragma once

#include <span>

#include "featknn/matrix.hpp"
#include "featknn/metrics.hpp"

namespace featknn {

/// Which implementation of a data-parallel kernel to run. Both produce
/// bit-identical results; Serial is the reference the tests compare against.
enum class Execution { Serial, Parallel };

namespace kernels {

namespace serial {

/// out[i] = distance(kind, database.row(i), query)
void scan_distances(MetricKind kind, const Matrix<float>& database, std::span<const float> query,
                    std::span<double> out);

/// Column-wise min and max of a non-empty matrix.
void column_minmax(const Matrix<float>& data, std::span<double> min_out, std::span<double> max_out);

}  // namespace serial

namespace omp {

void scan_distances(MetricKind kind, const Matrix<float>& database, std::span<const float> query,
                    std::span<double> out);

void column_minmax(const Matrix<float>& data, std::span<double> min_out, std::span<double> max_out);

}  // namespace omp

inline void scan_distances(Execution exec, MetricKind kind, const Matrix<float>& database,
                           std::span<const float> query, std::span<double> out) {
  if (exec == Execution::Parallel)
    omp::scan_distances(kind, database, query, out);
  else
    serial::scan_distances(kind, database, query, out);
}

/// Caps the OpenMP worker count; n == 0 restores the runtime default.
void set_thread_count(int n);
int max_threads();

}  // namespace kernels
}  // namespace featknn
