#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "featknn/knn.hpp"

namespace featknn {

/// KNNM version 1, little-endian:
///   "KNNM" | u32 version | u32 flags (bit 0: PCA) | u32 n_classes +
///   n_classes x (u16 len, utf-8) | u32 raw_dim | min f64[raw_dim] |
///   max f64[raw_dim] | [u32 m | mean f64[raw_dim] | components f64[m*raw_dim] |
///   ratios f64[m]] | u32 n | labels u16[n] | database f32[n*cols]
///
/// The variance threshold is not stored. A loaded PCA model reports its
/// retained variance as the threshold, which reselects the same m.
std::uint64_t write_knnm(const KnnModel& model, std::ostream& out);
KnnModel read_knnm(std::istream& in);

void save_knnm(const KnnModel& model, const std::string& path);
KnnModel load_knnm(const std::string& path);

}  // namespace featknn
