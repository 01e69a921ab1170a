#pragma once

#include <cstring>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "featknn/feature_set.hpp"
#include "support/oracles.hpp"

namespace fixtures {

inline featknn::FeatureSet make_set(const oracle::Mat& rows, const std::vector<int>& labels,
                                    std::vector<std::string> names) {
  featknn::Matrix<float> m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = static_cast<float>(rows[i][j]);
  return {std::move(m), std::vector<featknn::ClassIndex>(labels.begin(), labels.end()), std::move(names)};
}

inline std::vector<std::string> class_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("class" + std::to_string(i));
  return names;
}

inline const std::vector<std::string>& organs() {
  static const std::vector<std::string> names{"bladder", "bowel", "gallbladder", "kidney", "liver", "spleen"};
  return names;
}

/// Uniform random values, labels cycling through the classes so every class is present.
inline featknn::FeatureSet random_set(std::mt19937_64& rng, std::size_t n, std::size_t dim, std::size_t classes) {
  std::uniform_real_distribution<float> u(-3.0f, 3.0f);
  featknn::Matrix<float> m(n, dim);
  for (auto& v : m.values()) v = u(rng);
  std::vector<featknn::ClassIndex> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<featknn::ClassIndex>(i % classes);
  std::shuffle(labels.begin(), labels.end(), rng);
  return {std::move(m), std::move(labels), class_names(classes)};
}

/// `per_class` samples around well separated class centres (spread << separation).
inline featknn::FeatureSet gaussian_clusters(std::mt19937_64& rng, std::size_t classes, std::size_t per_class,
                                             std::size_t dim, double separation = 10.0, double spread = 1.0) {
  std::normal_distribution<double> g(0.0, 1.0);
  oracle::Mat centres(classes, oracle::Vec(dim));
  for (auto& c : centres)
    for (auto& v : c) v = separation * g(rng);
  featknn::Matrix<float> m(classes * per_class, dim);
  std::vector<featknn::ClassIndex> labels;
  for (std::size_t c = 0; c < classes; ++c)
    for (std::size_t i = 0; i < per_class; ++i) {
      const auto row = c * per_class + i;
      for (std::size_t j = 0; j < dim; ++j) m(row, j) = static_cast<float>(centres[c][j] + spread * g(rng));
      labels.push_back(static_cast<featknn::ClassIndex>(c));
    }
  return {std::move(m), std::move(labels), classes == 6 ? organs() : class_names(classes)};
}

inline oracle::Mat to_rows(const featknn::Matrix<float>& m) {
  oracle::Mat rows(m.rows(), oracle::Vec(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
  return rows;
}

inline bool bit_equal(const featknn::Matrix<float>& a, const featknn::Matrix<float>& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         std::memcmp(a.values().data(), b.values().data(), a.values().size_bytes()) == 0;
}

}  // namespace fixtures
