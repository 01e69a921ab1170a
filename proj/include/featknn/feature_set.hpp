#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "featknn/matrix.hpp"

namespace featknn {

using ClassIndex = std::uint16_t;

inline constexpr std::size_t kMaxClasses = 65535;

/// Labeled feature vectors plus their class vocabulary.
///
/// Construction validates every invariant: at least one row, dim >= 1,
/// labels within range, unique non-empty class names, finite values.
/// Instances are immutable afterwards.
class FeatureSet {
 public:
  FeatureSet(Matrix<float> vectors, std::vector<ClassIndex> labels, std::vector<std::string> class_names);

  std::size_t size() const noexcept { return vectors_.rows(); }
  std::size_t dim() const noexcept { return vectors_.cols(); }
  std::size_t n_classes() const noexcept { return class_names_.size(); }

  const Matrix<float>& vectors() const noexcept { return vectors_; }
  const std::vector<ClassIndex>& labels() const noexcept { return labels_; }
  const std::vector<std::string>& class_names() const noexcept { return class_names_; }

  /// Rows in the given order, keeping the full class vocabulary.
  FeatureSet subset(const std::vector<std::size_t>& rows) const;

  friend bool operator==(const FeatureSet&, const FeatureSet&) = default;

 private:
  Matrix<float> vectors_;
  std::vector<ClassIndex> labels_;
  std::vector<std::string> class_names_;
};

/// Throws InvalidData if `names` contains an empty or repeated entry, or too many entries.
void validate_class_names(const std::vector<std::string>& names);

// --- FSET binary format -----------------------------------------------------

std::uint64_t write_fset(const FeatureSet& set, std::ostream& out);
FeatureSet read_fset(std::istream& in);

void save_fset(const FeatureSet& set, const std::string& path);
FeatureSet load_fset(const std::string& path);

// --- CSV interchange ----------------------------------------------------------

/// Parses `label,f0,...,f{d-1}` rows. Classes are indexed by first appearance.
FeatureSet import_csv(std::istream& in);

/// Inverse of import_csv; values are printed with 17 significant digits.
void export_csv(const FeatureSet& set, std::ostream& out);

// --- stratified split -------------------------------------------------------

struct SplitSpec {
  std::size_t per_class_train = 50;
  std::size_t per_class_test = 10;
  std::uint64_t seed = 0;
};

struct Split {
  FeatureSet train;
  std::optional<FeatureSet> test;  // empty when per_class_test == 0
  std::vector<std::size_t> train_rows;  // source row indices, ascending
  std::vector<std::size_t> test_rows;
};

/// Per class: Fisher-Yates shuffle of the member rows (ascending source order)
/// driven by one SplitMix64 stream; the first `per_class_train` go to train,
/// the next `per_class_test` to test. Output rows keep source order.
Split stratified_split(const FeatureSet& set, const SplitSpec& spec);

}  // namespace featknn
