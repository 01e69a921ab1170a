#include <algorithm>
#include <optional>

#include "featknn/error.hpp"
#include "featknn/feature_set.hpp"
#include "featknn/rng.hpp"

namespace featknn {

Split stratified_split(const FeatureSet& set, const SplitSpec& spec) {
  if (spec.per_class_train < 1) throw ParameterError("per_class_train must be >= 1");

  std::vector<std::vector<std::size_t>> members(set.n_classes());
  for (std::size_t i = 0; i < set.size(); ++i) members[set.labels()[i]].push_back(i);

  const auto need = spec.per_class_train + spec.per_class_test;
  for (std::size_t c = 0; c < members.size(); ++c)
    if (members[c].size() < need)
      throw InsufficientData("class '" + set.class_names()[c] + "' has " + std::to_string(members[c].size()) +
                             " vectors, split needs " + std::to_string(need));

  SplitMix64 rng(spec.seed);
  std::vector<std::size_t> train_rows;
  std::vector<std::size_t> test_rows;
  for (auto& rows : members) {
    for (std::size_t i = rows.size(); i > 1; --i) std::swap(rows[i - 1], rows[rng.below(i)]);
    train_rows.insert(train_rows.end(), rows.begin(), rows.begin() + spec.per_class_train);
    test_rows.insert(test_rows.end(), rows.begin() + spec.per_class_train, rows.begin() + need);
  }
  std::sort(train_rows.begin(), train_rows.end());
  std::sort(test_rows.begin(), test_rows.end());

  auto train = set.subset(train_rows);
  std::optional<FeatureSet> test;
  if (!test_rows.empty()) test = set.subset(test_rows);
  return Split{std::move(train), std::move(test), std::move(train_rows), std::move(test_rows)};
}

}  // namespace featknn
