#include "featknn/feature_set.hpp"

#include <cmath>
#include <fstream>
#include <unordered_set>

#include "binary_io.hpp"
#include "featknn/error.hpp"

namespace featknn {

void validate_class_names(const std::vector<std::string>& names) {
  if (names.size() > kMaxClasses) throw InvalidData("too many classes: " + std::to_string(names.size()));
  std::unordered_set<std::string> seen;
  for (const auto& name : names) {
    if (name.empty()) throw InvalidData("empty class name");
    if (name.size() > 0xFFFF) throw InvalidData("class name longer than 65535 bytes");
    if (!seen.insert(name).second) throw InvalidData("duplicate class name '" + name + "'");
  }
}

FeatureSet::FeatureSet(Matrix<float> vectors, std::vector<ClassIndex> labels, std::vector<std::string> class_names)
    : vectors_(std::move(vectors)), labels_(std::move(labels)), class_names_(std::move(class_names)) {
  if (vectors_.rows() == 0) throw InvalidData("feature set has no vectors");
  if (vectors_.cols() == 0) throw InvalidData("feature vectors have dimension 0");
  if (labels_.size() != vectors_.rows())
    throw InvalidData("label count " + std::to_string(labels_.size()) + " != vector count " +
                      std::to_string(vectors_.rows()));
  validate_class_names(class_names_);
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] >= class_names_.size())
      throw InvalidData("label " + std::to_string(labels_[i]) + " of row " + std::to_string(i) + " out of range");
  const auto values = vectors_.values();
  for (std::size_t i = 0; i < values.size(); ++i)
    if (!std::isfinite(values[i]))
      throw InvalidData("non-finite value at row " + std::to_string(i / vectors_.cols()) + ", column " +
                        std::to_string(i % vectors_.cols()));
}

FeatureSet FeatureSet::subset(const std::vector<std::size_t>& rows) const {
  Matrix<float> out(rows.size(), dim());
  std::vector<ClassIndex> labels;
  labels.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto src = vectors_.row(rows[i]);
    std::copy(src.begin(), src.end(), out.row(i).begin());
    labels.push_back(labels_[rows[i]]);
  }
  return FeatureSet(std::move(out), std::move(labels), class_names_);
}

// --- FSET -------------------------------------------------------------------

namespace {
constexpr std::uint32_t kFsetVersion = 1;
}

std::uint64_t write_fset(const FeatureSet& set, std::ostream& out) {
  detail::Writer w(out);
  w.tag("FSET");
  w.put<std::uint32_t>(kFsetVersion);
  w.put<std::uint32_t>(static_cast<std::uint32_t>(set.size()));
  w.put<std::uint32_t>(static_cast<std::uint32_t>(set.dim()));
  w.put<std::uint32_t>(static_cast<std::uint32_t>(set.n_classes()));
  for (const auto& name : set.class_names()) w.str16(name);
  w.bytes(set.labels().data(), set.labels().size() * sizeof(ClassIndex));
  const auto values = set.vectors().values();
  w.bytes(values.data(), values.size_bytes());
  return w.offset();
}

FeatureSet read_fset(std::istream& in) {
  detail::Reader r(in);
  if (!r.tag("FSET")) throw FormatError("not an FSET file");
  const auto version = r.get<std::uint32_t>("version");
  if (version != kFsetVersion) throw UnsupportedVersion(version);
  const auto n = r.get<std::uint32_t>("n_vectors");
  const auto dim = r.get<std::uint32_t>("dim");
  const auto n_classes = r.get<std::uint32_t>("n_classes");
  if (n == 0) throw CorruptFile("n_vectors is 0", 8);
  if (dim == 0) throw CorruptFile("dim is 0", 12);
  if (n_classes == 0 || n_classes > kMaxClasses)
    throw CorruptFile("n_classes " + std::to_string(n_classes) + " out of range", 16);

  std::vector<std::string> names;
  names.reserve(n_classes);
  const auto table_start = r.offset();
  for (std::uint32_t c = 0; c < n_classes; ++c) names.push_back(r.str16("class table"));
  try {
    validate_class_names(names);
  } catch (const InvalidData& e) {
    throw CorruptFile(e.what(), table_start);
  }

  std::vector<ClassIndex> labels(n);
  const auto labels_start = r.offset();
  r.bytes(labels.data(), labels.size() * sizeof(ClassIndex), "labels");
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] >= n_classes)
      throw CorruptFile("label " + std::to_string(labels[i]) + " out of range", labels_start + 2 * i);

  // Row by row so a corrupt header cannot force a huge up-front allocation.
  std::vector<float> data;
  std::vector<float> row(dim);
  for (std::uint32_t i = 0; i < n; ++i) {
    const auto row_start = r.offset();
    r.bytes(row.data(), row.size() * sizeof(float), "vector data");
    for (std::size_t j = 0; j < row.size(); ++j)
      if (!std::isfinite(row[j])) throw CorruptFile("non-finite value", row_start + 4 * j);
    data.insert(data.end(), row.begin(), row.end());
  }
  return FeatureSet(Matrix<float>(n, dim, std::move(data)), std::move(labels), std::move(names));
}

void save_fset(const FeatureSet& set, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing", 0);
  write_fset(set, out);
  out.flush();
  if (!out) throw IoError("flush failed for '" + path + "'", 0);
}

FeatureSet load_fset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'", 0);
  return read_fset(in);
}

}  // namespace featknn
