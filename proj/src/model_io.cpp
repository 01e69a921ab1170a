#include "featknn/model_io.hpp"

#include <cmath>
#include <fstream>

#include "binary_io.hpp"
#include "featknn/error.hpp"

namespace featknn {

namespace {
constexpr std::uint32_t kKnnmVersion = 1;
constexpr std::uint32_t kFlagPca = 1u << 0;

template <typename T>
std::vector<T> read_array(detail::Reader& r, std::size_t count, const char* what) {
  std::vector<T> out(count);
  if (count) r.bytes(out.data(), count * sizeof(T), what);
  return out;
}

void check_finite(std::span<const double> values, std::uint64_t start, const char* what) {
  for (std::size_t i = 0; i < values.size(); ++i)
    if (!std::isfinite(values[i])) throw CorruptFile(std::string("non-finite ") + what, start + 8 * i);
}
}  // namespace

std::uint64_t write_knnm(const KnnModel& model, std::ostream& out) {
  detail::Writer w(out);
  w.tag("KNNM");
  w.put<std::uint32_t>(kKnnmVersion);
  w.put<std::uint32_t>(model.pca() ? kFlagPca : 0u);
  w.put<std::uint32_t>(static_cast<std::uint32_t>(model.class_names().size()));
  for (const auto& name : model.class_names()) w.str16(name);
  w.put<std::uint32_t>(static_cast<std::uint32_t>(model.raw_dim()));
  w.bytes(model.stats().min_vals.data(), model.raw_dim() * sizeof(double));
  w.bytes(model.stats().max_vals.data(), model.raw_dim() * sizeof(double));
  if (const auto& pca = model.pca()) {
    w.put<std::uint32_t>(static_cast<std::uint32_t>(pca->n_components()));
    w.bytes(pca->mean.data(), pca->mean.size() * sizeof(double));
    w.bytes(pca->components.values().data(), pca->components.values().size_bytes());
    w.bytes(pca->explained_variance_ratio.data(), pca->explained_variance_ratio.size() * sizeof(double));
  }
  w.put<std::uint32_t>(static_cast<std::uint32_t>(model.size()));
  w.bytes(model.labels().data(), model.labels().size() * sizeof(ClassIndex));
  w.bytes(model.database().values().data(), model.database().values().size_bytes());
  return w.offset();
}

KnnModel read_knnm(std::istream& in) {
  detail::Reader r(in);
  if (!r.tag("KNNM")) throw FormatError("not a KNNM file");
  const auto version = r.get<std::uint32_t>("version");
  if (version != kKnnmVersion) throw UnsupportedVersion(version);
  const auto flags_at = r.offset();
  const auto flags = r.get<std::uint32_t>("flags");
  if (flags & ~kFlagPca) throw CorruptFile("unknown flag bits", flags_at);

  const auto classes_at = r.offset();
  const auto n_classes = r.get<std::uint32_t>("n_classes");
  if (n_classes == 0 || n_classes > kMaxClasses)
    throw CorruptFile("n_classes " + std::to_string(n_classes) + " out of range", classes_at);
  std::vector<std::string> names;
  for (std::uint32_t c = 0; c < n_classes; ++c) names.push_back(r.str16("class table"));
  try {
    validate_class_names(names);
  } catch (const InvalidData& e) {
    throw CorruptFile(e.what(), classes_at + 4);
  }

  const auto dim_at = r.offset();
  const auto raw_dim = r.get<std::uint32_t>("raw_dim");
  if (raw_dim == 0) throw CorruptFile("raw_dim is 0", dim_at);

  NormalizationStats stats;
  auto at = r.offset();
  stats.min_vals = read_array<double>(r, raw_dim, "normalization minima");
  check_finite(stats.min_vals, at, "normalization minimum");
  at = r.offset();
  stats.max_vals = read_array<double>(r, raw_dim, "normalization maxima");
  check_finite(stats.max_vals, at, "normalization maximum");
  for (std::size_t j = 0; j < raw_dim; ++j)
    if (stats.min_vals[j] > stats.max_vals[j]) throw CorruptFile("min > max", at + 8 * j);

  std::optional<PcaTransform> pca;
  std::size_t cols = raw_dim;
  if (flags & kFlagPca) {
    at = r.offset();
    const auto m = r.get<std::uint32_t>("n_components");
    if (m == 0 || m > raw_dim) throw CorruptFile("n_components " + std::to_string(m) + " out of range", at);
    PcaTransform t;
    at = r.offset();
    t.mean = read_array<double>(r, raw_dim, "PCA mean");
    check_finite(t.mean, at, "PCA mean");
    at = r.offset();
    t.components = Matrix<double>(m, raw_dim, read_array<double>(r, std::size_t{m} * raw_dim, "PCA components"));
    check_finite(t.components.values(), at, "PCA component");
    at = r.offset();
    t.explained_variance_ratio = read_array<double>(r, m, "PCA ratios");
    for (std::size_t i = 0; i < m; ++i)
      if (!(t.explained_variance_ratio[i] > 0.0 && t.explained_variance_ratio[i] <= 1.0))
        throw CorruptFile("explained-variance ratio outside (0,1]", at + 8 * i);
    cols = m;
    pca = std::move(t);
  }

  at = r.offset();
  const auto n = r.get<std::uint32_t>("n");
  if (n == 0) throw CorruptFile("empty database", at);
  at = r.offset();
  auto labels = read_array<ClassIndex>(r, n, "labels");
  for (std::size_t i = 0; i < n; ++i)
    if (labels[i] >= n_classes) throw CorruptFile("label out of range", at + 2 * i);

  std::vector<float> data;
  std::vector<float> row(cols);
  for (std::uint32_t i = 0; i < n; ++i) {
    at = r.offset();
    r.bytes(row.data(), row.size() * sizeof(float), "database");
    for (std::size_t j = 0; j < cols; ++j)
      if (!std::isfinite(row[j])) throw CorruptFile("non-finite database value", at + 4 * j);
    data.insert(data.end(), row.begin(), row.end());
  }

  PipelineConfig config;
  config.use_pca = pca.has_value();
  if (pca) config.variance_threshold = std::min(1.0, pca->retained_variance());
  try {
    return KnnModel(std::move(stats), std::move(pca), Matrix<float>(n, cols, std::move(data)), std::move(labels),
                    std::move(names), config);
  } catch (const InvalidData& e) {
    throw CorruptFile(e.what(), r.offset());
  }
}

void save_knnm(const KnnModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing", 0);
  write_knnm(model, out);
  out.flush();
  if (!out) throw IoError("flush failed for '" + path + "'", 0);
}

KnnModel load_knnm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'", 0);
  return read_knnm(in);
}

}  // namespace featknn
