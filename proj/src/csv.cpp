#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>

#include "featknn/error.hpp"
#include "featknn/feature_set.hpp"

namespace featknn {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::string where(std::size_t line) { return "line " + std::to_string(line); }

}  // namespace

FeatureSet import_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::size_t n_fields = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) break;
  }
  if (line_no == 0 || trim(line).empty()) throw FormatError("missing header row");
  {
    auto header = split_fields(trim(line));
    if (trim(header[0]) != "label") throw FormatError(where(line_no) + ": first header column must be 'label'");
    if (header.size() < 2) throw FormatError(where(line_no) + ": header has no feature columns");
    n_fields = header.size();
  }

  std::vector<float> data;
  std::vector<ClassIndex> labels;
  std::vector<std::string> names;
  std::unordered_map<std::string, ClassIndex> index_of;

  while (std::getline(in, line)) {
    ++line_no;
    const auto text = trim(line);
    if (text.empty()) continue;
    const auto fields = split_fields(text);
    if (fields.size() != n_fields)
      throw FormatError(where(line_no) + ": expected " + std::to_string(n_fields) + " fields, found " +
                        std::to_string(fields.size()));

    const std::string name(trim(fields[0]));
    if (name.empty()) throw FormatError(where(line_no) + ", column 1: empty label");
    auto [it, inserted] = index_of.try_emplace(name, static_cast<ClassIndex>(names.size()));
    if (inserted) {
      if (names.size() >= kMaxClasses) throw FormatError(where(line_no) + ": more than 65535 classes");
      names.push_back(name);
    }
    labels.push_back(it->second);

    for (std::size_t f = 1; f < fields.size(); ++f) {
      const auto field = trim(fields[f]);
      float value = 0.0f;
      const auto* first = field.data();
      const auto* last = field.data() + field.size();
      if (!field.empty() && *first == '+') ++first;
      const auto [ptr, ec] = std::from_chars(first, last, value);
      if (field.empty() || ec != std::errc{} || ptr != last || !std::isfinite(value))
        throw FormatError(where(line_no) + ", column " + std::to_string(f + 1) + ": cannot parse '" +
                          std::string(field) + "' as a finite number");
      data.push_back(value);
    }
  }
  if (labels.empty()) throw FormatError("no vectors");

  const auto rows = labels.size();
  return FeatureSet(Matrix<float>(rows, n_fields - 1, std::move(data)), std::move(labels), std::move(names));
}

void export_csv(const FeatureSet& set, std::ostream& out) {
  out << "label";
  for (std::size_t j = 0; j < set.dim(); ++j) out << ",f" << j;
  out << '\n';
  char buf[64];
  for (std::size_t i = 0; i < set.size(); ++i) {
    out << set.class_names()[set.labels()[i]];
    for (float v : set.vectors().row(i)) {
      std::snprintf(buf, sizeof buf, ",%.17g", static_cast<double>(v));
      out << buf;
    }
    out << '\n';
  }
  if (!out) throw IoError("CSV write failed", 0);
}

}  // namespace featknn
