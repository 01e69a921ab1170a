#include <cstdio>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "featknn/error.hpp"
#include "featknn/eval.hpp"

namespace featknn {

using json = nlohmann::ordered_json;

std::string format_percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f%%", fraction * 100.0);
  return buf;
}

std::optional<ReportFormat> parse_report_format(std::string_view name) {
  if (name == "text") return ReportFormat::Text;
  if (name == "json") return ReportFormat::Json;
  if (name == "csv") return ReportFormat::Csv;
  return std::nullopt;
}

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json to_json(const EvaluationReport& r) {
  json confusion = json::array();
  for (std::size_t i = 0; i < r.confusion.counts.rows(); ++i) {
    const auto row = r.confusion.counts.row(i);
    confusion.push_back(json(std::vector<std::uint64_t>(row.begin(), row.end())));
  }
  json j;
  j["accuracy"] = r.accuracy;
  j["confusion"] = std::move(confusion);
  j["class_names"] = r.confusion.class_names;
  j["per_class_accuracy"] = r.per_class_accuracy;
  j["k"] = r.k;
  j["metric"] = std::string(to_string(r.metric));
  j["use_pca"] = r.config.use_pca;
  j["variance_threshold"] = r.config.variance_threshold;
  j["n_components"] = r.config.use_pca ? json(r.n_components) : json(nullptr);
  j["mean_query_seconds"] = r.mean_query_seconds;
  j["median_query_seconds"] = r.median_query_seconds;
  return j;
}

EvaluationReport from_json(const json& j) {
  EvaluationReport r;
  r.accuracy = j.at("accuracy").get<double>();
  r.confusion.class_names = j.at("class_names").get<std::vector<std::string>>();
  const auto& rows = j.at("confusion");
  const auto c = rows.size();
  r.confusion.counts = Matrix<std::uint64_t>(c, c, 0);
  for (std::size_t i = 0; i < c; ++i) {
    if (rows[i].size() != c) throw FormatError("confusion matrix is not square");
    for (std::size_t k = 0; k < c; ++k) r.confusion.counts(i, k) = rows[i][k].get<std::uint64_t>();
  }
  r.per_class_accuracy = j.at("per_class_accuracy").get<std::vector<double>>();
  r.k = j.at("k").get<std::size_t>();
  const auto metric = parse_metric(j.at("metric").get<std::string>());
  if (!metric) throw FormatError("unknown metric in report");
  r.metric = *metric;
  r.config.use_pca = j.at("use_pca").get<bool>();
  r.config.variance_threshold = j.at("variance_threshold").get<double>();
  r.n_components = j.at("n_components").is_null() ? 0 : j.at("n_components").get<std::size_t>();
  r.mean_query_seconds = j.at("mean_query_seconds").get<double>();
  r.median_query_seconds = j.at("median_query_seconds").get<double>();
  return r;
}

std::string pca_summary(const EvaluationReport& r) {
  if (!r.config.use_pca) return "none";
  std::ostringstream os;
  os << r.n_components << " components (threshold " << r.config.variance_threshold << ")";
  return os.str();
}

std::string render_text(const EvaluationReport& r) {
  std::ostringstream os;
  const auto& names = r.confusion.class_names;
  os << "metric: " << to_string(r.metric) << "  k: " << r.k << "  pca: " << pca_summary(r) << '\n';
  os << "accuracy: " << format_percent(r.accuracy) << " (" << r.confusion.trace() << '/' << r.confusion.total()
     << ")\n";
  os << std::fixed << std::setprecision(3) << "mean query time: " << r.mean_query_seconds * 1e3
     << " ms (median " << r.median_query_seconds * 1e3 << " ms, feature extraction excluded)\n\n";

  std::size_t label_w = 4;  // "true"
  for (const auto& n : names) label_w = std::max(label_w, n.size());
  std::size_t cell_w = 5;
  for (const auto& n : names) cell_w = std::max(cell_w, n.size());

  os << "confusion matrix (rows: true class, columns: predicted class)\n";
  os << std::left << std::setw(static_cast<int>(label_w)) << "true" << std::right;
  for (const auto& n : names) os << "  " << std::setw(static_cast<int>(cell_w)) << n;
  os << '\n';
  for (std::size_t i = 0; i < names.size(); ++i) {
    os << std::left << std::setw(static_cast<int>(label_w)) << names[i] << std::right;
    for (std::size_t k = 0; k < names.size(); ++k)
      os << "  " << std::setw(static_cast<int>(cell_w)) << r.confusion.counts(i, k);
    os << '\n';
  }
  os << "\nper-class accuracy\n";
  for (std::size_t i = 0; i < names.size(); ++i)
    os << "  " << std::left << std::setw(static_cast<int>(label_w)) << names[i] << std::right << "  "
       << std::setw(8) << format_percent(r.per_class_accuracy[i]) << '\n';
  return os.str();
}

std::string render_csv(const EvaluationReport& r) {
  std::ostringstream os;
  os << "true,predicted,count,accuracy\n";
  const auto& names = r.confusion.class_names;
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t k = 0; k < names.size(); ++k)
      os << names[i] << ',' << names[k] << ',' << r.confusion.counts(i, k) << ",\n";
  os << "*,*," << r.confusion.total() << ',' << g17(r.accuracy) << '\n';
  return os.str();
}

}  // namespace

std::string render_report(const EvaluationReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::Text: return render_text(report);
    case ReportFormat::Json: return to_json(report).dump(2) + "\n";
    case ReportFormat::Csv: return render_csv(report);
  }
  return {};
}

EvaluationReport report_from_json(std::string_view text) {
  try {
    return from_json(json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad report JSON: ") + e.what());
  }
}

std::string render_sweep(const std::vector<EvaluationReport>& reports, ReportFormat format, bool color) {
  const auto best = best_per_metric(reports);
  auto is_best = [&](std::size_t i) {
    return std::any_of(best.begin(), best.end(), [&](const BestCell& b) { return b.report_index == i; });
  };

  if (format == ReportFormat::Json) {
    json out;
    out["reports"] = json::array();
    for (const auto& r : reports) out["reports"].push_back(to_json(r));
    out["best"] = json::array();
    for (const auto& b : best) {
      const auto& r = reports[b.report_index];
      out["best"].push_back({{"use_pca", b.use_pca},
                             {"metric", std::string(to_string(b.metric))},
                             {"k", r.k},
                             {"accuracy", r.accuracy}});
    }
    return out.dump(2) + "\n";
  }

  if (format == ReportFormat::Csv) {
    std::ostringstream os;
    os << "use_pca,metric,k,accuracy,correct,total,n_components,mean_query_seconds,best\n";
    for (std::size_t i = 0; i < reports.size(); ++i) {
      const auto& r = reports[i];
      os << (r.config.use_pca ? "true" : "false") << ',' << to_string(r.metric) << ',' << r.k << ','
         << g17(r.accuracy) << ',' << r.confusion.trace() << ',' << r.confusion.total() << ','
         << (r.config.use_pca ? std::to_string(r.n_components) : std::string()) << ','
         << g17(r.mean_query_seconds) << ',' << (is_best(i) ? 1 : 0) << '\n';
    }
    return os.str();
  }

  // Text: one metric x k grid per PCA option, in first-seen order.
  std::ostringstream os;
  std::vector<bool> pca_order;
  std::vector<MetricKind> metric_order;
  std::vector<std::size_t> k_order;
  for (const auto& r : reports) {
    if (std::find(pca_order.begin(), pca_order.end(), r.config.use_pca) == pca_order.end())
      pca_order.push_back(r.config.use_pca);
    if (std::find(metric_order.begin(), metric_order.end(), r.metric) == metric_order.end())
      metric_order.push_back(r.metric);
    if (std::find(k_order.begin(), k_order.end(), r.k) == k_order.end()) k_order.push_back(r.k);
  }
  constexpr int kMetricW = 10;
  constexpr int kCellW = 9;
  for (std::size_t p = 0; p < pca_order.size(); ++p) {
    if (p) os << '\n';
    const bool use_pca = pca_order[p];
    os << "pca: " << (use_pca ? "on" : "off");
    for (const auto& r : reports)
      if (r.config.use_pca == use_pca) {
        if (use_pca) os << " (" << r.n_components << " components)";
        break;
      }
    os << '\n' << std::left << std::setw(kMetricW) << "metric" << std::right;
    for (auto k : k_order) os << std::setw(kCellW) << ("k=" + std::to_string(k));
    os << std::setw(kCellW) << "best" << '\n';
    for (auto metric : metric_order) {
      os << std::left << std::setw(kMetricW) << to_string(metric) << std::right;
      std::string best_text = "-";
      for (auto k : k_order) {
        std::string cell = "-";
        bool mark = false;
        for (std::size_t i = 0; i < reports.size(); ++i) {
          const auto& r = reports[i];
          if (r.config.use_pca == use_pca && r.metric == metric && r.k == k) {
            cell = format_percent(r.accuracy);
            mark = is_best(i);
            if (mark) best_text = cell;
          }
        }
        const std::string shown = mark ? cell + "*" : cell + " ";
        if (mark && color)
          os << std::string(kCellW - shown.size(), ' ') << "\033[1;31m" << shown << "\033[0m";
        else
          os << std::setw(kCellW) << shown;
      }
      os << std::setw(kCellW) << best_text << '\n';
    }
  }
  return os.str();
}

}  // namespace featknn
