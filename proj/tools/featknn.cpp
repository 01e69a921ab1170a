// featknn: fit / predict / evaluate / sweep / inspect over FSET and KNNM files.
//
// Exit codes: 0 success, 2 usage, 3 I/O, 4 data or format.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "featknn/error.hpp"
#include "featknn/eval.hpp"
#include "featknn/feature_set.hpp"
#include "featknn/kernels.hpp"
#include "featknn/knn.hpp"
#include "featknn/model_io.hpp"

namespace {

using namespace featknn;

constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitData = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::size_t k = 5;
  std::string metric = "cityblock";
  std::vector<std::string> metrics;
  std::vector<std::size_t> ks;
  bool pca = true;
  bool pca_set = false;
  double threshold = kDefaultVarianceThreshold;
  std::string format = "text";
  std::string output;
  int threads = 0;
  bool no_timing = false;
  std::uint64_t seed = 0;
  std::size_t per_class_train = 50;
  std::size_t per_class_test = 10;
  std::string train_out;
  std::string test_out;
  std::vector<std::string> paths;
};

MetricKind metric_flag(const std::string& name) {
  const auto m = parse_metric(name);
  if (!m) throw UsageError("unknown metric '" + name + "' (expected euclidean, cityblock, canberra or cosine)");
  return *m;
}

ReportFormat format_flag(const std::string& name) {
  const auto f = parse_report_format(name);
  if (!f) throw UsageError("unknown format '" + name + "' (expected text, json or csv)");
  return *f;
}

void check_threshold(double t) {
  if (!(t > 0.0 && t <= 1.0)) throw UsageError("threshold must be in (0,1]");
}

void check_k(std::size_t k) {
  if (k < 1) throw UsageError("k must be >= 1");
}

void emit(const Options& opt, const std::string& text) {
  if (opt.output.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(opt.output, std::ios::binary);
  if (!out) throw IoError("cannot open '" + opt.output + "' for writing", 0);
  out << text;
  if (!out) throw IoError("write failed for '" + opt.output + "'", 0);
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? ", " : "") + items[i];
  return out;
}

void strip_timing(EvaluationReport& r) {
  r.mean_query_seconds = 0.0;
  r.median_query_seconds = 0.0;
}

std::string pca_line(const KnnModel& model) {
  if (!model.pca()) return "pca: none";
  std::ostringstream os;
  os << "components: " << model.pca()->n_components() << " ("
     << format_percent(model.pca()->retained_variance()) << " variance)";
  return os.str();
}

int cmd_fit(const Options& opt) {
  check_threshold(opt.threshold);
  if (opt.output.empty()) throw UsageError("fit needs --output MODEL.knnm");
  const auto train = load_fset(opt.paths.at(0));
  const auto model = fit(train, PipelineConfig{opt.pca, opt.threshold});
  save_knnm(model, opt.output);
  std::cout << "model: " << opt.output << '\n'
            << "vectors: " << model.size() << '\n'
            << "raw dim: " << model.raw_dim() << '\n'
            << pca_line(model) << '\n'
            << "classes: " << join(model.class_names()) << '\n';
  return 0;
}

std::string render_predictions(const KnnModel& model, const FeatureSet& queries,
                               const std::vector<TimedPrediction>& results, std::size_t k, MetricKind metric,
                               ReportFormat format) {
  const auto& names = model.class_names();
  std::ostringstream os;
  if (format == ReportFormat::Json) {
    nlohmann::ordered_json out;
    out["class_names"] = names;
    out["k"] = k;
    out["metric"] = std::string(to_string(metric));
    out["predictions"] = nlohmann::ordered_json::array();
    for (std::size_t q = 0; q < results.size(); ++q) {
      const auto& p = results[q].prediction;
      nlohmann::ordered_json rec;
      rec["query"] = q;
      rec["given"] = queries.class_names()[queries.labels()[q]];
      rec["predicted"] = names[p.predicted_class];
      rec["votes"] = p.votes;
      rec["neighbors"] = nlohmann::ordered_json::array();
      for (const auto& nb : p.neighbors)
        rec["neighbors"].push_back({{"index", nb.index}, {"distance", nb.distance}, {"label", names[nb.label]}});
      out["predictions"].push_back(std::move(rec));
    }
    os << out.dump(2) << '\n';
  } else if (format == ReportFormat::Csv) {
    os << "query,given,predicted,rank,index,distance,label\n";
    char buf[40];
    for (std::size_t q = 0; q < results.size(); ++q) {
      const auto& p = results[q].prediction;
      for (std::size_t r = 0; r < p.neighbors.size(); ++r) {
        std::snprintf(buf, sizeof buf, "%.17g", p.neighbors[r].distance);
        os << q << ',' << queries.class_names()[queries.labels()[q]] << ',' << names[p.predicted_class] << ','
           << r << ',' << p.neighbors[r].index << ',' << buf << ',' << names[p.neighbors[r].label] << '\n';
      }
    }
  } else {
    for (std::size_t q = 0; q < results.size(); ++q) {
      const auto& p = results[q].prediction;
      os << "query " << q << ": " << names[p.predicted_class] << "  votes:";
      for (std::size_t c = 0; c < names.size(); ++c)
        if (p.votes[c]) os << ' ' << names[c] << '=' << p.votes[c];
      os << "  neighbors:";
      for (const auto& nb : p.neighbors) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6f", nb.distance);
        os << " (" << nb.index << ", " << buf << ", " << names[nb.label] << ')';
      }
      os << '\n';
    }
  }
  return os.str();
}

int cmd_predict(const Options& opt) {
  check_k(opt.k);
  const auto metric = metric_flag(opt.metric);
  const auto format = format_flag(opt.format);
  const auto model = load_knnm(opt.paths.at(0));
  const auto queries = load_fset(opt.paths.at(1));
  if (queries.dim() != model.raw_dim()) throw DimensionError(model.raw_dim(), queries.dim());
  const auto results = classify_batch(model, queries.vectors(), opt.k, metric);
  emit(opt, render_predictions(model, queries, results, opt.k, metric, format));
  return 0;
}

int cmd_evaluate(const Options& opt) {
  check_k(opt.k);
  const auto metric = metric_flag(opt.metric);
  const auto format = format_flag(opt.format);
  const auto model = load_knnm(opt.paths.at(0));
  const auto test = load_fset(opt.paths.at(1));
  auto report = evaluate(model, test, opt.k, metric);
  if (opt.no_timing) strip_timing(report);
  emit(opt, render_report(report, format));
  return 0;
}

int cmd_sweep(const Options& opt) {
  check_threshold(opt.threshold);
  const auto format = format_flag(opt.format);
  SweepOptions sw;
  sw.variance_threshold = opt.threshold;
  if (!opt.metrics.empty()) {
    sw.metrics.clear();
    for (const auto& m : opt.metrics) sw.metrics.push_back(metric_flag(m));
  }
  if (!opt.ks.empty()) {
    for (auto k : opt.ks) check_k(k);
    sw.ks = opt.ks;
  }
  if (opt.pca_set) sw.pca_options = {opt.pca};
  const auto train = load_fset(opt.paths.at(0));
  const auto test = load_fset(opt.paths.at(1));
  auto reports = sweep(train, test, sw);
  if (opt.no_timing)
    for (auto& r : reports) strip_timing(r);
  const char* color = std::getenv("FEATKNN_COLOR");
  const bool use_color = color && std::string(color) == "1" && opt.output.empty();
  emit(opt, render_sweep(reports, format, use_color));
  return 0;
}

int cmd_inspect(const Options& opt) {
  const auto& path = opt.paths.at(0);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'", 0);
  char magic[4] = {};
  in.read(magic, 4);
  const std::string tag(magic, static_cast<std::size_t>(in.gcount()));
  in.clear();
  in.seekg(0);
  if (tag == "FSET") {
    const auto set = read_fset(in);
    std::cout << "FSET: " << set.size() << " vectors, dim " << set.dim() << ", " << set.n_classes()
              << " classes: " << join(set.class_names()) << '\n';
    return 0;
  }
  if (tag == "KNNM") {
    const auto model = read_knnm(in);
    std::cout << "KNNM: " << model.size() << " vectors, raw dim " << model.raw_dim() << ", processed dim "
              << model.processed_dim() << ", " << model.class_names().size()
              << " classes: " << join(model.class_names()) << '\n';
    if (model.pca())
      std::cout << "pca: " << model.pca()->n_components() << " components, cumulative variance "
                << format_percent(model.pca()->retained_variance()) << '\n';
    else
      std::cout << "pca: none\n";
    return 0;
  }
  throw FormatError("unrecognized file format");
}

int cmd_import(const Options& opt) {
  if (opt.output.empty()) throw UsageError("import needs --output OUT.fset");
  std::ifstream in(opt.paths.at(0));
  if (!in) throw IoError("cannot open '" + opt.paths.at(0) + "'", 0);
  const auto set = import_csv(in);
  save_fset(set, opt.output);
  std::cout << set.size() << " vectors, dim " << set.dim() << ", " << set.n_classes()
            << " classes: " << join(set.class_names()) << '\n';
  return 0;
}

int cmd_export(const Options& opt) {
  const auto set = load_fset(opt.paths.at(0));
  std::ostringstream os;
  export_csv(set, os);
  emit(opt, os.str());
  return 0;
}

int cmd_split(const Options& opt) {
  if (opt.train_out.empty()) throw UsageError("split needs --train-out");
  if (opt.per_class_test > 0 && opt.test_out.empty()) throw UsageError("split needs --test-out");
  if (opt.per_class_train < 1) throw UsageError("--per-class-train must be >= 1");
  const auto set = load_fset(opt.paths.at(0));
  const auto split = stratified_split(set, {opt.per_class_train, opt.per_class_test, opt.seed});
  save_fset(split.train, opt.train_out);
  if (split.test) save_fset(*split.test, opt.test_out);
  std::cout << "train: " << split.train.size() << " vectors\n"
            << "test: " << (split.test ? split.test->size() : 0) << " vectors\n";
  return 0;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Io: return kExitIo;
    case ErrorKind::Parameter: return kExitUsage;
    default: return kExitData;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-NN classification over exported feature vectors"};
  app.require_subcommand(1);
  Options opt;

  auto add_threads = [&](CLI::App* sub) {
    sub->add_option("--threads", opt.threads, "Cap on worker threads (0 = runtime default)")->check(CLI::NonNegativeNumber);
  };
  auto add_output = [&](CLI::App* sub, const char* help) { sub->add_option("-o,--output", opt.output, help); };
  auto add_pca = [&](CLI::App* sub) {
    sub->add_flag_callback("--pca", [&] { opt.pca = true; opt.pca_set = true; }, "Reduce with PCA");
    sub->add_flag_callback("--no-pca", [&] { opt.pca = false; opt.pca_set = true; }, "Min-max normalisation only");
    sub->add_option("--variance-threshold", opt.threshold, "Cumulative explained variance to keep (default 0.99)");
  };
  auto add_query_flags = [&](CLI::App* sub) {
    sub->add_option("-k,--k", opt.k, "Neighbors per query (default 5)");
    sub->add_option("--metric", opt.metric, "euclidean | cityblock | canberra | cosine (default cityblock)");
    sub->add_option("--format", opt.format, "text | json | csv (default text)");
  };

  auto* fit_cmd = app.add_subcommand("fit", "Fit a model from a database FSET");
  fit_cmd->add_option("train", opt.paths, "Database FSET")->required()->expected(1);
  add_output(fit_cmd, "Model file to write");
  add_pca(fit_cmd);
  add_threads(fit_cmd);

  auto* predict_cmd = app.add_subcommand("predict", "Classify query vectors and list their nearest neighbors");
  predict_cmd->add_option("paths", opt.paths, "MODEL.knnm QUERY.fset")->required()->expected(2);
  add_query_flags(predict_cmd);
  add_output(predict_cmd, "Write output here instead of stdout");
  add_threads(predict_cmd);

  auto* evaluate_cmd = app.add_subcommand("evaluate", "Accuracy and confusion matrix on a labeled test FSET");
  evaluate_cmd->add_option("paths", opt.paths, "MODEL.knnm TEST.fset")->required()->expected(2);
  add_query_flags(evaluate_cmd);
  add_output(evaluate_cmd, "Write output here instead of stdout");
  evaluate_cmd->add_flag("--no-timing", opt.no_timing, "Report zero timings (byte-reproducible output)");
  add_threads(evaluate_cmd);

  auto* sweep_cmd = app.add_subcommand("sweep", "Accuracy grid over PCA options, metrics and k");
  sweep_cmd->add_option("paths", opt.paths, "TRAIN.fset TEST.fset")->required()->expected(2);
  sweep_cmd->add_option("--metrics", opt.metrics, "Comma-separated metrics (default all four)")->delimiter(',');
  sweep_cmd->add_option("--ks", opt.ks, "Comma-separated k values (default 1,3,5,7,9)")->delimiter(',');
  add_pca(sweep_cmd);
  sweep_cmd->add_option("--format", opt.format, "text | json | csv (default text)");
  add_output(sweep_cmd, "Write output here instead of stdout");
  sweep_cmd->add_flag("--no-timing", opt.no_timing, "Report zero timings (byte-reproducible output)");
  add_threads(sweep_cmd);

  auto* inspect_cmd = app.add_subcommand("inspect", "Summarise an FSET or KNNM file");
  inspect_cmd->add_option("path", opt.paths, "File to inspect")->required()->expected(1);

  auto* import_cmd = app.add_subcommand("import", "Convert a label,f0,... CSV into FSET");
  import_cmd->add_option("csv", opt.paths, "Input CSV")->required()->expected(1);
  add_output(import_cmd, "FSET file to write");

  auto* export_cmd = app.add_subcommand("export", "Print an FSET as CSV");
  export_cmd->add_option("fset", opt.paths, "Input FSET")->required()->expected(1);
  add_output(export_cmd, "Write CSV here instead of stdout");

  auto* split_cmd = app.add_subcommand("split", "Stratified, seeded train/test split of an FSET");
  split_cmd->add_option("fset", opt.paths, "Input FSET")->required()->expected(1);
  split_cmd->add_option("--per-class-train", opt.per_class_train, "Training vectors per class (default 50)");
  split_cmd->add_option("--per-class-test", opt.per_class_test, "Test vectors per class (default 10)");
  split_cmd->add_option("--seed", opt.seed, "Split seed (default 0)");
  split_cmd->add_option("--train-out", opt.train_out, "Train FSET to write");
  split_cmd->add_option("--test-out", opt.test_out, "Test FSET to write");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    kernels::set_thread_count(opt.threads);
    if (*fit_cmd) return cmd_fit(opt);
    if (*predict_cmd) return cmd_predict(opt);
    if (*evaluate_cmd) return cmd_evaluate(opt);
    if (*sweep_cmd) return cmd_sweep(opt);
    if (*inspect_cmd) return cmd_inspect(opt);
    if (*import_cmd) return cmd_import(opt);
    if (*export_cmd) return cmd_export(opt);
    if (*split_cmd) return cmd_split(opt);
  } catch (const UsageError& e) {
    std::cerr << "featknn: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "featknn: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "featknn: " << e.what() << '\n';
    return 1;
  }
  return kExitUsage;
}
