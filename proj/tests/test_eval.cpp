#include <doctest.h>

#include <sstream>

#include "featknn/error.hpp"
#include "featknn/eval.hpp"
#include "support/fixtures.hpp"

using namespace featknn;

namespace {

struct Data {
  FeatureSet train;
  FeatureSet test;
};

Data clusters(std::uint64_t seed, std::size_t dim = 16) {
  std::mt19937_64 rng(seed);
  const auto all = fixtures::gaussian_clusters(rng, 6, 60, dim);
  auto split = stratified_split(all, {50, 10, seed});
  return {std::move(split.train), std::move(*split.test)};
}

}  // namespace

TEST_CASE("make_report: 58 of 60 correct") {
  std::mt19937_64 rng(1);
  const auto model = fit(fixtures::random_set(rng, 12, 3, 6), {false, 0.99});
  ConfusionMatrix cm{Matrix<std::uint64_t>(6, 6, 0), model.class_names()};
  for (std::size_t c = 0; c < 6; ++c) cm.counts(c, c) = 10;
  cm.counts(1, 1) = 8;
  cm.counts(1, 3) = 2;
  const std::vector<double> secs{0.001, 0.003, 0.002};
  const auto r = make_report(cm, secs, 3, MetricKind::CityBlock, model);
  CHECK(std::fabs(r.accuracy - 0.96667) < 1e-5);
  CHECK(std::fabs(r.accuracy - 58.0 / 60.0) < 1e-9);
  CHECK(format_percent(r.accuracy) == "96.67%");
  CHECK(r.per_class_accuracy[1] == 0.8);
  CHECK(r.per_class_accuracy[0] == 1.0);
  CHECK(r.mean_query_seconds == doctest::Approx(0.002));
  CHECK(r.median_query_seconds == 0.002);
  CHECK(r.confusion.trace() + 2 == r.confusion.total());
}

TEST_CASE("evaluate a perfectly separable set") {
  const auto d = clusters(3);
  const auto model = fit(d.train, {true, 0.99});
  const auto r = evaluate(model, d.test, 3, MetricKind::CityBlock);
  CHECK(r.accuracy == 1.0);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(r.confusion.row_sum(i) == 10);
    CHECK(r.confusion.counts(i, i) == 10);
    CHECK(r.per_class_accuracy[i] == 1.0);
  }
  CHECK(r.n_components == model.processed_dim());
  CHECK(r.mean_query_seconds > 0.0);
}

TEST_CASE("evaluate invariants on noisy data") {
  std::mt19937_64 rng(4);
  const auto train = fixtures::random_set(rng, 60, 5, 6);
  const auto test = fixtures::random_set(rng, 60, 5, 6);
  const auto model = fit(train, {false, 0.99});
  const auto r = evaluate(model, test, 5, MetricKind::Euclidean);
  CHECK(r.confusion.total() == 60);
  std::uint64_t off = 0;
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j)
      if (i != j) off += r.confusion.counts(i, j);
  CHECK(r.confusion.trace() + off == 60);
  CHECK(r.accuracy == static_cast<double>(r.confusion.trace()) / 60.0);

  // order of the test set does not matter
  std::vector<std::size_t> perm(test.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  const auto shuffled = evaluate(model, test.subset(perm), 5, MetricKind::Euclidean);
  CHECK(shuffled.same_results(r));

  CHECK(evaluate(model, test, 5, MetricKind::Euclidean, Execution::Serial).same_results(r));
}

TEST_CASE("evaluate vocabulary and dimension errors") {
  const auto d = clusters(5);
  const auto model = fit(d.train, {false, 0.99});
  auto names = d.test.class_names();
  std::swap(names[0], names[1]);
  const FeatureSet renamed(d.test.vectors(), d.test.labels(), names);
  try {
    evaluate(model, renamed, 3, MetricKind::Euclidean);
    FAIL("expected VocabularyError");
  } catch (const VocabularyError& e) {
    CHECK(std::string(e.what()).find("bladder") != std::string::npos);
  }
  const auto other = clusters(5, 8);
  CHECK_THROWS_AS(evaluate(model, other.test, 3, MetricKind::Euclidean), DimensionError);
}

TEST_CASE("sweep shape, order and standalone equality") {
  const auto d = clusters(6);
  const auto reports = sweep(d.train, d.test, {});
  REQUIRE(reports.size() == 40);
  std::size_t i = 0;
  for (bool use_pca : {false, true})
    for (auto metric : kAllMetrics)
      for (std::size_t k : {1, 3, 5, 7, 9}) {
        CHECK(reports[i].config.use_pca == use_pca);
        CHECK(reports[i].metric == metric);
        CHECK(reports[i].k == k);
        ++i;
      }
  const auto model = fit(d.train, {true, 0.99});
  CHECK(evaluate(model, d.test, 7, MetricKind::Canberra).same_results(reports[20 + 10 + 3]));

  const auto best = best_per_metric(reports);
  CHECK(best.size() == 8);

  SweepOptions narrow;
  narrow.ks = {1, 3};
  narrow.metrics = {MetricKind::Euclidean};
  CHECK(sweep(d.train, d.test, narrow).size() == 4);
  narrow.ks.clear();
  CHECK_THROWS_AS(sweep(d.train, d.test, narrow), ParameterError);
}

TEST_CASE("best_per_metric prefers higher accuracy then smaller k") {
  std::vector<EvaluationReport> rs(3);
  rs[0].k = 1;
  rs[0].accuracy = 0.9;
  rs[1].k = 3;
  rs[1].accuracy = 0.95;
  rs[2].k = 5;
  rs[2].accuracy = 0.95;
  const auto best = best_per_metric(rs);
  REQUIRE(best.size() == 1);
  CHECK(best[0].report_index == 1);
}

TEST_CASE("render_report") {
  const auto d = clusters(7);
  const auto model = fit(d.train, {true, 0.99});
  const auto r = evaluate(model, d.test, 3, MetricKind::CityBlock);

  SUBCASE("text") {
    const auto text = render_report(r, ReportFormat::Text);
    CHECK(text.find("accuracy: 100.00% (60/60)") != std::string::npos);
    CHECK(text.find("gallbladder") != std::string::npos);
    CHECK(text.find("confusion matrix") != std::string::npos);
    CHECK(text.find("     0") != std::string::npos);
  }
  SUBCASE("json round-trip") {
    const auto back = report_from_json(render_report(r, ReportFormat::Json));
    CHECK(back.same_results(r));
    CHECK(back.mean_query_seconds == r.mean_query_seconds);
    CHECK(back.median_query_seconds == r.median_query_seconds);
    const auto plain = evaluate(fit(d.train, {false, 0.99}), d.test, 1, MetricKind::Cosine);
    const auto json = render_report(plain, ReportFormat::Json);
    CHECK(json.find("\"n_components\": null") != std::string::npos);
    CHECK(report_from_json(json).same_results(plain));
    CHECK_THROWS_AS(report_from_json("{"), FormatError);
  }
  SUBCASE("csv") {
    const auto csv = render_report(r, ReportFormat::Csv);
    const auto lines = std::count(csv.begin(), csv.end(), '\n');
    CHECK(lines == 1 + 36 + 1);  // header, C^2 cells, summary
    CHECK(csv.find("*,*,60,1\n") != std::string::npos);
  }
}

TEST_CASE("render_sweep") {
  const auto d = clusters(8);
  SweepOptions opt;
  opt.ks = {1, 3};
  const auto reports = sweep(d.train, d.test, opt);
  const auto text = render_sweep(reports, ReportFormat::Text);
  CHECK(text.find("pca: off") != std::string::npos);
  CHECK(text.find("pca: on") != std::string::npos);
  CHECK(text.find("100.00%*") != std::string::npos);
  const auto csv = render_sweep(reports, ReportFormat::Csv);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 16);
  const auto json = render_sweep(reports, ReportFormat::Json);
  CHECK(json.find("\"best\"") != std::string::npos);
  const auto colored = render_sweep(reports, ReportFormat::Text, true);
  CHECK(colored.find("\033[1;31m") != std::string::npos);
}
