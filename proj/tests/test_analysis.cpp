#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "billnet/analysis.hpp"
#include "billnet/errors.hpp"
#include "billnet/synthgen.hpp"

using namespace billnet;

namespace {

BillScore score(int month, double value, bool passed, double max = -1.0) {
  BillScore s;
  s.bill_id = "b" + std::to_string(month);
  s.month = month;
  s.score_mean = value;
  s.score_max = max < 0 ? value : max;
  s.passed_house = passed;
  return s;
}

struct Fixture {
  IndexedBills data;
  LegislatorRoster roster;
};

Fixture synthetic(std::uint64_t seed, int months = 24) {
  SynthConfig cfg;
  cfg.seed = seed;
  cfg.n_legislators = 20;
  cfg.n_months = months;
  cfg.bills_per_month = 12;
  cfg.max_participants = 10;
  cfg.participant_scale = 3.0;
  const auto ds = generate(cfg);
  const RosterSource sources[] = {ds.roster};
  auto rec = reconcile_ids(filter_bills(ds.bills, Chamber::House), sources);
  Fixture f;
  f.data = index_bills(rec.bills, &rec.roster);
  f.roster = std::move(rec.roster);
  return f;
}

}  // namespace

TEST_CASE("mean and standard error") {
  CHECK(mean_and_se({}).n == 0);
  const std::vector<double> one{4.0};
  CHECK(mean_and_se(one).se == 0.0);
  const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
  const auto r = mean_and_se(v);
  CHECK(r.mean == doctest::Approx(2.5));
  CHECK(r.se == doctest::Approx(std::sqrt(5.0 / 3.0) / 2.0));
}

TEST_CASE("window example") {
  const std::vector<BillScore> s{score(1, 1.0, true), score(2, 1.5, true), score(4, 1.0, false)};
  const auto w = window_stats(s, 4, Aggregation::Mean);
  REQUIRE(w.size() == 1);
  CHECK(w[0].mean_passed == doctest::Approx(1.25));
  CHECK(w[0].mean_failed == doctest::Approx(1.0));
  REQUIRE(w[0].rel_diff);
  CHECK(*w[0].rel_diff == doctest::Approx(0.25));
  CHECK_FALSE(w[0].partial);
  CHECK(window_stats({}, 4, Aggregation::Mean).empty());
  CHECK_THROWS_AS(window_stats(s, 0, Aggregation::Mean), ConfigError);
}

TEST_CASE("120 months make 30 windows; trailing partial window flagged") {
  std::vector<BillScore> s;
  for (int t = 1; t <= 120; ++t) s.push_back(score(t, 0.1 * t, t % 2 == 0));
  auto w = window_stats(s, 4, Aggregation::Max);
  CHECK(w.size() == 30);
  CHECK(std::none_of(w.begin(), w.end(), [](const WindowStat& x) { return x.partial; }));
  CHECK(w[29].start_month == 117);
  CHECK(w[29].end_month == 120);

  w = window_stats(s, 4, Aggregation::Max, 122);
  REQUIRE(w.size() == 31);
  CHECK(w[30].partial);
  CHECK(w[30].n_passed + w[30].n_failed == 0);
  CHECK_FALSE(w[30].rel_diff);
}

TEST_CASE("rel_diff needs both groups and a positive failed mean") {
  const std::vector<BillScore> s{score(1, 0.4, false), score(5, 0.3, true), score(9, 0.0, false),
                                 score(10, 0.2, true)};
  const auto w = window_stats(s, 4, Aggregation::Mean);
  REQUIRE(w.size() == 3);
  CHECK_FALSE(w[0].rel_diff);  // no passed bills
  CHECK_FALSE(w[1].rel_diff);  // no failed bills
  CHECK_FALSE(w[2].rel_diff);  // failed mean is 0
}

TEST_CASE("window partition and order independence") {
  std::mt19937_64 gen(3);
  std::vector<BillScore> s;
  for (int k = 0; k < 300; ++k) {
    s.push_back(score(1 + static_cast<int>(gen() % 50), static_cast<double>(gen() % 1000) / 1000.0,
                      gen() % 3 == 0));
  }
  const auto a = window_stats(s, 4, Aggregation::Mean);
  std::size_t total = 0;
  int next = 1;
  for (const auto& w : a) {
    total += w.n_passed + w.n_failed;
    CHECK(w.start_month == next);
    next = w.end_month + 1;
  }
  CHECK(total == s.size());

  std::shuffle(s.begin(), s.end(), gen);
  const auto b = window_stats(s, 4, Aggregation::Mean);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].n_passed == b[i].n_passed);
    CHECK(a[i].mean_passed == doctest::Approx(b[i].mean_passed));
    CHECK(a[i].rel_diff.has_value() == b[i].rel_diff.has_value());
  }

  // scaling every score leaves rel_diff unchanged
  auto scaled = s;
  for (auto& x : scaled) {
    x.score_mean *= 7.25;
    x.score_max *= 7.25;
  }
  const auto c = window_stats(scaled, 4, Aggregation::Mean);
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i].rel_diff) CHECK(*c[i].rel_diff == doctest::Approx(*b[i].rel_diff).epsilon(1e-12));
  }
}

TEST_CASE("relative difference distribution") {
  std::vector<WindowStat> w(3);
  w[0].rel_diff = 0.2;
  w[2].rel_diff = 0.3;
  const auto d = relative_difference_distribution(w);
  CHECK(d.n == 2);
  CHECK(d.mean == doctest::Approx(0.25));
  CHECK(d.histogram.origin == doctest::Approx(0.2));
  std::size_t counted = 0;
  for (auto c : d.histogram.counts) counted += c;
  CHECK(counted == 2);

  w[0].rel_diff = -0.12;
  const auto e = relative_difference_distribution(w, 0.1);
  CHECK(e.histogram.origin == doctest::Approx(-0.2));
  CHECK(e.histogram.counts.size() == 6);
  CHECK(e.histogram.counts.front() == 1);
  CHECK(e.histogram.counts.back() == 1);

  CHECK_THROWS_AS(relative_difference_distribution(std::vector<WindowStat>(2)), ComputationError);
  CHECK_THROWS_AS(relative_difference_distribution(w, 0.0), ConfigError);
}

TEST_CASE("pooled relative difference") {
  const std::vector<BillScore> s{score(1, 2.0, true), score(2, 4.0, true), score(3, 2.0, false),
                                 score(4, 2.0, false)};
  const auto r = pooled_relative_difference(s, Aggregation::Mean);
  CHECK(r.mean == doctest::Approx(0.5));
  CHECK(r.se == doctest::Approx(0.5));  // se_p = 1, se_f = 0, mean_f = 2
  const std::vector<BillScore> only_passed{score(1, 1.0, true)};
  CHECK_THROWS_AS(pooled_relative_difference(only_passed, Aggregation::Mean), ComputationError);
}

TEST_CASE("enum names round trip") {
  for (auto m : {Measure::Influence, Measure::Eigenvector, Measure::Closeness, Measure::Strength}) {
    CHECK(parse_measure(to_string(m)) == m);
  }
  CHECK(parse_aggregation("MAX") == Aggregation::Max);
  CHECK(parse_rel_diff_mode("window-averaged") == RelDiffMode::WindowAveraged);
  CHECK(parse_rel_diff_mode("pooled") == RelDiffMode::Pooled);
  CHECK_FALSE(parse_measure("pagerank"));
}

TEST_CASE("sweep: single configuration") {
  const auto f = synthetic(4);
  SweepOptions o;
  o.half_lives = {6};
  o.aggregations = {Aggregation::Max};
  o.pipeline.measures = {Measure::Influence};
  const auto r = half_life_sweep(f.data, f.roster, o);
  REQUIRE(r.configurations.size() == 1);
  const auto& c = r.configurations[0];
  CHECK(c.windows.size() == 6);
  CHECK(c.bill_scores.size() == f.data.bills.size());
  CHECK(c.mean_rel_diff == doctest::Approx(c.distribution.mean));
  for (const auto& b : c.bill_scores) CHECK(b.score_max >= b.score_mean);
  CHECK(r.find(6, Measure::Influence, Aggregation::Max) == &c);
  CHECK(r.find(12, Measure::Influence, Aggregation::Max) == nullptr);
}

TEST_CASE("sweep: ordering, threading, and caching agree") {
  const auto f = synthetic(9);
  SweepOptions o;
  o.keep_series = true;
  const auto serial = half_life_sweep(f.data, f.roster, o);
  REQUIRE(serial.configurations.size() == 24);
  CHECK(serial.configurations[0].half_life == 6);
  CHECK(serial.configurations[0].measure == Measure::Influence);
  CHECK(serial.configurations[1].aggregation == Aggregation::Max);
  CHECK(serial.configurations[2].measure == Measure::Eigenvector);
  CHECK(serial.configurations[8].half_life == 12);
  REQUIRE(serial.series.size() == 3);

  o.pipeline.threads = 4;
  const auto parallel = half_life_sweep(f.data, f.roster, o);
  for (std::size_t k = 0; k < serial.configurations.size(); ++k) {
    CHECK(serial.configurations[k].mean_rel_diff == parallel.configurations[k].mean_rel_diff);
    CHECK(serial.configurations[k].se == parallel.configurations[k].se);
  }

  // the sweep's series equal a direct single half-life computation
  PipelineOptions p;
  const auto direct = compute_series(f.data, f.roster, 12, p);
  const auto& cached = serial.series[1];
  for (auto m : p.measures) {
    for (int t = 1; t <= f.data.horizon; ++t) {
      for (LegislatorIndex i = 0; i < f.data.legislators.size(); ++i) {
        CHECK(direct.series.at(m).at(t, i) == cached.series.at(m).at(t, i));
      }
    }
  }

  // bounds on I and unit-norm eigenvectors
  const auto& s6 = serial.series[0];
  for (int t = 1; t <= f.data.horizon; ++t) {
    double norm = 0.0;
    for (LegislatorIndex i = 0; i < f.data.legislators.size(); ++i) {
      const double v = s6.series.at(Measure::Influence).at(t, i);
      CHECK(v >= 0.0);
      CHECK(v <= 1.0 / 10 + 1.0 / 10 + 1e-12);
      norm += std::pow(s6.series.at(Measure::Eigenvector).at(t, i), 2);
    }
    if (norm > 0) CHECK(norm == doctest::Approx(1.0));
  }
}

TEST_CASE("sweep: pooled mode") {
  const auto f = synthetic(12, 36);
  SweepOptions o;
  o.mode = RelDiffMode::Pooled;
  o.pipeline.measures = {Measure::Influence, Measure::Strength};
  const auto r = half_life_sweep(f.data, f.roster, o);
  CHECK(r.configurations.size() == 12);
  for (const auto& c : r.configurations) CHECK(std::isfinite(c.mean_rel_diff));
}

TEST_CASE("sweep: configuration errors") {
  const auto f = synthetic(1, 6);
  SweepOptions o;
  o.half_lives = {};
  CHECK_THROWS_AS(half_life_sweep(f.data, f.roster, o), ConfigError);
  o.half_lives = {-1};
  CHECK_THROWS_AS(half_life_sweep(f.data, f.roster, o), ConfigError);
  o.half_lives = {6};
  o.pipeline.measures = {};
  CHECK_THROWS_AS(half_life_sweep(f.data, f.roster, o), ConfigError);
}

TEST_CASE("sweep: failures name the configuration") {
  // every bill passes, so no window has a failed group
  Fixture f;
  f.roster.add({"A", 111, Chamber::House, Party::Democrat});
  f.roster.add({"B", 111, Chamber::House, Party::Republican});
  std::vector<BillRecord> bills(2);
  for (int k = 0; k < 2; ++k) {
    bills[k].bill_id = "hr" + std::to_string(k);
    bills[k].congress = 111;
    bills[k].introduced_date = {2009, 2 + k, 1};
    bills[k].sponsor_id = "A";
    bills[k].cosponsor_ids = {"B"};
    bills[k].passed_house = true;
  }
  f.data = index_bills(bills, &f.roster);
  SweepOptions o;
  o.half_lives = {6};
  o.pipeline.measures = {Measure::Influence};
  try {
    half_life_sweep(f.data, f.roster, o);
    FAIL("expected an error");
  } catch (const ComputationError& e) {
    CHECK(std::string(e.what()).find("half_life=6 measure=influence aggregation=mean") != std::string::npos);
  }
}

TEST_CASE("months without positive ratio weights give zero eigenvector values") {
  LegislatorRoster roster;
  roster.add({"A", 111, Chamber::House, Party::Democrat});
  roster.add({"B", 111, Chamber::House, Party::Republican});
  std::vector<BillRecord> bills(2);
  for (int k = 0; k < 2; ++k) {
    bills[k].bill_id = "hr" + std::to_string(k);
    bills[k].congress = 111;
    bills[k].introduced_date = {2009, 1 + 2 * k, 5};
    bills[k].sponsor_id = "A";
    bills[k].cosponsor_ids = {"B"};
    bills[k].passed_house = k == 1;
  }
  const auto data = index_bills(bills, &roster);
  PipelineOptions p;
  p.measures = {Measure::Eigenvector};
  const auto s = compute_series(data, roster, 6, p);
  CHECK(s.series.at(Measure::Eigenvector).at(1, 0) == 0.0);
  CHECK(s.warnings.size() == 2);
  CHECK(s.series.at(Measure::Eigenvector).at(3, 0) == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(s.lcc_sizes == std::vector<int>{2, 2, 2});
}
