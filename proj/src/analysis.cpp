#include "billnet/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>

#include "billnet/errors.hpp"

namespace billnet {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

double pick(const BillScore& s, Aggregation a) { return a == Aggregation::Mean ? s.score_mean : s.score_max; }

std::string config_label(double half_life, Measure m, Aggregation a) {
  std::ostringstream out;
  out << "[half_life=" << half_life << " measure=" << to_string(m) << " aggregation=" << to_string(a)
      << "] ";
  return out.str();
}

bool wants_centrality(const PipelineOptions& o) {
  return std::any_of(o.measures.begin(), o.measures.end(), [](Measure m) { return m != Measure::Influence; });
}

bool wants(const PipelineOptions& o, Measure m) {
  return std::find(o.measures.begin(), o.measures.end(), m) != o.measures.end();
}

MeasureSeries compute_series_from(const IndexedBills& data, const MonthlyTensors& monthly,
                                  const LegislatorRoster& roster, double half_life,
                                  const PipelineOptions& options) {
  const auto rate = DecayRate::from_half_life(half_life);
  const std::size_t n = data.legislators.size();
  const int horizon = monthly.horizon();

  MeasureSeries out;
  out.half_life = half_life;
  for (const auto m : options.measures) out.series.emplace(m, ScoreSeries(n));
  out.p_dems = ScoreSeries(n);
  out.p_reps = ScoreSeries(n);

  const bool influence = wants(options, Measure::Influence);
  const bool centrality = wants_centrality(options);

  DecayAccumulator acc(rate);
  int cached_congress = -1;
  std::vector<Party> parties;
  PartySizes sizes;
  for (int t = 1; t <= horizon; ++t) {
    const int congress = data.calendar.congress_of(t);
    if (options.congress_reset && t > 1 && congress != data.calendar.congress_of(t - 1)) acc.reset();
    acc.advance(monthly.pass[t - 1], monthly.tot[t - 1]);
    const auto entries = acc.entries();

    if (influence) {
      if (congress != cached_congress) {
        if (!roster.covers(congress, options.chamber)) {
          throw ConfigError("roster has no " + std::string(to_string(options.chamber)) +
                            " entries for Congress " + std::to_string(congress) + " (month " +
                            data.calendar.label(t) + ")");
        }
        parties = column_parties(data.legislators, roster, congress);
        sizes = roster.party_sizes(congress, options.chamber);
        cached_congress = congress;
      }
      auto p = party_influence(entries, t, parties, sizes.democrats, sizes.republicans);
      out.series.at(Measure::Influence).push_month(combine(p));
      out.p_dems.push_month(std::move(p.p_dems));
      out.p_reps.push_month(std::move(p.p_reps));
    }

    if (!centrality) continue;
    const auto lcc = largest_component(ratio_network(entries, t));
    out.lcc_sizes.push_back(static_cast<int>(lcc.size()));
    const std::vector<double> zeros(n, 0.0);

    if (wants(options, Measure::Eigenvector)) {
      const bool any_weight =
          std::any_of(lcc.weights.begin(), lcc.weights.end(), [](double w) { return w > 0.0; });
      if (!any_weight) {
        out.warnings.push_back("month " + data.calendar.label(t) +
                               ": no positive ratio weights, eigenvector centrality set to 0");
        out.series.at(Measure::Eigenvector).push_month(zeros);
      } else {
        const auto eig = eigenvector(lcc, options.eigen, t);
        out.series.at(Measure::Eigenvector).push_month(scatter(lcc, eig.values, n));
      }
    }
    if (wants(options, Measure::Closeness)) {
      ClosenessOptions co;
      co.distance = options.closeness_distance;
      co.threads = options.threads;
      out.series.at(Measure::Closeness).push_month(scatter(lcc, closeness(lcc, co), n));
    }
    if (wants(options, Measure::Strength)) {
      out.series.at(Measure::Strength).push_month(scatter(lcc, strength(lcc), n));
    }
  }
  return out;
}

}  // namespace

std::string_view to_string(Aggregation a) { return a == Aggregation::Mean ? "mean" : "max"; }

std::string_view to_string(Measure m) {
  switch (m) {
    case Measure::Influence: return "influence";
    case Measure::Eigenvector: return "eigenvector";
    case Measure::Closeness: return "closeness";
    case Measure::Strength: return "strength";
  }
  return "influence";
}

std::string_view to_string(RelDiffMode m) {
  return m == RelDiffMode::WindowAveraged ? "window_averaged" : "pooled";
}

std::optional<Aggregation> parse_aggregation(std::string_view s) {
  const auto v = lower(s);
  if (v == "mean") return Aggregation::Mean;
  if (v == "max") return Aggregation::Max;
  return std::nullopt;
}

std::optional<Measure> parse_measure(std::string_view s) {
  const auto v = lower(s);
  if (v == "influence") return Measure::Influence;
  if (v == "eigenvector") return Measure::Eigenvector;
  if (v == "closeness") return Measure::Closeness;
  if (v == "strength") return Measure::Strength;
  return std::nullopt;
}

std::optional<RelDiffMode> parse_rel_diff_mode(std::string_view s) {
  auto v = lower(s);
  std::replace(v.begin(), v.end(), '-', '_');
  if (v == "window_averaged") return RelDiffMode::WindowAveraged;
  if (v == "pooled") return RelDiffMode::Pooled;
  return std::nullopt;
}

MeanSe mean_and_se(std::span<const double> values) {
  MeanSe r;
  r.n = values.size();
  if (values.empty()) return r;
  double sum = 0.0;
  for (double v : values) sum += v;
  r.mean = sum / static_cast<double>(r.n);
  if (r.n > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - r.mean) * (v - r.mean);
    const double sd = std::sqrt(ss / static_cast<double>(r.n - 1));
    r.se = sd / std::sqrt(static_cast<double>(r.n));
  }
  return r;
}

std::vector<WindowStat> window_stats(std::span<const BillScore> scores, int window_months,
                                     Aggregation aggregation, int last_month) {
  if (window_months < 1) throw ConfigError("window_months must be at least 1");
  if (scores.empty()) return {};
  int last = last_month;
  if (last <= 0) {
    for (const auto& s : scores) last = std::max(last, s.month);
  }

  const int n_windows = (last + window_months - 1) / window_months;
  std::vector<std::vector<double>> passed(n_windows), failed(n_windows);
  for (const auto& s : scores) {
    if (s.month < 1 || s.month > last) {
      throw ConfigError("bill " + s.bill_id + " month " + std::to_string(s.month) + " outside 1.." +
                        std::to_string(last));
    }
    const int w = (s.month - 1) / window_months;
    (s.passed_house ? passed : failed)[w].push_back(pick(s, aggregation));
  }

  std::vector<WindowStat> out;
  out.reserve(n_windows);
  for (int w = 0; w < n_windows; ++w) {
    WindowStat st;
    st.index = w;
    st.start_month = 1 + w * window_months;
    st.end_month = std::min(last, st.start_month + window_months - 1);
    st.partial = st.end_month - st.start_month + 1 < window_months;
    const auto p = mean_and_se(passed[w]);
    const auto f = mean_and_se(failed[w]);
    st.n_passed = p.n;
    st.n_failed = f.n;
    st.mean_passed = p.mean;
    st.mean_failed = f.mean;
    st.se_passed = p.se;
    st.se_failed = f.se;
    if (p.n > 0 && f.n > 0 && f.mean > 0.0) st.rel_diff = (p.mean - f.mean) / f.mean;
    out.push_back(st);
  }
  return out;
}

RelDiffSummary relative_difference_distribution(std::span<const WindowStat> stats, double bin_width) {
  if (!(bin_width > 0.0)) throw ConfigError("histogram bin width must be positive");
  std::vector<double> values;
  for (const auto& s : stats) {
    if (s.rel_diff) values.push_back(*s.rel_diff);
  }
  if (values.empty()) throw ComputationError("no window has a defined relative difference");

  RelDiffSummary out;
  const auto ms = mean_and_se(values);
  out.n = ms.n;
  out.mean = ms.mean;
  out.se = ms.se;

  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  out.histogram.bin_width = bin_width;
  out.histogram.origin = std::floor(*lo / bin_width) * bin_width;
  const auto bins = static_cast<std::size_t>(std::floor((*hi - out.histogram.origin) / bin_width)) + 1;
  out.histogram.counts.assign(bins, 0);
  for (double v : values) {
    auto b = static_cast<std::size_t>(std::max(0.0, std::floor((v - out.histogram.origin) / bin_width)));
    ++out.histogram.counts[std::min(b, bins - 1)];
  }
  return out;
}

MeanSe pooled_relative_difference(std::span<const BillScore> scores, Aggregation aggregation) {
  std::vector<double> passed, failed;
  for (const auto& s : scores) (s.passed_house ? passed : failed).push_back(pick(s, aggregation));
  const auto p = mean_and_se(passed);
  const auto f = mean_and_se(failed);
  if (p.n == 0 || f.n == 0 || !(f.mean > 0.0)) {
    throw ComputationError("pooled relative difference undefined (need passed and failed bills with a positive failed mean)");
  }
  MeanSe out;
  out.n = p.n + f.n;
  out.mean = (p.mean - f.mean) / f.mean;
  const double ratio = p.mean / f.mean;
  out.se = std::sqrt(p.se * p.se + ratio * ratio * f.se * f.se) / f.mean;
  return out;
}

MeasureSeries compute_series(const IndexedBills& data, const LegislatorRoster& roster, double half_life,
                             const PipelineOptions& options) {
  const auto monthly = build_monthly(data.bills, data.horizon);
  return compute_series_from(data, monthly, roster, half_life, options);
}

const ConfigurationResult* SweepResult::find(double half_life, Measure m, Aggregation a) const {
  for (const auto& c : configurations) {
    if (c.half_life == half_life && c.measure == m && c.aggregation == a) return &c;
  }
  return nullptr;
}

SweepResult half_life_sweep(const IndexedBills& data, const LegislatorRoster& roster,
                            const SweepOptions& options) {
  if (options.half_lives.empty()) throw ConfigError("at least one half-life is required");
  if (options.pipeline.measures.empty()) throw ConfigError("at least one measure is required");
  if (options.aggregations.empty()) throw ConfigError("at least one aggregation is required");
  if (options.window_months < 1) throw ConfigError("window_months must be at least 1");
  for (double h : options.half_lives) DecayRate::from_half_life(h);

  const auto monthly = build_monthly(data.bills, data.horizon);

  // Half-lives are independent; run them concurrently and keep input order.
  const unsigned threads = std::max(1u, options.pipeline.threads);
  std::vector<MeasureSeries> series(options.half_lives.size());
  if (threads > 1 && options.half_lives.size() > 1) {
    PipelineOptions inner = options.pipeline;
    inner.threads = std::max(1u, threads / static_cast<unsigned>(options.half_lives.size()));
    std::vector<std::future<MeasureSeries>> jobs;
    for (double h : options.half_lives) {
      jobs.push_back(std::async(std::launch::async, [&, h, inner] {
        return compute_series_from(data, monthly, roster, h, inner);
      }));
    }
    for (std::size_t k = 0; k < jobs.size(); ++k) series[k] = jobs[k].get();
  } else {
    for (std::size_t k = 0; k < options.half_lives.size(); ++k) {
      series[k] = compute_series_from(data, monthly, roster, options.half_lives[k], options.pipeline);
    }
  }

  SweepResult result;
  for (auto& s : series) {
    for (const auto& w : s.warnings) {
      std::ostringstream label;
      label << "[half_life=" << s.half_life << "] " << w;
      result.warnings.push_back(label.str());
    }
    for (const auto m : options.pipeline.measures) {
      auto scored = bill_scores(data.bills, s.series.at(m));
      if (m == options.pipeline.measures.front()) {
        for (const auto& id : scored.skipped) result.warnings.push_back("bill " + id + " has no participants; skipped");
      }
      for (const auto a : options.aggregations) {
        ConfigurationResult c;
        c.half_life = s.half_life;
        c.measure = m;
        c.aggregation = a;
        try {
          c.windows = window_stats(scored.scores, options.window_months, a, data.horizon);
          const bool any_defined =
              std::any_of(c.windows.begin(), c.windows.end(), [](const WindowStat& w) { return w.rel_diff.has_value(); });
          if (options.mode == RelDiffMode::WindowAveraged || any_defined) {
            c.distribution = relative_difference_distribution(c.windows, options.bin_width);
          }
          if (options.mode == RelDiffMode::WindowAveraged) {
            c.mean_rel_diff = c.distribution.mean;
            c.se = c.distribution.se;
          } else {
            const auto pooled = pooled_relative_difference(scored.scores, a);
            c.mean_rel_diff = pooled.mean;
            c.se = pooled.se;
          }
        } catch (const ComputationError& e) {
          throw ComputationError(config_label(s.half_life, m, a) + e.what());
        }
        c.bill_scores = scored.scores;
        result.configurations.push_back(std::move(c));
      }
    }
  }
  if (options.keep_series) result.series = std::move(series);
  return result;
}

}  // namespace billnet
