#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "billnet/centrality.hpp"
#include "billnet/influence.hpp"
#include "billnet/ingest.hpp"
#include "billnet/tempnet.hpp"

namespace billnet {

enum class Aggregation { Mean, Max };
enum class Measure { Influence, Eigenvector, Closeness, Strength };
enum class RelDiffMode { WindowAveraged, Pooled };

std::string_view to_string(Aggregation a);
std::string_view to_string(Measure m);
std::string_view to_string(RelDiffMode m);
std::optional<Aggregation> parse_aggregation(std::string_view s);
std::optional<Measure> parse_measure(std::string_view s);
std::optional<RelDiffMode> parse_rel_diff_mode(std::string_view s);

// Sample mean and standard error (sample sd with n - 1, over sqrt(n)).
// The standard error of a single value is reported as 0.
struct MeanSe {
  std::size_t n = 0;
  double mean = 0.0;
  double se = 0.0;
};
MeanSe mean_and_se(std::span<const double> values);

struct WindowStat {
  int index = 0;        // 0-based window number
  int start_month = 0;  // first month index covered
  int end_month = 0;    // last month index covered
  std::size_t n_passed = 0;
  std::size_t n_failed = 0;
  double mean_passed = 0.0;
  double mean_failed = 0.0;
  double se_passed = 0.0;
  double se_failed = 0.0;
  std::optional<double> rel_diff;  // (mean_passed - mean_failed) / mean_failed
  bool partial = false;            // trailing window shorter than window_months
};

// Buckets bills by introduction month into windows of `window_months`
// anchored at month 1. `last_month` = 0 uses the latest bill month.
std::vector<WindowStat> window_stats(std::span<const BillScore> scores, int window_months,
                                     Aggregation aggregation, int last_month = 0);

struct Histogram {
  double origin = 0.0;  // left edge of bin 0
  double bin_width = 0.05;
  std::vector<std::size_t> counts;
};

struct RelDiffSummary {
  Histogram histogram;
  std::size_t n = 0;  // windows with a defined rel_diff
  double mean = 0.0;
  double se = 0.0;
};

// Throws ComputationError when no window has a defined rel_diff.
RelDiffSummary relative_difference_distribution(std::span<const WindowStat> stats, double bin_width = 0.05);

// All bills in one pool: (mean_p - mean_f) / mean_f with a first-order
// (delta method) standard error. Throws ComputationError when undefined.
MeanSe pooled_relative_difference(std::span<const BillScore> scores, Aggregation aggregation);

// ---- pipeline ---------------------------------------------------------------

struct PipelineOptions {
  std::vector<Measure> measures{Measure::Influence, Measure::Eigenvector, Measure::Closeness,
                                Measure::Strength};
  Chamber chamber = Chamber::House;
  bool congress_reset = false;
  EigenOptions eigen;
  DistanceMode closeness_distance = DistanceMode::Reciprocal;
  unsigned threads = 1;
};

// Per-legislator monthly series for one half-life.
struct MeasureSeries {
  double half_life = 0.0;
  std::map<Measure, ScoreSeries> series;
  ScoreSeries p_dems;  // filled when Influence is requested
  ScoreSeries p_reps;
  std::vector<int> lcc_sizes;  // per month, when a centrality is requested
  std::vector<std::string> warnings;
};

// Streams months 1..horizon once, computing every requested measure from the
// decayed tensors at each month.
MeasureSeries compute_series(const IndexedBills& data, const LegislatorRoster& roster, double half_life,
                             const PipelineOptions& options);

struct SweepOptions {
  std::vector<double> half_lives{6.0, 12.0, 24.0};
  std::vector<Aggregation> aggregations{Aggregation::Mean, Aggregation::Max};
  int window_months = 4;
  RelDiffMode mode = RelDiffMode::WindowAveraged;
  double bin_width = 0.05;
  bool keep_series = false;
  PipelineOptions pipeline;
};

struct ConfigurationResult {
  double half_life = 0.0;
  Measure measure = Measure::Influence;
  Aggregation aggregation = Aggregation::Mean;
  std::vector<WindowStat> windows;
  RelDiffSummary distribution;  // over windows with a defined rel_diff
  double mean_rel_diff = 0.0;   // per the selected RelDiffMode
  double se = 0.0;
  std::vector<BillScore> bill_scores;
};

struct SweepResult {
  std::vector<ConfigurationResult> configurations;  // half-life, measure, aggregation order
  std::vector<MeasureSeries> series;                // only with keep_series
  std::vector<std::string> warnings;

  const ConfigurationResult* find(double half_life, Measure m, Aggregation a) const;
};

SweepResult half_life_sweep(const IndexedBills& data, const LegislatorRoster& roster,
                            const SweepOptions& options);

}  // namespace billnet
