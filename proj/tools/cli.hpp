#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "billnet/analysis.hpp"
#include "billnet/centrality.hpp"
#include "billnet/ingest.hpp"
#include "billnet/synthgen.hpp"

namespace billnet::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kDataError = 2, kComputationError = 3 };

struct RunConfig {
  std::string bills_path;
  std::vector<std::string> roster_paths;
  std::string output_dir;
  Chamber chamber = Chamber::House;
  std::vector<double> half_lives{6.0, 12.0, 24.0};
  int window_months = 4;
  std::vector<Measure> measures{Measure::Influence, Measure::Eigenvector, Measure::Closeness, Measure::Strength};
  std::vector<Aggregation> aggregations{Aggregation::Mean, Aggregation::Max};
  RelDiffMode rel_diff_mode = RelDiffMode::WindowAveraged;
  DistanceMode closeness_distance = DistanceMode::Reciprocal;
  bool congress_reset = false;
  double bin_width = 0.05;
  bool plots = false;
  bool export_series = false;
  bool dump_tensors = false;
  unsigned threads = 0;  // 0: hardware concurrency
  SynthConfig synth;
};

// Relative path -> file contents.
using Bundle = std::map<std::string, std::string>;

// Full pipeline over the configured inputs; nothing touches the disk.
// Throws DataError / ConfigError / ComputationError.
Bundle build_run_bundle(const RunConfig& config, std::ostream& log);
Bundle build_summary_bundle(const RunConfig& config, std::ostream& log);
Bundle build_generate_bundle(const RunConfig& config);

// Creates `dir` and writes every bundle entry beneath it.
void write_bundle(const std::string& dir, const Bundle& bundle);

// Entry point shared by the executable and the tests. Returns an ExitCode.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace billnet::cli
