#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "billnet/errors.hpp"
#include "billnet/influence.hpp"
#include "billnet/report.hpp"
#include "billnet/tempnet.hpp"

namespace billnet::cli {

namespace fs = std::filesystem;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string join_numbers(const std::vector<double>& v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) out += (k ? "," : "") + report::format_number(v[k]);
  return out;
}

template <typename T>
std::string join_names(const std::vector<T>& v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) out += (k ? "," : "") + std::string(to_string(v[k]));
  return out;
}

// Canonical text of every setting that can change report contents.
std::string canonical_config(const RunConfig& c) {
  std::ostringstream out;
  out << "chamber=" << to_string(c.chamber) << '\n'
      << "half_lives=" << join_numbers(c.half_lives) << '\n'
      << "window_months=" << c.window_months << '\n'
      << "measures=" << join_names(c.measures) << '\n'
      << "aggregations=" << join_names(c.aggregations) << '\n'
      << "rel_diff_mode=" << to_string(c.rel_diff_mode) << '\n'
      << "closeness_distance=" << (c.closeness_distance == DistanceMode::Reciprocal ? "reciprocal" : "hops") << '\n'
      << "congress_reset=" << (c.congress_reset ? "true" : "false") << '\n'
      << "bin_width=" << report::format_number(c.bin_width) << '\n'
      << "plots=" << c.plots << " export_series=" << c.export_series << " dump_tensors=" << c.dump_tensors
      << '\n';
  return out.str();
}

struct Inputs {
  std::vector<BillRecord> bills;  // filtered, reconciled when rosters are given
  LegislatorRoster roster;
  report::Provenance provenance;
  std::vector<std::pair<std::string, std::string>> diagnostics;  // (kind, detail)
};

Inputs load_inputs(const RunConfig& config, bool need_roster, std::ostream& log) {
  if (config.bills_path.empty()) throw ConfigError("--bills-path is required");
  if (need_roster && config.roster_paths.empty()) throw ConfigError("--roster-path is required");

  Inputs in;
  in.provenance.config_hash = report::sha256_hex(canonical_config(config)).substr(0, 16);

  const auto bills_text = read_file(config.bills_path);
  in.provenance.inputs.emplace_back(fs::path(config.bills_path).filename().string(),
                                    report::sha256_hex(bills_text));
  std::istringstream bills_stream(bills_text);
  auto parsed = parse_bills(bills_stream);
  for (const auto& issue : parsed.issues) {
    in.diagnostics.emplace_back("parse_error", "line " + std::to_string(issue.line) + ": " + issue.message);
  }
  if (!parsed.issues.empty()) {
    log << "warning: " << parsed.issues.size() << " bill record(s) rejected; first at line "
        << parsed.issues.front().line << ": " << parsed.issues.front().message << '\n';
  }

  auto bills = filter_bills(parsed.bills, config.chamber);

  std::vector<RosterSource> sources;
  for (const auto& path : config.roster_paths) {
    const auto text = read_file(path);
    in.provenance.inputs.emplace_back(fs::path(path).filename().string(), report::sha256_hex(text));
    std::istringstream stream(text);
    sources.push_back(parse_roster(stream));
  }
  if (!sources.empty()) {
    auto reconciled = reconcile_ids(std::move(bills), sources);
    for (const auto& [id, count] : reconciled.unresolved) {
      in.diagnostics.emplace_back("unresolved_id", id + " dropped from " + std::to_string(count) + " bill(s)");
    }
    if (reconciled.dropped_participants > 0) {
      log << "warning: " << reconciled.unresolved.size() << " unresolved legislator id(s); "
          << reconciled.dropped_participants << " participant slot(s) dropped\n";
    }
    bills = std::move(reconciled.bills);
    in.roster = std::move(reconciled.roster);
  }
  in.bills = std::move(bills);
  return in;
}

std::string stem(double half_life, Measure m, Aggregation a) {
  return std::string(to_string(m)) + "_" + std::string(to_string(a)) + "_hl" + report::format_number(half_life);
}

std::string diagnostics_file(const Inputs& in, const std::vector<std::string>& warnings) {
  report::Table t({"kind", "detail"});
  for (const auto& [kind, detail] : in.diagnostics) t.add_row({kind, detail});
  for (const auto& w : warnings) t.add_row({"warning", w});
  return t.render(in.provenance);
}

// Keys outside any section belong to the subcommand being run. The file is
// read after the command line, so the chosen subcommand is already known.
class SubcommandConfig : public CLI::ConfigTOML {
 public:
  explicit SubcommandConfig(const CLI::App* app) : app_(app) {}

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    auto items = CLI::ConfigTOML::from_config(input);
    const auto chosen = app_->get_subcommands();
    if (chosen.empty()) return items;
    for (auto& item : items) {
      if (item.parents.empty()) item.parents = {chosen.front()->get_name()};
    }
    return items;
  }

 private:
  const CLI::App* app_;
};

}  // namespace

Bundle build_summary_bundle(const RunConfig& config, std::ostream& log) {
  const auto in = load_inputs(config, false, log);
  const auto rows = summarize(in.bills);
  Bundle bundle;
  bundle["summary_table.tsv"] = report::summary_table(rows).render(in.provenance);
  return bundle;
}

Bundle build_run_bundle(const RunConfig& config, std::ostream& log) {
  const auto in = load_inputs(config, true, log);
  const auto data = index_bills(in.bills, &in.roster);

  SweepOptions options;
  options.half_lives = config.half_lives;
  options.aggregations = config.aggregations;
  options.window_months = config.window_months;
  options.mode = config.rel_diff_mode;
  options.bin_width = config.bin_width;
  options.keep_series = config.export_series;
  options.pipeline.measures = config.measures;
  options.pipeline.chamber = config.chamber;
  options.pipeline.congress_reset = config.congress_reset;
  options.pipeline.closeness_distance = config.closeness_distance;
  options.pipeline.threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());

  const auto sweep = half_life_sweep(data, in.roster, options);
  const auto& prov = in.provenance;

  Bundle bundle;
  bundle["summary.tsv"] = report::sweep_summary_table(sweep).render(prov);
  bundle["diagnostics.tsv"] = diagnostics_file(in, sweep.warnings);
  for (const auto& c : sweep.configurations) {
    const auto name = stem(c.half_life, c.measure, c.aggregation);
    bundle["windows/" + name + ".tsv"] = report::window_table(c.windows, data.calendar).render(prov);
    bundle["histograms/" + name + ".tsv"] = report::histogram_table(c.distribution.histogram).render(prov);
    if (config.plots) {
      bundle["plots/" + name + "_windows.svg"] =
          report::window_chart_svg(c.windows, data.calendar, name + " by 4-month window", prov);
      bundle["plots/" + name + "_hist.svg"] =
          report::histogram_svg(c.distribution.histogram, name + " relative differences", prov);
    }
    if (config.export_series && c.aggregation == config.aggregations.front()) {
      bundle["bill_scores/" + std::string(to_string(c.measure)) + "_hl" + report::format_number(c.half_life) +
             ".tsv"] = report::bill_score_table(c.bill_scores).render(prov);
    }
  }
  for (const auto& s : sweep.series) {
    const auto hl = report::format_number(s.half_life);
    if (s.series.count(Measure::Influence)) {
      bundle["series/influence_hl" + hl + ".tsv"] = report::influence_series_table(s, data.legislators).render(prov);
    }
    if (s.series.size() > s.series.count(Measure::Influence)) {
      bundle["series/centrality_hl" + hl + ".tsv"] =
          report::centrality_series_table(s, data.legislators).render(prov);
    }
  }
  if (config.dump_tensors) {
    const auto monthly = build_monthly(data.bills, data.horizon);
    std::function<bool(int)> reset;
    if (config.congress_reset) {
      reset = [&](int t) { return t > 1 && data.calendar.congress_of(t) != data.calendar.congress_of(t - 1); };
    }
    for (double h : config.half_lives) {
      const auto tensor = decay_accumulate(monthly, DecayRate::from_half_life(h), reset);
      const auto hl = report::format_number(h);
      bundle["tensors/c_pass_hl" + hl + ".tsv"] = report::tensor_dump_table(tensor, data.legislators, true).render(prov);
      bundle["tensors/c_tot_hl" + hl + ".tsv"] = report::tensor_dump_table(tensor, data.legislators, false).render(prov);
    }
  }
  return bundle;
}

Bundle build_generate_bundle(const RunConfig& config) {
  const auto data = generate(config.synth);
  Bundle bundle;
  bundle["bills.jsonl"] = format_bills(data.bills);
  bundle["roster.csv"] = format_roster(data.roster);
  std::string elite;
  for (const auto& id : data.elite_ids) elite += id + '\n';
  bundle["elite_ids.txt"] = elite;
  return bundle;
}

void write_bundle(const std::string& dir, const Bundle& bundle) {
  for (const auto& [name, contents] : bundle) {
    const fs::path path = fs::path(dir) / name;
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << contents;
    if (!out) throw DataError("cannot write " + path.string());
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  std::string chamber = "House";
  std::vector<std::string> measures{"influence", "eigenvector", "closeness", "strength"};
  std::vector<std::string> aggregations{"mean", "max"};
  std::string rel_diff_mode = "window_averaged";
  std::string closeness_distance = "reciprocal";

  CLI::App app{"Temporal cosponsorship influence scores and pass/fail separation reports", "billnet"};
  app.require_subcommand(1);
  // Flat `key = value` lines, or [run] / [summarize] / [generate] sections.
  // Fallthrough lets --config follow the subcommand name.
  app.set_config("--config", "", "Configuration file; command-line flags take precedence");
  app.config_formatter(std::make_shared<SubcommandConfig>(&app));
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.fallthrough();

  auto* summarize_cmd = app.add_subcommand("summarize", "Per-Congress summary table of the bill records");
  auto* run_cmd = app.add_subcommand("run", "Full pipeline and report bundle for every configuration");
  auto* generate_cmd = app.add_subcommand("generate", "Write a deterministic synthetic dataset");

  for (auto* cmd : {summarize_cmd, run_cmd}) {
    cmd->add_option("--bills-path", config.bills_path, "Line-delimited JSON bill records")->required();
    cmd->add_option("--roster-path", config.roster_paths, "Roster file (repeatable)");
    cmd->add_option("--chamber", chamber, "House or Senate")->capture_default_str();
  }
  summarize_cmd->add_option("--output-dir", config.output_dir, "Write summary_table.tsv here instead of stdout");
  run_cmd->add_option("--output-dir", config.output_dir, "Report bundle directory")->required();

  run_cmd->add_option("--half-lives", config.half_lives, "Decay half-lives in months")
      ->delimiter(',')
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run_cmd->add_option("--window-months", config.window_months, "Window width in months")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run_cmd->add_option("--measures", measures, "influence, eigenvector, closeness, strength")
      ->delimiter(',')
      ->capture_default_str();
  run_cmd->add_option("--aggregations", aggregations, "mean, max")->delimiter(',')->capture_default_str();
  run_cmd->add_option("--rel-diff-mode", rel_diff_mode, "window_averaged or pooled")->capture_default_str();
  run_cmd->add_option("--closeness-distance", closeness_distance, "reciprocal or hops")->capture_default_str();
  run_cmd->add_option("--congress-reset", config.congress_reset, "Restart decay accumulation each Congress")
      ->capture_default_str();
  run_cmd->add_option("--bin-width", config.bin_width, "Histogram bin width")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run_cmd->add_flag("--plots", config.plots, "Also emit SVG charts");
  run_cmd->add_flag("--export-series", config.export_series, "Also emit per-legislator series and bill scores");
  run_cmd->add_flag("--dump-tensors", config.dump_tensors, "Also emit decayed C_pass / C_tot triples");
  run_cmd->add_option("--threads", config.threads, "Worker threads (0 = all cores)")->capture_default_str();

  auto& s = config.synth;
  generate_cmd->add_option("--output-dir", config.output_dir, "Dataset directory")->required();
  generate_cmd->add_option("--seed", s.seed)->capture_default_str();
  generate_cmd->add_option("--n-legislators", s.n_legislators)->capture_default_str();
  generate_cmd->add_option("--party-split", s.party_split, "Fraction Democrat")->capture_default_str();
  generate_cmd->add_option("--first-congress", s.first_congress)->capture_default_str();
  generate_cmd->add_option("--n-months", s.n_months)->capture_default_str();
  generate_cmd->add_option("--bills-per-month", s.bills_per_month)->capture_default_str();
  generate_cmd->add_option("--min-participants", s.min_participants)->capture_default_str();
  generate_cmd->add_option("--max-participants", s.max_participants)->capture_default_str();
  generate_cmd->add_option("--participant-scale", s.participant_scale, "Mean extra participants beyond the minimum")
      ->capture_default_str();
  generate_cmd->add_option("--base-pass-prob", s.base_pass_prob)->capture_default_str();
  generate_cmd->add_option("--influence-boost", s.influence_boost)->capture_default_str();
  generate_cmd->add_option("--elite-set-size", s.elite_set_size)->capture_default_str();
  generate_cmd->add_option("--elite-weight", s.elite_weight)->capture_default_str();
  generate_cmd->add_option("--resolution-fraction", s.resolution_fraction)->capture_default_str();
  generate_cmd->add_option("--enact-prob", s.enact_prob)->capture_default_str();
  generate_cmd->add_option("--aliased-legislators", s.aliased_legislators)->capture_default_str();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    const auto c = parse_chamber(chamber);
    if (!c) throw ConfigError("unknown chamber '" + chamber + "'");
    config.chamber = *c;
    config.measures.clear();
    for (const auto& m : measures) {
      const auto v = parse_measure(m);
      if (!v) throw ConfigError("unknown measure '" + m + "'");
      if (std::find(config.measures.begin(), config.measures.end(), *v) == config.measures.end()) {
        config.measures.push_back(*v);
      }
    }
    config.aggregations.clear();
    for (const auto& a : aggregations) {
      const auto v = parse_aggregation(a);
      if (!v) throw ConfigError("unknown aggregation '" + a + "'");
      if (std::find(config.aggregations.begin(), config.aggregations.end(), *v) == config.aggregations.end()) {
        config.aggregations.push_back(*v);
      }
    }
    const auto mode = parse_rel_diff_mode(rel_diff_mode);
    if (!mode) throw ConfigError("unknown rel-diff-mode '" + rel_diff_mode + "'");
    config.rel_diff_mode = *mode;
    if (closeness_distance == "reciprocal") {
      config.closeness_distance = DistanceMode::Reciprocal;
    } else if (closeness_distance == "hops") {
      config.closeness_distance = DistanceMode::Hops;
    } else {
      throw ConfigError("unknown closeness-distance '" + closeness_distance + "'");
    }

    if (summarize_cmd->parsed()) {
      const auto bundle = build_summary_bundle(config, err);
      if (config.output_dir.empty()) {
        out << bundle.at("summary_table.tsv");
      } else {
        write_bundle(config.output_dir, bundle);
      }
    } else if (run_cmd->parsed()) {
      write_bundle(config.output_dir, build_run_bundle(config, err));
    } else if (generate_cmd->parsed()) {
      write_bundle(config.output_dir, build_generate_bundle(config));
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kDataError;
  } catch (const ComputationError& e) {
    err << "computation error: " << e.what() << '\n';
    return kComputationError;
  } catch (const fs::filesystem_error& e) {
    err << "data error: " << e.what() << '\n';
    return kDataError;
  }
  return kOk;
}

}  // namespace billnet::cli
