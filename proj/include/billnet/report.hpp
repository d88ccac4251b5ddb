#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "billnet/analysis.hpp"
#include "billnet/calendar.hpp"
#include "billnet/ingest.hpp"
#include "billnet/tempnet.hpp"

namespace billnet::report {

// Shortest round-trip decimal form; "nan" / "inf" for non-finite values.
std::string format_number(double v);

std::string sha256_hex(std::string_view data);

struct Provenance {
  std::string config_hash;
  std::vector<std::pair<std::string, std::string>> inputs;  // (name, sha256)

  // "# provenance config=<hash> <name>=sha256:<digest> ..."
  std::string footer() const;
};

// Tab-separated table: header row, data rows, provenance footer line.
class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}
  void add_row(std::vector<std::string> row);
  std::string render(const Provenance& provenance) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

Table summary_table(std::span<const SummaryRow> rows);
Table window_table(std::span<const WindowStat> windows, const MonthCalendar& calendar);
Table histogram_table(const Histogram& histogram);
Table sweep_summary_table(const SweepResult& sweep);
Table influence_series_table(const MeasureSeries& series, const LegislatorTable& legislators);
Table centrality_series_table(const MeasureSeries& series, const LegislatorTable& legislators);
Table bill_score_table(std::span<const BillScore> scores);
// (t, i, j, weight) rows; `pass` selects C_pass, otherwise C_tot.
Table tensor_dump_table(const DecayedTensor& tensor, const LegislatorTable& legislators, bool pass);

// Pass/fail window means with standard-error bars.
std::string window_chart_svg(std::span<const WindowStat> windows, const MonthCalendar& calendar,
                             std::string_view title, const Provenance& provenance);
std::string histogram_svg(const Histogram& histogram, std::string_view title, const Provenance& provenance);

}  // namespace billnet::report
