#include "billnet/report.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <memory>
#include <sstream>

#include "billnet/errors.hpp"

namespace billnet::report {

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string optional_number(const std::optional<double>& v) { return v ? format_number(*v) : ""; }

// Plot frame shared by both charts.
struct Frame {
  double width = 720, height = 400, left = 60, right = 20, top = 40, bottom = 50;
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;

  double px(double x) const { return left + (x - x0) / (x1 - x0) * (width - left - right); }
  double py(double y) const { return height - bottom - (y - y0) / (y1 - y0) * (height - top - bottom); }
};

void open_svg(std::ostringstream& out, const Frame& f, std::string_view title) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << f.width << "\" height=\"" << f.height
      << "\" viewBox=\"0 0 " << f.width << ' ' << f.height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << f.width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"14\">" << xml_escape(title) << "</text>\n";
  out << "<line x1=\"" << f.left << "\" y1=\"" << f.height - f.bottom << "\" x2=\"" << f.width - f.right
      << "\" y2=\"" << f.height - f.bottom << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << f.left << "\" y1=\"" << f.top << "\" x2=\"" << f.left << "\" y2=\""
      << f.height - f.bottom << "\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double y = f.y0 + (f.y1 - f.y0) * k / 4.0;
    out << "<text x=\"" << f.left - 6 << "\" y=\"" << fixed(f.py(y) + 4, 2)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << format_number(y)
        << "</text>\n";
  }
}

void close_svg(std::ostringstream& out, const Provenance& provenance) {
  out << "<!-- " << provenance.footer().substr(2) << " -->\n</svg>\n";
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc{}) throw ComputationError("number formatting failed");
  return std::string(buf.data(), ptr);
}

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw ComputationError("SHA-256 digest failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int k = 0; k < len; ++k) {
    out += hex[digest[k] >> 4];
    out += hex[digest[k] & 0xf];
  }
  return out;
}

std::string Provenance::footer() const {
  std::string out = "# provenance config=" + config_hash;
  for (const auto& [name, digest] : inputs) out += " " + name + "=sha256:" + digest;
  return out;
}

void Table::add_row(std::vector<std::string> row) {
  if (row.size() != header_.size()) throw ConfigError("table row width does not match header");
  rows_.push_back(std::move(row));
}

std::string Table::render(const Provenance& provenance) const {
  std::string out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (k) out += '\t';
      out += cells[k];
    }
    out += '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  out += provenance.footer();
  out += '\n';
  return out;
}

Table summary_table(std::span<const SummaryRow> rows) {
  Table t({"congress", "n_bills", "pct_passed_house", "pct_enacted", "mean_cosponsors_per_bill",
           "max_cosponsors_per_bill", "mean_bills_per_cosponsor", "max_bills_per_cosponsor"});
  for (const auto& r : rows) {
    t.add_row({std::to_string(r.congress), std::to_string(r.n_bills), fixed(r.pct_passed_house, 2),
               fixed(r.pct_enacted, 2), fixed(r.mean_cosponsors, 2), std::to_string(r.max_cosponsors),
               fixed(r.mean_bills_per_cosponsor, 2), std::to_string(r.max_bills_per_cosponsor)});
  }
  return t;
}

Table window_table(std::span<const WindowStat> windows, const MonthCalendar& calendar) {
  Table t({"window", "window_start", "start_month", "end_month", "n_passed", "n_failed", "mean_passed",
           "mean_failed", "se_passed", "se_failed", "rel_diff", "flags"});
  for (const auto& w : windows) {
    std::string flags;
    if (!w.rel_diff) flags = "no_rel_diff";
    if (w.partial) flags += flags.empty() ? "partial" : ",partial";
    t.add_row({std::to_string(w.index), calendar.label(w.start_month), std::to_string(w.start_month),
               std::to_string(w.end_month), std::to_string(w.n_passed), std::to_string(w.n_failed),
               format_number(w.mean_passed), format_number(w.mean_failed), format_number(w.se_passed),
               format_number(w.se_failed), optional_number(w.rel_diff), flags});
  }
  return t;
}

Table histogram_table(const Histogram& h) {
  Table t({"bin_low", "bin_high", "count"});
  for (std::size_t k = 0; k < h.counts.size(); ++k) {
    const double lo = h.origin + static_cast<double>(k) * h.bin_width;
    t.add_row({format_number(lo), format_number(lo + h.bin_width), std::to_string(h.counts[k])});
  }
  return t;
}

Table sweep_summary_table(const SweepResult& sweep) {
  Table t({"measure", "aggregation", "half_life", "mean_rel_diff", "se", "n_windows"});
  for (const auto& c : sweep.configurations) {
    t.add_row({std::string(to_string(c.measure)), std::string(to_string(c.aggregation)),
               format_number(c.half_life), format_number(c.mean_rel_diff), format_number(c.se),
               std::to_string(c.distribution.n)});
  }
  return t;
}

Table influence_series_table(const MeasureSeries& series, const LegislatorTable& legislators) {
  Table t({"t", "canonical_id", "p_dems", "p_reps", "influence"});
  const auto it = series.series.find(Measure::Influence);
  if (it == series.series.end()) return t;
  for (int m = 1; m <= it->second.horizon(); ++m) {
    const auto values = it->second.month(m);
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (values[i] == 0.0) continue;
      const auto idx = static_cast<LegislatorIndex>(i);
      t.add_row({std::to_string(m), legislators.id(idx), format_number(series.p_dems.at(m, idx)),
                 format_number(series.p_reps.at(m, idx)), format_number(values[i])});
    }
  }
  return t;
}

Table centrality_series_table(const MeasureSeries& series, const LegislatorTable& legislators) {
  Table t({"t", "canonical_id", "measure", "value"});
  for (const auto& [measure, s] : series.series) {
    if (measure == Measure::Influence) continue;
    for (int m = 1; m <= s.horizon(); ++m) {
      const auto values = s.month(m);
      for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] == 0.0) continue;
        t.add_row({std::to_string(m), legislators.id(static_cast<LegislatorIndex>(i)),
                   std::string(to_string(measure)), format_number(values[i])});
      }
    }
  }
  return t;
}

Table bill_score_table(std::span<const BillScore> scores) {
  Table t({"bill_id", "t", "score_mean", "score_max", "n_cosponsors", "passed_house"});
  for (const auto& s : scores) {
    t.add_row({s.bill_id, std::to_string(s.month), format_number(s.score_mean), format_number(s.score_max),
               std::to_string(s.n_cosponsors), s.passed_house ? "true" : "false"});
  }
  return t;
}

Table tensor_dump_table(const DecayedTensor& tensor, const LegislatorTable& legislators, bool pass) {
  Table t({"t", "i", "j", "weight"});
  for (int m = 1; m <= tensor.horizon(); ++m) {
    for (const auto& e : tensor.at_month(m)) {
      const double w = pass ? e.pass : e.tot;
      if (w == 0.0) continue;
      t.add_row({std::to_string(m), legislators.id(e.i), legislators.id(e.j), format_number(w)});
    }
  }
  return t;
}

std::string window_chart_svg(std::span<const WindowStat> windows, const MonthCalendar& calendar,
                             std::string_view title, const Provenance& provenance) {
  Frame f;
  f.x0 = -0.5;
  f.x1 = std::max<double>(static_cast<double>(windows.size()) - 0.5, 0.5);
  double hi = 0.0;
  for (const auto& w : windows) {
    if (w.n_passed) hi = std::max(hi, w.mean_passed + w.se_passed);
    if (w.n_failed) hi = std::max(hi, w.mean_failed + w.se_failed);
  }
  f.y1 = hi > 0.0 ? hi * 1.1 : 1.0;

  std::ostringstream out;
  open_svg(out, f, title);
  for (std::size_t k = 0; k < windows.size(); k += std::max<std::size_t>(1, windows.size() / 8)) {
    out << "<text x=\"" << fixed(f.px(static_cast<double>(k)), 2) << "\" y=\"" << f.height - f.bottom + 16
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">"
        << calendar.label(windows[k].start_month) << "</text>\n";
  }
  auto series = [&](bool passed) {
    const char* color = passed ? "#1f77b4" : "#ff7f0e";
    for (std::size_t k = 0; k < windows.size(); ++k) {
      const auto& w = windows[k];
      const auto n = passed ? w.n_passed : w.n_failed;
      if (n == 0) continue;
      const double mean = passed ? w.mean_passed : w.mean_failed;
      const double se = passed ? w.se_passed : w.se_failed;
      const double x = f.px(static_cast<double>(k) + (passed ? -0.12 : 0.12));
      out << "<line x1=\"" << fixed(x, 2) << "\" y1=\"" << fixed(f.py(mean - se), 2) << "\" x2=\"" << fixed(x, 2)
          << "\" y2=\"" << fixed(f.py(mean + se), 2) << "\" stroke=\"" << color << "\"/>\n";
      const double y = f.py(mean);
      if (passed) {
        out << "<circle cx=\"" << fixed(x, 2) << "\" cy=\"" << fixed(y, 2) << "\" r=\"3\" fill=\"" << color
            << "\"/>\n";
      } else {
        out << "<path d=\"M" << fixed(x - 3, 2) << ' ' << fixed(y - 3, 2) << "L" << fixed(x + 3, 2) << ' '
            << fixed(y + 3, 2) << "M" << fixed(x - 3, 2) << ' ' << fixed(y + 3, 2) << "L" << fixed(x + 3, 2)
            << ' ' << fixed(y - 3, 2) << "\" stroke=\"" << color << "\"/>\n";
      }
    }
  };
  series(true);
  series(false);
  out << "<text x=\"" << f.width - 150 << "\" y=\"" << f.top + 10
      << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#1f77b4\">passed</text>\n";
  out << "<text x=\"" << f.width - 90 << "\" y=\"" << f.top + 10
      << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#ff7f0e\">failed</text>\n";
  close_svg(out, provenance);
  return out.str();
}

std::string histogram_svg(const Histogram& h, std::string_view title, const Provenance& provenance) {
  Frame f;
  f.x0 = h.origin;
  f.x1 = h.origin + h.bin_width * static_cast<double>(std::max<std::size_t>(h.counts.size(), 1));
  std::size_t top = 1;
  for (auto c : h.counts) top = std::max(top, c);
  f.y1 = static_cast<double>(top);

  std::ostringstream out;
  open_svg(out, f, title);
  for (std::size_t k = 0; k < h.counts.size(); ++k) {
    const double lo = h.origin + static_cast<double>(k) * h.bin_width;
    const double x = f.px(lo);
    const double w = f.px(lo + h.bin_width) - x;
    const double y = f.py(static_cast<double>(h.counts[k]));
    out << "<rect x=\"" << fixed(x, 2) << "\" y=\"" << fixed(y, 2) << "\" width=\"" << fixed(w, 2)
        << "\" height=\"" << fixed(f.py(0) - y, 2) << "\" fill=\"#4c72b0\" stroke=\"white\"/>\n";
    out << "<text x=\"" << fixed(x + w / 2, 2) << "\" y=\"" << f.height - f.bottom + 16
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"9\">" << fixed(lo, 2) << "</text>\n";
  }
  close_svg(out, provenance);
  return out.str();
}

}  // namespace billnet::report
