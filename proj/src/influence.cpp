#include "billnet/influence.hpp"

#include <algorithm>

#include "billnet/errors.hpp"

namespace billnet {

void ScoreSeries::push_month(std::vector<double> values) {
  if (values.size() != n_legislators_) throw ConfigError("score vector has the wrong length");
  values_.push_back(std::move(values));
}

double ScoreSeries::at(int t, LegislatorIndex i) const {
  if (t < 1 || t > horizon() || i >= n_legislators_) return 0.0;
  return values_[t - 1][i];
}

PartyInfluence party_influence(std::span<const DecayedEntry> decayed, int month,
                               std::span<const Party> column_party, int n_dems, int n_reps) {
  if (n_dems <= 0 || n_reps <= 0) {
    throw ConfigError("month " + std::to_string(month) + ": both parties need at least one member");
  }
  const std::size_t n = column_party.size();
  std::vector<double> pass_d(n, 0.0), tot_d(n, 0.0), pass_r(n, 0.0), tot_r(n, 0.0);

  auto credit = [&](LegislatorIndex row, LegislatorIndex col, const DecayedEntry& e) {
    switch (column_party[col]) {
      case Party::Democrat:
        pass_d[row] += e.pass;
        tot_d[row] += e.tot;
        break;
      case Party::Republican:
        pass_r[row] += e.pass;
        tot_r[row] += e.tot;
        break;
      case Party::Other: break;
    }
  };
  for (const auto& e : decayed) {
    if (e.i >= n || e.j >= n) throw ConfigError("decayed entry references an unknown legislator");
    credit(e.i, e.j, e);
    credit(e.j, e.i, e);
  }

  PartyInfluence out;
  out.month = month;
  out.n_dems = n_dems;
  out.n_reps = n_reps;
  out.p_dems.assign(n, 0.0);
  out.p_reps.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (tot_d[i] > 0.0) out.p_dems[i] = (pass_d[i] / tot_d[i]) / n_dems;
    if (tot_r[i] > 0.0) out.p_reps[i] = (pass_r[i] / tot_r[i]) / n_reps;
  }
  return out;
}

std::vector<Party> column_parties(const LegislatorTable& legislators, const LegislatorRoster& roster,
                                  int congress) {
  std::vector<Party> parties;
  parties.reserve(legislators.size());
  for (const auto& id : legislators.ids()) parties.push_back(roster.party_as_of(id, congress));
  return parties;
}

std::vector<PartyInfluence> party_influence(const DecayedTensor& decayed,
                                            const LegislatorTable& legislators,
                                            const LegislatorRoster& roster,
                                            const MonthCalendar& calendar, Chamber chamber) {
  std::vector<PartyInfluence> out;
  int cached_congress = -1;
  std::vector<Party> parties;
  PartySizes sizes;
  for (int t = 1; t <= decayed.horizon(); ++t) {
    const int congress = calendar.congress_of(t);
    if (congress != cached_congress) {
      if (!roster.covers(congress, chamber)) {
        throw ConfigError("roster has no " + std::string(to_string(chamber)) + " entries for Congress " +
                          std::to_string(congress) + " (month " + calendar.label(t) + ")");
      }
      parties = column_parties(legislators, roster, congress);
      sizes = roster.party_sizes(congress, chamber);
      cached_congress = congress;
    }
    out.push_back(party_influence(decayed.at_month(t), t, parties, sizes.democrats, sizes.republicans));
  }
  return out;
}

std::vector<double> combine(const PartyInfluence& p) {
  std::vector<double> out(p.p_dems.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = p.p_dems[i] + p.p_reps[i];
  return out;
}

ScoreSeries combine(std::span<const PartyInfluence> series, std::size_t n_legislators) {
  ScoreSeries out(n_legislators);
  for (const auto& p : series) out.push_month(combine(p));
  return out;
}

BillScoreResult bill_scores(std::span<const IndexedBill> bills, const ScoreSeries& series) {
  BillScoreResult out;
  out.scores.reserve(bills.size());
  for (const auto& b : bills) {
    if (b.participants.empty()) {
      out.skipped.push_back(b.bill_id);
      continue;
    }
    double sum = 0.0;
    double max = 0.0;
    for (const auto i : b.participants) {
      const double v = series.at(b.month, i);
      sum += v;
      max = std::max(max, v);
    }
    BillScore s;
    s.bill_id = b.bill_id;
    s.month = b.month;
    s.score_mean = sum / static_cast<double>(b.participants.size());
    // the mean of nonnegative values can exceed their max only by rounding
    s.score_max = std::max(max, s.score_mean);
    s.n_cosponsors = b.participants.size();
    s.passed_house = b.passed;
    out.scores.push_back(std::move(s));
  }
  return out;
}

}  // namespace billnet
