#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "billnet/ingest.hpp"
#include "billnet/tempnet.hpp"

namespace billnet {

// Per-month dense score vectors indexed by LegislatorIndex.
class ScoreSeries {
 public:
  ScoreSeries() = default;
  explicit ScoreSeries(std::size_t n_legislators) : n_legislators_(n_legislators) {}

  void push_month(std::vector<double> values);
  // 0 for months or legislators the series does not cover.
  double at(int t, LegislatorIndex i) const;
  std::span<const double> month(int t) const { return values_.at(t - 1); }
  int horizon() const { return static_cast<int>(values_.size()); }
  std::size_t legislators() const { return n_legislators_; }

 private:
  std::size_t n_legislators_ = 0;
  std::vector<std::vector<double>> values_;
};

struct PartyInfluence {
  int month = 0;
  int n_dems = 0;
  int n_reps = 0;
  std::vector<double> p_dems;  // indexed by LegislatorIndex
  std::vector<double> p_reps;
};

// P_party[i] = (1 / N_party) * sum_party C_pass[i, .] / sum_party C_tot[i, .],
// with the ratio taken as 0 when the C_tot sum is 0. `column_party` gives the
// party of each legislator column; Other columns enter neither sum.
PartyInfluence party_influence(std::span<const DecayedEntry> decayed, int month,
                               std::span<const Party> column_party, int n_dems, int n_reps);

// Party of every legislator for month t, resolved with
// LegislatorRoster::party_as_of against the month's Congress.
std::vector<Party> column_parties(const LegislatorTable& legislators, const LegislatorRoster& roster,
                                  int congress);

// Tensor-level form: every month of `decayed`, party sizes taken from the
// roster of the Congress containing the month. Throws ConfigError when the
// roster does not cover a month or a party has no members.
std::vector<PartyInfluence> party_influence(const DecayedTensor& decayed,
                                            const LegislatorTable& legislators,
                                            const LegislatorRoster& roster,
                                            const MonthCalendar& calendar, Chamber chamber);

// I[t, i] = P_dems[t, i] + P_reps[t, i].
std::vector<double> combine(const PartyInfluence& p);
ScoreSeries combine(std::span<const PartyInfluence> series, std::size_t n_legislators);

struct BillScore {
  std::string bill_id;
  int month = 0;
  double score_mean = 0.0;
  double score_max = 0.0;
  std::size_t n_cosponsors = 0;
  bool passed_house = false;
};

struct BillScoreResult {
  std::vector<BillScore> scores;
  std::vector<std::string> skipped;  // bills with no participants
};

// Mean and max of the participants' scores at the introduction month.
BillScoreResult bill_scores(std::span<const IndexedBill> bills, const ScoreSeries& series);

}  // namespace billnet
