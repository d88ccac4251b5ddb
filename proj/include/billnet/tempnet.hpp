#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "billnet/calendar.hpp"
#include "billnet/ingest.hpp"

namespace billnet {

using LegislatorIndex = std::uint32_t;

// Dense indices for canonical ids. Indices follow lexicographic id order,
// so "smallest index" and "smallest canonical id" coincide.
class LegislatorTable {
 public:
  LegislatorTable() = default;
  explicit LegislatorTable(std::vector<std::string> ids);

  std::optional<LegislatorIndex> find(std::string_view id) const;
  const std::string& id(LegislatorIndex i) const { return ids_[i]; }
  std::size_t size() const { return ids_.size(); }
  std::span<const std::string> ids() const { return ids_; }

 private:
  std::vector<std::string> ids_;
};

struct IndexedBill {
  std::string bill_id;
  int month = 0;                              // introduction month t
  std::vector<LegislatorIndex> participants;  // sorted, unique
  bool passed = false;
};

struct IndexedBills {
  MonthCalendar calendar;
  LegislatorTable legislators;
  std::vector<IndexedBill> bills;
  int horizon = 0;  // last month index containing a bill
};

// Assigns month indices and legislator indices. The legislator table is the
// union of roster ids (when given) and every participant id. Without an
// explicit calendar, t = 1 is January of the earliest Congress present.
IndexedBills index_bills(std::span<const BillRecord> bills, const LegislatorRoster* roster = nullptr,
                         std::optional<MonthCalendar> calendar = std::nullopt);

// ---- monthly co-occurrence ------------------------------------------------

struct PairCount {
  LegislatorIndex i = 0;  // i < j
  LegislatorIndex j = 0;
  std::uint32_t count = 0;
};

class MonthlyCooccurrence {
 public:
  MonthlyCooccurrence() = default;
  MonthlyCooccurrence(int month, std::vector<PairCount> pairs);

  int month() const { return month_; }
  std::span<const PairCount> pairs() const { return pairs_; }
  // Symmetric lookup; zero on the diagonal and for absent pairs.
  std::uint32_t at(LegislatorIndex a, LegislatorIndex b) const;

 private:
  int month_ = 0;
  std::vector<PairCount> pairs_;  // sorted by (i, j), counts > 0
};

struct MonthlyTensors {
  std::vector<MonthlyCooccurrence> pass;  // pass[t - 1]
  std::vector<MonthlyCooccurrence> tot;
  int horizon() const { return static_cast<int>(tot.size()); }
};

// Every unordered participant pair of a bill introduced at t increments
// tot[t]; passed bills also increment pass[t] (credit at introduction).
MonthlyTensors build_monthly(std::span<const IndexedBill> bills, int horizon);

// ---- decay ----------------------------------------------------------------

class DecayRate {
 public:
  static DecayRate from_half_life(double half_life_months);

  double half_life() const { return half_life_; }
  // k = ln(0.5) / half-life, always negative.
  double k() const { return k_; }
  // Weight of a unit event after `elapsed` months.
  double weight_after(double elapsed) const;

 private:
  DecayRate(double half_life, double k) : half_life_(half_life), k_(k) {}
  double half_life_;
  double k_;
};

struct DecayedEntry {
  LegislatorIndex i = 0;  // i < j
  LegislatorIndex j = 0;
  double pass = 0.0;
  double tot = 0.0;
};

// Streams C[t] = e^k C[t-1] + A[t], one month per advance().
class DecayAccumulator {
 public:
  explicit DecayAccumulator(DecayRate rate);

  void advance(const MonthlyCooccurrence& pass, const MonthlyCooccurrence& tot);
  // Zeroes the state without moving the month counter.
  void reset();

  int month() const { return month_; }
  std::span<const DecayedEntry> entries() const { return state_; }

 private:
  double factor_;
  int month_ = 0;
  std::vector<DecayedEntry> state_;  // sorted by (i, j)
  std::vector<DecayedEntry> scratch_;
};

// Materialized C_pass / C_tot for every month.
class DecayedTensor {
 public:
  int horizon() const { return static_cast<int>(months_.size()); }
  std::span<const DecayedEntry> at_month(int t) const { return months_.at(t - 1); }
  double pass(int t, LegislatorIndex a, LegislatorIndex b) const;
  double tot(int t, LegislatorIndex a, LegislatorIndex b) const;

 private:
  friend DecayedTensor decay_accumulate(const MonthlyTensors&, DecayRate,
                                        const std::function<bool(int)>&);
  const DecayedEntry* find(int t, LegislatorIndex a, LegislatorIndex b) const;
  std::vector<std::vector<DecayedEntry>> months_;
};

// Months must run contiguously 1..H in both variants, else ConfigError.
// `reset_before(t)` returning true zeroes the accumulated state before
// month t is added (per-Congress reset).
DecayedTensor decay_accumulate(const MonthlyTensors& monthly, DecayRate rate,
                               const std::function<bool(int)>& reset_before = {});

// Throws ConfigError unless pass/tot both hold months 1..H in order.
void check_contiguous(const MonthlyTensors& monthly);

}  // namespace billnet
