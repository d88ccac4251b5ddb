#include "billnet/tempnet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "billnet/errors.hpp"

namespace billnet {

namespace {

std::uint64_t pair_key(LegislatorIndex i, LegislatorIndex j) {
  return (static_cast<std::uint64_t>(i) << 32) | j;
}

template <typename Entry>
bool key_less(const Entry& e, std::uint64_t key) {
  return pair_key(e.i, e.j) < key;
}

}  // namespace

LegislatorTable::LegislatorTable(std::vector<std::string> ids) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
  if (ids_.size() > std::numeric_limits<LegislatorIndex>::max()) {
    throw ConfigError("too many legislators");
  }
}

std::optional<LegislatorIndex> LegislatorTable::find(std::string_view id) const {
  const auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) return std::nullopt;
  return static_cast<LegislatorIndex>(it - ids_.begin());
}

IndexedBills index_bills(std::span<const BillRecord> bills, const LegislatorRoster* roster,
                         std::optional<MonthCalendar> calendar) {
  IndexedBills out;
  if (calendar) {
    out.calendar = *calendar;
  } else if (!bills.empty()) {
    const auto first = std::min_element(bills.begin(), bills.end(), [](const auto& a, const auto& b) {
      return a.congress < b.congress;
    });
    out.calendar = MonthCalendar::starting_at_congress(first->congress);
  }

  std::vector<std::string> ids;
  if (roster) ids = roster->canonical_ids();
  for (const auto& b : bills) {
    for (auto& p : b.participants()) ids.push_back(std::move(p));
  }
  out.legislators = LegislatorTable(std::move(ids));

  out.bills.reserve(bills.size());
  for (const auto& b : bills) {
    IndexedBill ib;
    ib.bill_id = b.bill_id;
    ib.month = out.calendar.index_of(b.introduced_date);
    if (ib.month < 1) {
      throw ConfigError("bill " + b.bill_id + " introduced before the analysis start month " +
                        out.calendar.label(1));
    }
    ib.passed = b.passed_house;
    for (const auto& p : b.participants()) ib.participants.push_back(*out.legislators.find(p));
    // participants() is sorted by id and indices follow id order
    out.horizon = std::max(out.horizon, ib.month);
    out.bills.push_back(std::move(ib));
  }
  return out;
}

MonthlyCooccurrence::MonthlyCooccurrence(int month, std::vector<PairCount> pairs)
    : month_(month), pairs_(std::move(pairs)) {}

std::uint32_t MonthlyCooccurrence::at(LegislatorIndex a, LegislatorIndex b) const {
  if (a == b) return 0;
  if (a > b) std::swap(a, b);
  const auto key = pair_key(a, b);
  const auto it = std::lower_bound(pairs_.begin(), pairs_.end(), key, key_less<PairCount>);
  return (it != pairs_.end() && it->i == a && it->j == b) ? it->count : 0;
}

MonthlyTensors build_monthly(std::span<const IndexedBill> bills, int horizon) {
  if (horizon < 0) throw ConfigError("negative horizon");
  std::vector<std::vector<const IndexedBill*>> by_month(horizon);
  for (const auto& b : bills) {
    if (b.month < 1 || b.month > horizon) {
      throw ConfigError("bill " + b.bill_id + " month " + std::to_string(b.month) +
                        " outside 1.." + std::to_string(horizon));
    }
    by_month[b.month - 1].push_back(&b);
  }

  auto compress = [](int month, std::vector<std::uint64_t>& keys) {
    std::sort(keys.begin(), keys.end());
    std::vector<PairCount> pairs;
    for (std::size_t a = 0; a < keys.size();) {
      std::size_t b = a;
      while (b < keys.size() && keys[b] == keys[a]) ++b;
      pairs.push_back({static_cast<LegislatorIndex>(keys[a] >> 32),
                       static_cast<LegislatorIndex>(keys[a] & 0xffffffffu),
                       static_cast<std::uint32_t>(b - a)});
      a = b;
    }
    keys.clear();
    return MonthlyCooccurrence(month, std::move(pairs));
  };

  MonthlyTensors out;
  out.pass.reserve(horizon);
  out.tot.reserve(horizon);
  // one month of raw pair keys in memory at a time
  std::vector<std::uint64_t> pass_keys, tot_keys;
  for (int t = 1; t <= horizon; ++t) {
    for (const IndexedBill* b : by_month[t - 1]) {
      const auto& p = b->participants;
      for (std::size_t x = 0; x < p.size(); ++x) {
        for (std::size_t y = x + 1; y < p.size(); ++y) {
          const auto lo = std::min(p[x], p[y]);
          const auto hi = std::max(p[x], p[y]);
          if (lo == hi) continue;
          tot_keys.push_back(pair_key(lo, hi));
          if (b->passed) pass_keys.push_back(pair_key(lo, hi));
        }
      }
    }
    out.pass.push_back(compress(t, pass_keys));
    out.tot.push_back(compress(t, tot_keys));
  }
  return out;
}

DecayRate DecayRate::from_half_life(double half_life_months) {
  if (!std::isfinite(half_life_months) || half_life_months <= 0.0) {
    throw ConfigError("half-life must be a positive finite number of months");
  }
  return DecayRate(half_life_months, std::log(0.5) / half_life_months);
}

double DecayRate::weight_after(double elapsed) const { return std::exp(k_ * elapsed); }

DecayAccumulator::DecayAccumulator(DecayRate rate) : factor_(std::exp(rate.k())) {}

void DecayAccumulator::reset() { state_.clear(); }

void DecayAccumulator::advance(const MonthlyCooccurrence& pass, const MonthlyCooccurrence& tot) {
  if (pass.month() != month_ + 1 || tot.month() != month_ + 1) {
    throw ConfigError("decay accumulation expects month " + std::to_string(month_ + 1) + ", got " +
                      std::to_string(tot.month()));
  }
  scratch_.clear();
  scratch_.reserve(state_.size() + tot.pairs().size());

  const auto old_entries = std::span<const DecayedEntry>(state_);
  const auto tot_pairs = tot.pairs();
  const auto pass_pairs = pass.pairs();
  std::size_t a = 0, b = 0, p = 0;
  while (a < old_entries.size() || b < tot_pairs.size()) {
    const auto ka = a < old_entries.size() ? pair_key(old_entries[a].i, old_entries[a].j)
                                           : std::numeric_limits<std::uint64_t>::max();
    const auto kb = b < tot_pairs.size() ? pair_key(tot_pairs[b].i, tot_pairs[b].j)
                                         : std::numeric_limits<std::uint64_t>::max();
    DecayedEntry e;
    if (ka <= kb) {
      e = old_entries[a++];
      e.pass *= factor_;
      e.tot *= factor_;
    } else {
      e.i = tot_pairs[b].i;
      e.j = tot_pairs[b].j;
    }
    if (kb <= ka) {
      e.tot += tot_pairs[b].count;
      if (p < pass_pairs.size() && pair_key(pass_pairs[p].i, pass_pairs[p].j) == kb) {
        if (pass_pairs[p].count > tot_pairs[b].count) {
          throw ConfigError("pass count exceeds total count in month " + std::to_string(tot.month()));
        }
        e.pass += pass_pairs[p++].count;
      }
      ++b;
    }
    scratch_.push_back(e);
  }
  if (p != pass_pairs.size()) {
    throw ConfigError("pass pair without a total pair in month " + std::to_string(tot.month()));
  }
  state_.swap(scratch_);
  month_ = tot.month();
}

const DecayedEntry* DecayedTensor::find(int t, LegislatorIndex a, LegislatorIndex b) const {
  if (a == b || t < 1 || t > horizon()) return nullptr;
  if (a > b) std::swap(a, b);
  const auto& entries = months_[t - 1];
  const auto key = pair_key(a, b);
  const auto it = std::lower_bound(entries.begin(), entries.end(), key, key_less<DecayedEntry>);
  return (it != entries.end() && it->i == a && it->j == b) ? &*it : nullptr;
}

double DecayedTensor::pass(int t, LegislatorIndex a, LegislatorIndex b) const {
  const auto* e = find(t, a, b);
  return e ? e->pass : 0.0;
}

double DecayedTensor::tot(int t, LegislatorIndex a, LegislatorIndex b) const {
  const auto* e = find(t, a, b);
  return e ? e->tot : 0.0;
}

void check_contiguous(const MonthlyTensors& monthly) {
  if (monthly.pass.size() != monthly.tot.size()) {
    throw ConfigError("pass and total month sequences differ in length");
  }
  for (std::size_t n = 0; n < monthly.tot.size(); ++n) {
    const int want = static_cast<int>(n) + 1;
    if (monthly.pass[n].month() != want || monthly.tot[n].month() != want) {
      throw ConfigError("month sequence is not contiguous at position " + std::to_string(want));
    }
  }
}

DecayedTensor decay_accumulate(const MonthlyTensors& monthly, DecayRate rate,
                               const std::function<bool(int)>& reset_before) {
  check_contiguous(monthly);
  DecayedTensor out;
  out.months_.reserve(monthly.tot.size());
  DecayAccumulator acc(rate);
  for (std::size_t n = 0; n < monthly.tot.size(); ++n) {
    if (reset_before && reset_before(static_cast<int>(n) + 1)) acc.reset();
    acc.advance(monthly.pass[n], monthly.tot[n]);
    const auto e = acc.entries();
    out.months_.emplace_back(e.begin(), e.end());
  }
  return out;
}

}  // namespace billnet
