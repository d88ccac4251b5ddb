#include "billnet/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "billnet/errors.hpp"

namespace billnet {

namespace {

// One stream per kind of draw.
enum Stream : std::uint64_t {
  kElite = 1,
  kType = 2,
  kTypeKind = 3,
  kSize = 4,
  kPick = 5,
  kPass = 6,
  kDay = 7,
  kDelay = 8,
  kEnact = 9,
};

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

std::string legislator_id(int index, int width) {
  auto digits = std::to_string(index);
  if (static_cast<int>(digits.size()) < width) digits.insert(0, width - digits.size(), '0');
  return "L" + digits;
}

std::string_view bill_prefix(BillType t) {
  switch (t) {
    case BillType::Bill: return "hr";
    case BillType::SimpleResolution: return "hres";
    case BillType::ConcurrentResolution: return "hconres";
    case BillType::JointResolution: return "hjres";
  }
  return "hr";
}

}  // namespace

std::uint64_t CounterRng::mix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t CounterRng::bits(std::uint64_t stream, std::uint64_t counter) const {
  return mix(mix(mix(seed_) ^ stream) ^ counter);
}

double CounterRng::uniform(std::uint64_t stream, std::uint64_t counter) const {
  return static_cast<double>(bits(stream, counter) >> 11) * 0x1.0p-53;
}

std::int64_t CounterRng::between(std::int64_t lo, std::int64_t hi, std::uint64_t stream,
                                 std::uint64_t counter) const {
  if (hi < lo) throw ConfigError("empty integer range");
  const auto span = static_cast<double>(hi - lo) + 1.0;
  const auto offset = static_cast<std::int64_t>(uniform(stream, counter) * span);
  return std::min(hi, lo + offset);
}

void validate(const SynthConfig& c) {
  auto fail = [](const std::string& m) { throw ConfigError("synthetic config: " + m); };
  if (c.n_legislators < 2) fail("n_legislators must be at least 2");
  if (c.n_months < 1) fail("n_months must be at least 1");
  if (c.bills_per_month < 0) fail("bills_per_month must be nonnegative");
  if (c.first_congress < 1) fail("first_congress must be positive");
  if (c.min_participants < 1 || c.min_participants > c.max_participants) {
    fail("participant range must satisfy 1 <= min <= max");
  }
  if (c.max_participants > c.n_legislators) fail("max_participants exceeds n_legislators");
  if (!is_probability(c.party_split)) fail("party_split must be in [0, 1]");
  if (!is_probability(c.base_pass_prob)) fail("base_pass_prob must be in [0, 1]");
  if (!is_probability(c.influence_boost)) fail("influence_boost must be in [0, 1]");
  if (c.base_pass_prob + c.influence_boost > 1.0) fail("base_pass_prob + influence_boost exceeds 1");
  if (!is_probability(c.resolution_fraction)) fail("resolution_fraction must be in [0, 1]");
  if (!is_probability(c.enact_prob)) fail("enact_prob must be in [0, 1]");
  if (c.elite_set_size < 0 || c.elite_set_size > c.n_legislators) fail("elite_set_size out of range");
  if (!(c.participant_scale >= 0.0) || !std::isfinite(c.participant_scale)) {
    fail("participant_scale must be finite and nonnegative");
  }
  if (!(c.elite_weight > 0.0)) fail("elite_weight must be positive");
  if (c.aliased_legislators < 0 || c.aliased_legislators > c.n_legislators) {
    fail("aliased_legislators out of range");
  }
}

SynthDataset generate(const SynthConfig& config) {
  validate(config);
  const CounterRng rng(config.seed);
  const int n = config.n_legislators;
  const int width = std::max(4, static_cast<int>(std::to_string(n - 1).size()));

  std::vector<std::string> ids(n);
  for (int i = 0; i < n; ++i) ids[i] = legislator_id(i, width);
  const int n_dems = static_cast<int>(config.party_split * n + 0.5);

  // elite members: partial Fisher-Yates over legislator indices
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (int k = 0; k < config.elite_set_size; ++k) {
    const auto pick = rng.between(k, n - 1, kElite, static_cast<std::uint64_t>(k));
    std::swap(order[k], order[static_cast<std::size_t>(pick)]);
  }
  std::vector<bool> elite(n, false);
  for (int k = 0; k < config.elite_set_size; ++k) elite[order[k]] = true;

  const auto calendar = MonthCalendar::starting_at_congress(config.first_congress);
  auto alias_of = [&](int i, int congress) {
    const bool aliased = i >= n - config.aliased_legislators && congress % 2 == 0;
    return aliased ? "X" + ids[i] : ids[i];
  };

  SynthDataset out;
  std::map<int, int> seq_per_congress;
  std::vector<int> remaining;
  std::uint64_t bill_no = 0;
  const auto draws_per_bill = static_cast<std::uint64_t>(config.max_participants) + 1;

  for (int t = 1; t <= config.n_months; ++t) {
    const int year = calendar.year_of(t);
    const int month = calendar.month_of(t);
    const int congress = calendar.congress_of(t);
    for (int k = 0; k < config.bills_per_month; ++k, ++bill_no) {
      BillRecord b;
      b.congress = congress;
      b.chamber = Chamber::House;
      if (rng.uniform(kType, bill_no) < config.resolution_fraction) {
        static constexpr BillType kinds[] = {BillType::SimpleResolution, BillType::ConcurrentResolution,
                                             BillType::JointResolution};
        b.bill_type = kinds[rng.between(0, 2, kTypeKind, bill_no)];
      }
      b.bill_id = std::string(bill_prefix(b.bill_type)) + std::to_string(congress) + "-" +
                  std::to_string(++seq_per_congress[congress]);

      // extra participants beyond the minimum: floor of an exponential draw
      const double extra = -std::log1p(-rng.uniform(kSize, bill_no)) * config.participant_scale;
      const auto size = std::min<std::int64_t>(config.max_participants,
                                               config.min_participants + static_cast<std::int64_t>(extra));
      remaining.resize(n);
      std::iota(remaining.begin(), remaining.end(), 0);
      bool elite_present = false;
      std::vector<int> chosen;
      for (std::int64_t d = 0; d < size; ++d) {
        double total = 0.0;
        for (int i : remaining) total += elite[i] ? config.elite_weight : 1.0;
        double target = rng.uniform(kPick, bill_no * draws_per_bill + static_cast<std::uint64_t>(d)) * total;
        std::size_t slot = 0;
        for (; slot + 1 < remaining.size(); ++slot) {
          target -= elite[remaining[slot]] ? config.elite_weight : 1.0;
          if (target < 0.0) break;
        }
        const int who = remaining[slot];
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(slot));
        elite_present = elite_present || elite[who];
        chosen.push_back(who);
      }
      b.sponsor_id = alias_of(chosen.front(), congress);
      for (std::size_t c = 1; c < chosen.size(); ++c) b.cosponsor_ids.push_back(alias_of(chosen[c], congress));
      std::sort(b.cosponsor_ids.begin(), b.cosponsor_ids.end());

      const double p_pass = config.base_pass_prob + (elite_present ? config.influence_boost : 0.0);
      b.passed_house = rng.uniform(kPass, bill_no) < p_pass;
      const auto day = static_cast<int>(rng.between(3, 28, kDay, bill_no));
      b.introduced_date = Date{year, month, day};
      if (b.passed_house) {
        const auto delay = static_cast<int>(rng.between(0, 28 - day, kDelay, bill_no));
        b.passed_house_date = Date{year, month, day + delay};
        b.enacted = rng.uniform(kEnact, bill_no) < config.enact_prob;
      }
      out.bills.push_back(std::move(b));
    }
  }

  const int last_congress = calendar.congress_of(config.n_months);
  for (int congress = config.first_congress; congress <= last_congress; ++congress) {
    for (int i = 0; i < n; ++i) {
      out.roster.members.push_back(
          {ids[i], congress, Chamber::House, i < n_dems ? Party::Democrat : Party::Republican});
    }
  }
  for (int i = n - config.aliased_legislators; i < n; ++i) out.roster.aliases.push_back({"X" + ids[i], ids[i]});
  for (int i = 0; i < n; ++i) {
    if (elite[i]) out.elite_ids.push_back(ids[i]);
  }
  return out;
}

std::string format_bills(const std::vector<BillRecord>& bills) {
  std::string out;
  for (const auto& b : bills) {
    out += to_json_line(b);
    out += '\n';
  }
  return out;
}

}  // namespace billnet
