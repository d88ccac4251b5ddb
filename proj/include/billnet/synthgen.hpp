#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "billnet/ingest.hpp"

namespace billnet {

// Counter-based generator: every draw is a pure function of
// (seed, stream, counter), so draws for one purpose never shift the draws
// for another and results match on every platform.
//
//   mix(x)  = splitmix64 finalizer of x
//   bits    = mix(mix(mix(seed) ^ stream) ^ counter)
//   uniform = (bits >> 11) * 2^-53          in [0, 1)
//   between(lo, hi) = lo + floor(uniform * (hi - lo + 1))
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  static std::uint64_t mix(std::uint64_t x);
  std::uint64_t bits(std::uint64_t stream, std::uint64_t counter) const;
  double uniform(std::uint64_t stream, std::uint64_t counter) const;
  // Uniform integer in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi, std::uint64_t stream, std::uint64_t counter) const;

 private:
  std::uint64_t seed_;
};

struct SynthConfig {
  std::uint64_t seed = 1;
  int n_legislators = 50;
  double party_split = 0.5;  // fraction Democrat
  int first_congress = 111;
  int n_months = 60;
  int bills_per_month = 30;
  // participants per bill (sponsor included): min + floor(Exp(scale)),
  // truncated at max. A heavy tail like real cosponsorship counts.
  int min_participants = 2;
  int max_participants = 50;
  double participant_scale = 20.0;
  double base_pass_prob = 0.1;
  double influence_boost = 0.3;  // added when any elite member participates
  int elite_set_size = 5;
  double elite_weight = 1.5;  // sampling weight of elite members vs 1 for others
  double resolution_fraction = 0.0;
  double enact_prob = 0.3;  // probability of enactment given House passage
  // the last k legislators appear under an alias in even-numbered Congresses
  int aliased_legislators = 0;
};

// Throws ConfigError for out-of-range probabilities, base + boost > 1,
// max_participants > n_legislators, and similar.
void validate(const SynthConfig& config);

struct SynthDataset {
  std::vector<BillRecord> bills;
  RosterSource roster;
  std::vector<std::string> elite_ids;  // sorted
};

SynthDataset generate(const SynthConfig& config);

// Line-delimited bill records, one per line, newline terminated.
std::string format_bills(const std::vector<BillRecord>& bills);

}  // namespace billnet
