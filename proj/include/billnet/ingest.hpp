#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "billnet/calendar.hpp"

namespace billnet {

enum class Chamber { House, Senate };
enum class BillType { Bill, SimpleResolution, ConcurrentResolution, JointResolution };
enum class Party { Democrat, Republican, Other };

std::string_view to_string(Chamber c);
std::string_view to_string(BillType t);
std::string_view to_string(Party p);

// Accepts the canonical spellings above ("House", "Bill", "Democrat", ...)
// plus common short forms ("H", "hr", "D", ...). Case-insensitive.
std::optional<Chamber> parse_chamber(std::string_view s);
std::optional<BillType> parse_bill_type(std::string_view s);
std::optional<Party> parse_party(std::string_view s);

struct BillRecord {
  std::string bill_id;
  int congress = 0;
  Chamber chamber = Chamber::House;
  BillType bill_type = BillType::Bill;
  Date introduced_date;
  std::string sponsor_id;                  // empty if the sponsor could not be resolved
  std::vector<std::string> cosponsor_ids;  // sorted, unique
  bool passed_house = false;
  std::optional<Date> passed_house_date;
  bool enacted = false;

  // Sponsor and cosponsors merged into one sorted, duplicate-free set.
  std::vector<std::string> participants() const;
};

struct ParseIssue {
  std::size_t line = 0;  // 1-based
  std::string message;
};

struct ParsedBills {
  std::vector<BillRecord> bills;
  std::vector<ParseIssue> issues;
};

// Reads line-delimited JSON bill records. Bad records are reported in
// `issues` with their line number and skipped; blank lines are ignored.
ParsedBills parse_bills(std::istream& in);

// One JSON object, no trailing newline. parse_bills(to_json_line(b)) == b.
std::string to_json_line(const BillRecord& bill);

// Keeps bill_type == Bill in the given chamber, order preserved.
std::vector<BillRecord> filter_bills(std::span<const BillRecord> bills, Chamber chamber);

// ---- roster ---------------------------------------------------------------

struct RosterEntry {
  std::string canonical_id;
  int congress = 0;
  Chamber chamber = Chamber::House;
  Party party = Party::Other;
};

struct AliasRecord {
  std::string alias_id;
  std::string canonical_id;
};

// One raw roster file: member rows plus alias rows.
struct RosterSource {
  std::vector<RosterEntry> members;
  std::vector<AliasRecord> aliases;
};

// Comma-separated lines, '#' comments allowed:
//   member,<canonical_id>,<congress>,<chamber>,<party>
//   alias,<alias_id>,<canonical_id>
// Throws DataError naming the offending line.
RosterSource parse_roster(std::istream& in);
std::string format_roster(const RosterSource& source);

struct PartySizes {
  int democrats = 0;
  int republicans = 0;
  int other = 0;
};

class LegislatorRoster {
 public:
  struct Membership {
    Chamber chamber = Chamber::House;
    Party party = Party::Other;
    bool operator==(const Membership&) const = default;
  };

  // Identical duplicates are ignored; a conflicting second entry for the
  // same (canonical_id, congress) throws DataError.
  void add(const RosterEntry& entry);

  bool contains(std::string_view id) const;
  std::size_t size() const { return entries_.size(); }
  std::vector<std::string> canonical_ids() const;

  const std::map<int, Membership>* memberships(std::string_view id) const;
  std::optional<Membership> membership(std::string_view id, int congress) const;

  // Party in `congress`; otherwise the most recent earlier Congress;
  // otherwise the earliest later one; Other if the id is unknown.
  Party party_as_of(std::string_view id, int congress) const;

  PartySizes party_sizes(int congress, Chamber chamber) const;
  bool covers(int congress, Chamber chamber) const;

 private:
  std::map<std::string, std::map<int, Membership>, std::less<>> entries_;
};

struct ReconcileResult {
  std::vector<BillRecord> bills;
  LegislatorRoster roster;
  std::map<std::string, std::size_t> unresolved;  // raw id -> occurrences dropped
  std::size_t dropped_participants = 0;
};

// Rewrites every sponsor/cosponsor id to its canonical id. Ids that no
// source can resolve are dropped from the bill and counted in `unresolved`.
ReconcileResult reconcile_ids(std::vector<BillRecord> bills, std::span<const RosterSource> sources);

// ---- summary --------------------------------------------------------------

struct SummaryRow {
  int congress = 0;
  std::size_t n_bills = 0;
  double pct_passed_house = 0.0;
  double pct_enacted = 0.0;
  double mean_cosponsors = 0.0;
  std::size_t max_cosponsors = 0;
  double mean_bills_per_cosponsor = 0.0;
  std::size_t max_bills_per_cosponsor = 0;
};

// Per-Congress statistics; "cosponsor" counts the sponsor too.
std::vector<SummaryRow> summarize(std::span<const BillRecord> bills);

}  // namespace billnet
