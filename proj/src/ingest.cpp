#include "billnet/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "billnet/errors.hpp"

namespace billnet {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

void sort_unique(std::vector<std::string>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

using nlohmann::json;

const json& require(const json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) {
    throw DataError(std::string("missing field '") + key + "'");
  }
  return *it;
}

std::string require_string(const json& obj, const char* key) {
  const json& v = require(obj, key);
  if (!v.is_string()) throw DataError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

bool require_bool(const json& obj, const char* key) {
  const json& v = require(obj, key);
  if (!v.is_boolean()) throw DataError(std::string("field '") + key + "' must be a boolean");
  return v.get<bool>();
}

Date require_date(const json& obj, const char* key) {
  const auto text = require_string(obj, key);
  const auto d = parse_iso_date(text);
  if (!d) throw DataError(std::string("field '") + key + "' is not an ISO-8601 date: " + text);
  return *d;
}

BillRecord bill_from_json(const json& obj) {
  if (!obj.is_object()) throw DataError("record is not a JSON object");
  BillRecord b;
  b.bill_id = require_string(obj, "bill_id");
  if (b.bill_id.empty()) throw DataError("empty bill_id");

  const json& congress = require(obj, "congress");
  if (!congress.is_number_integer()) throw DataError("field 'congress' must be an integer");
  b.congress = congress.get<int>();
  if (b.congress < 1) throw DataError("congress must be positive");

  const auto chamber = parse_chamber(require_string(obj, "chamber"));
  if (!chamber) throw DataError("unknown chamber");
  b.chamber = *chamber;
  const auto type = parse_bill_type(require_string(obj, "bill_type"));
  if (!type) throw DataError("unknown bill_type");
  b.bill_type = *type;

  b.introduced_date = require_date(obj, "introduced_date");
  if (!date_in_congress(b.introduced_date, b.congress)) {
    throw DataError("introduced_date " + b.introduced_date.to_iso() + " outside Congress " +
                    std::to_string(b.congress));
  }

  b.sponsor_id = require_string(obj, "sponsor_id");
  if (b.sponsor_id.empty()) throw DataError("empty sponsor_id");

  const json& cos = require(obj, "cosponsor_ids");
  if (!cos.is_array()) throw DataError("field 'cosponsor_ids' must be an array");
  for (const auto& c : cos) {
    if (!c.is_string() || c.get<std::string>().empty()) {
      throw DataError("cosponsor_ids entries must be non-empty strings");
    }
    b.cosponsor_ids.push_back(c.get<std::string>());
  }
  sort_unique(b.cosponsor_ids);

  b.passed_house = require_bool(obj, "passed_house");
  if (const auto it = obj.find("passed_house_date"); it != obj.end() && !it->is_null()) {
    b.passed_house_date = require_date(obj, "passed_house_date");
    if (!b.passed_house) throw DataError("passed_house_date present but passed_house is false");
  }
  b.enacted = require_bool(obj, "enacted");
  return b;
}

}  // namespace

std::string_view to_string(Chamber c) { return c == Chamber::House ? "House" : "Senate"; }

std::string_view to_string(BillType t) {
  switch (t) {
    case BillType::Bill: return "Bill";
    case BillType::SimpleResolution: return "SimpleResolution";
    case BillType::ConcurrentResolution: return "ConcurrentResolution";
    case BillType::JointResolution: return "JointResolution";
  }
  return "Bill";
}

std::string_view to_string(Party p) {
  switch (p) {
    case Party::Democrat: return "Democrat";
    case Party::Republican: return "Republican";
    case Party::Other: return "Other";
  }
  return "Other";
}

std::optional<Chamber> parse_chamber(std::string_view s) {
  const auto v = lower(trim(s));
  if (v == "house" || v == "h") return Chamber::House;
  if (v == "senate" || v == "s") return Chamber::Senate;
  return std::nullopt;
}

std::optional<BillType> parse_bill_type(std::string_view s) {
  const auto v = lower(trim(s));
  if (v == "bill" || v == "hr" || v == "s") return BillType::Bill;
  if (v == "simpleresolution" || v == "hres" || v == "sres") return BillType::SimpleResolution;
  if (v == "concurrentresolution" || v == "hconres" || v == "sconres") {
    return BillType::ConcurrentResolution;
  }
  if (v == "jointresolution" || v == "hjres" || v == "sjres") return BillType::JointResolution;
  return std::nullopt;
}

std::optional<Party> parse_party(std::string_view s) {
  const auto v = lower(trim(s));
  if (v == "democrat" || v == "d" || v == "democratic") return Party::Democrat;
  if (v == "republican" || v == "r") return Party::Republican;
  if (v == "other" || v == "i" || v == "independent" || v == "id" || v == "l") return Party::Other;
  return std::nullopt;
}

std::vector<std::string> BillRecord::participants() const {
  std::vector<std::string> out = cosponsor_ids;
  if (!sponsor_id.empty()) out.push_back(sponsor_id);
  sort_unique(out);
  return out;
}

ParsedBills parse_bills(std::istream& in) {
  ParsedBills result;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      const json obj = json::parse(line);
      BillRecord b = bill_from_json(obj);
      if (!seen.insert(b.bill_id).second) throw DataError("duplicate bill_id " + b.bill_id);
      result.bills.push_back(std::move(b));
    } catch (const json::exception& e) {
      result.issues.push_back({line_no, std::string("malformed JSON: ") + e.what()});
    } catch (const DataError& e) {
      result.issues.push_back({line_no, e.what()});
    }
  }
  return result;
}

std::string to_json_line(const BillRecord& b) {
  nlohmann::ordered_json obj;
  obj["bill_id"] = b.bill_id;
  obj["congress"] = b.congress;
  obj["chamber"] = to_string(b.chamber);
  obj["bill_type"] = to_string(b.bill_type);
  obj["introduced_date"] = b.introduced_date.to_iso();
  obj["sponsor_id"] = b.sponsor_id;
  obj["cosponsor_ids"] = b.cosponsor_ids;
  obj["passed_house"] = b.passed_house;
  if (b.passed_house_date) obj["passed_house_date"] = b.passed_house_date->to_iso();
  obj["enacted"] = b.enacted;
  return obj.dump();
}

std::vector<BillRecord> filter_bills(std::span<const BillRecord> bills, Chamber chamber) {
  std::vector<BillRecord> out;
  for (const auto& b : bills) {
    if (b.bill_type == BillType::Bill && b.chamber == chamber) out.push_back(b);
  }
  return out;
}

// ---- roster ---------------------------------------------------------------

RosterSource parse_roster(std::istream& in) {
  RosterSource src;
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& msg) {
    throw DataError("roster line " + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto fields = split(body, ',');
    const auto kind = lower(fields[0]);
    if (kind == "member") {
      if (fields.size() != 5) fail("member rows need 5 fields");
      RosterEntry e;
      e.canonical_id = std::string(fields[1]);
      if (e.canonical_id.empty()) fail("empty canonical_id");
      try {
        std::size_t used = 0;
        e.congress = std::stoi(std::string(fields[2]), &used);
        if (used != fields[2].size() || e.congress < 1) fail("bad congress");
      } catch (const std::logic_error&) {
        fail("bad congress");
      }
      const auto chamber = parse_chamber(fields[3]);
      if (!chamber) fail("unknown chamber '" + std::string(fields[3]) + "'");
      e.chamber = *chamber;
      const auto party = parse_party(fields[4]);
      if (!party) fail("unknown party '" + std::string(fields[4]) + "'");
      e.party = *party;
      src.members.push_back(std::move(e));
    } else if (kind == "alias") {
      if (fields.size() != 3) fail("alias rows need 3 fields");
      if (fields[1].empty() || fields[2].empty()) fail("empty alias field");
      src.aliases.push_back({std::string(fields[1]), std::string(fields[2])});
    } else {
      fail("unknown record kind '" + std::string(fields[0]) + "'");
    }
  }
  return src;
}

std::string format_roster(const RosterSource& source) {
  std::ostringstream out;
  out << "# member,canonical_id,congress,chamber,party\n";
  out << "# alias,alias_id,canonical_id\n";
  for (const auto& m : source.members) {
    out << "member," << m.canonical_id << ',' << m.congress << ',' << to_string(m.chamber) << ','
        << to_string(m.party) << '\n';
  }
  for (const auto& a : source.aliases) out << "alias," << a.alias_id << ',' << a.canonical_id << '\n';
  return out.str();
}

void LegislatorRoster::add(const RosterEntry& entry) {
  auto& per_congress = entries_[entry.canonical_id];
  const Membership m{entry.chamber, entry.party};
  const auto [it, inserted] = per_congress.emplace(entry.congress, m);
  if (!inserted && !(it->second == m)) {
    throw DataError("conflicting roster entries for " + entry.canonical_id + " in Congress " +
                    std::to_string(entry.congress));
  }
}

bool LegislatorRoster::contains(std::string_view id) const { return entries_.find(id) != entries_.end(); }

std::vector<std::string> LegislatorRoster::canonical_ids() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& [id, _] : entries_) out.push_back(id);
  return out;
}

const std::map<int, LegislatorRoster::Membership>* LegislatorRoster::memberships(
    std::string_view id) const {
  const auto it = entries_.find(id);
  return it == entries_.end() ? nullptr : &it->second;
}

std::optional<LegislatorRoster::Membership> LegislatorRoster::membership(std::string_view id,
                                                                         int congress) const {
  const auto* m = memberships(id);
  if (!m) return std::nullopt;
  const auto it = m->find(congress);
  if (it == m->end()) return std::nullopt;
  return it->second;
}

Party LegislatorRoster::party_as_of(std::string_view id, int congress) const {
  const auto* m = memberships(id);
  if (!m || m->empty()) return Party::Other;
  auto it = m->upper_bound(congress);
  if (it != m->begin()) return std::prev(it)->second.party;
  return it->second.party;
}

PartySizes LegislatorRoster::party_sizes(int congress, Chamber chamber) const {
  PartySizes sizes;
  for (const auto& [id, per_congress] : entries_) {
    const auto it = per_congress.find(congress);
    if (it == per_congress.end() || it->second.chamber != chamber) continue;
    switch (it->second.party) {
      case Party::Democrat: ++sizes.democrats; break;
      case Party::Republican: ++sizes.republicans; break;
      case Party::Other: ++sizes.other; break;
    }
  }
  return sizes;
}

bool LegislatorRoster::covers(int congress, Chamber chamber) const {
  const auto s = party_sizes(congress, chamber);
  return s.democrats + s.republicans + s.other > 0;
}

ReconcileResult reconcile_ids(std::vector<BillRecord> bills, std::span<const RosterSource> sources) {
  ReconcileResult result;
  std::unordered_map<std::string, std::string> alias_to;
  for (const auto& src : sources) {
    for (const auto& m : src.members) result.roster.add(m);
    for (const auto& a : src.aliases) {
      const auto [it, inserted] = alias_to.emplace(a.alias_id, a.canonical_id);
      if (!inserted && it->second != a.canonical_id) {
        throw DataError("alias " + a.alias_id + " maps to both " + it->second + " and " +
                        a.canonical_id);
      }
    }
  }

  std::unordered_map<std::string, std::optional<std::string>> cache;
  auto resolve = [&](const std::string& raw) -> std::optional<std::string> {
    if (const auto hit = cache.find(raw); hit != cache.end()) return hit->second;
    std::optional<std::string> found;
    std::string cur = raw;
    // alias chains are followed; a cycle or dangling target leaves the id unresolved
    for (std::size_t hops = 0; hops <= alias_to.size(); ++hops) {
      if (result.roster.contains(cur)) {
        found = cur;
        break;
      }
      const auto next = alias_to.find(cur);
      if (next == alias_to.end()) break;
      cur = next->second;
    }
    cache.emplace(raw, found);
    return found;
  };

  auto drop = [&](const std::string& raw) {
    ++result.unresolved[raw];
    ++result.dropped_participants;
  };

  for (auto& b : bills) {
    if (!b.sponsor_id.empty()) {
      if (auto id = resolve(b.sponsor_id)) {
        b.sponsor_id = std::move(*id);
      } else {
        drop(b.sponsor_id);
        b.sponsor_id.clear();
      }
    }
    std::vector<std::string> cos;
    cos.reserve(b.cosponsor_ids.size());
    for (const auto& c : b.cosponsor_ids) {
      if (auto id = resolve(c)) {
        cos.push_back(std::move(*id));
      } else {
        drop(c);
      }
    }
    sort_unique(cos);
    b.cosponsor_ids = std::move(cos);
  }
  result.bills = std::move(bills);
  return result;
}

// ---- summary --------------------------------------------------------------

std::vector<SummaryRow> summarize(std::span<const BillRecord> bills) {
  struct Acc {
    std::size_t n = 0, passed = 0, enacted = 0, participant_total = 0, max_participants = 0;
    std::map<std::string, std::size_t> per_legislator;
  };
  std::map<int, Acc> by_congress;
  for (const auto& b : bills) {
    auto& acc = by_congress[b.congress];
    const auto parts = b.participants();
    ++acc.n;
    acc.passed += b.passed_house ? 1 : 0;
    acc.enacted += b.enacted ? 1 : 0;
    acc.participant_total += parts.size();
    acc.max_participants = std::max(acc.max_participants, parts.size());
    for (const auto& p : parts) ++acc.per_legislator[p];
  }

  std::vector<SummaryRow> rows;
  for (const auto& [congress, acc] : by_congress) {
    SummaryRow row;
    row.congress = congress;
    row.n_bills = acc.n;
    const double n = static_cast<double>(acc.n);
    row.pct_passed_house = 100.0 * static_cast<double>(acc.passed) / n;
    row.pct_enacted = 100.0 * static_cast<double>(acc.enacted) / n;
    row.mean_cosponsors = static_cast<double>(acc.participant_total) / n;
    row.max_cosponsors = acc.max_participants;
    std::size_t total = 0;
    for (const auto& [_, count] : acc.per_legislator) {
      total += count;
      row.max_bills_per_cosponsor = std::max(row.max_bills_per_cosponsor, count);
    }
    if (!acc.per_legislator.empty()) {
      row.mean_bills_per_cosponsor =
          static_cast<double>(total) / static_cast<double>(acc.per_legislator.size());
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace billnet
