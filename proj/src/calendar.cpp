#include "billnet/calendar.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>

#include "billnet/errors.hpp"

namespace billnet {

namespace {

bool parse_digits(std::string_view s, int& out) {
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace

std::string Date::to_iso() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day);
  return buf;
}

std::optional<Date> parse_iso_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  Date d;
  if (!parse_digits(text.substr(0, 4), d.year) || !parse_digits(text.substr(5, 2), d.month) ||
      !parse_digits(text.substr(8, 2), d.day)) {
    return std::nullopt;
  }
  const std::chrono::year_month_day ymd{std::chrono::year{d.year},
                                        std::chrono::month{static_cast<unsigned>(d.month)},
                                        std::chrono::day{static_cast<unsigned>(d.day)}};
  if (!ymd.ok()) return std::nullopt;
  return d;
}

Date congress_start(int congress) { return Date{2 * congress + 1787, 1, 3}; }

Date congress_end(int congress) { return Date{2 * congress + 1789, 1, 3}; }

bool date_in_congress(const Date& d, int congress) {
  return congress_start(congress) <= d && d <= congress_end(congress);
}

int congress_of_month(int year, int month) {
  (void)month;
  return (year % 2 != 0) ? (year - 1787) / 2 : (year - 1788) / 2;
}

MonthCalendar::MonthCalendar(int origin_year, int origin_month)
    : origin_year_(origin_year), origin_month_(origin_month) {
  if (origin_month < 1 || origin_month > 12) {
    throw ConfigError("calendar origin month out of range: " + std::to_string(origin_month));
  }
}

MonthCalendar MonthCalendar::starting_at_congress(int congress) {
  return MonthCalendar(congress_start(congress).year, 1);
}

int MonthCalendar::index_of(const Date& d) const { return index_of(d.year, d.month); }

int MonthCalendar::index_of(int year, int month) const {
  return (year - origin_year_) * 12 + (month - origin_month_) + 1;
}

int MonthCalendar::year_of(int t) const {
  const int zero_based = (origin_month_ - 1) + (t - 1);
  // floor division so months before the origin still map correctly
  return origin_year_ + (zero_based >= 0 ? zero_based / 12 : -((11 - zero_based) / 12));
}

int MonthCalendar::month_of(int t) const {
  const int zero_based = (origin_month_ - 1) + (t - 1);
  return ((zero_based % 12) + 12) % 12 + 1;
}

int MonthCalendar::congress_of(int t) const { return congress_of_month(year_of(t), month_of(t)); }

std::string MonthCalendar::label(int t) const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02d", year_of(t), month_of(t));
  return buf;
}

}  // namespace billnet
