#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace billnet {

struct Date {
  int year = 0;
  int month = 0;  // 1..12
  int day = 0;    // 1..31

  auto operator<=>(const Date&) const = default;

  std::string to_iso() const;
};

// Parses a strict ISO-8601 calendar date (YYYY-MM-DD). Returns nullopt for
// anything else, including impossible dates like 2011-02-30.
std::optional<Date> parse_iso_date(std::string_view text);

// A Congress convenes on January 3 of odd years; Congress c covers
// [Jan 3 of 2c+1787, Jan 3 of 2c+1789].
Date congress_start(int congress);
Date congress_end(int congress);
bool date_in_congress(const Date& d, int congress);

// Congress in session during a calendar month, assigning all of January
// of an odd year to the newly convened Congress.
int congress_of_month(int year, int month);

// Maps calendar months to the 1-based month index t used by the tensors.
// t = 1 is the origin month.
class MonthCalendar {
 public:
  MonthCalendar() = default;
  MonthCalendar(int origin_year, int origin_month);

  // January of the year in which `congress` convenes.
  static MonthCalendar starting_at_congress(int congress);

  int index_of(const Date& d) const;
  int index_of(int year, int month) const;

  int year_of(int t) const;
  int month_of(int t) const;
  int congress_of(int t) const;
  // "YYYY-MM" label of month t.
  std::string label(int t) const;

  int origin_year() const { return origin_year_; }
  int origin_month() const { return origin_month_; }

 private:
  int origin_year_ = 2009;
  int origin_month_ = 1;
};

}  // namespace billnet
