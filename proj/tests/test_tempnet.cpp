#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "billnet/errors.hpp"
#include "billnet/tempnet.hpp"

using namespace billnet;

namespace {

IndexedBill ib(int month, std::vector<LegislatorIndex> who, bool passed) {
  return IndexedBill{"b", month, std::move(who), passed};
}

// Dense per-month counts built straight from the bill list.
using Dense = std::vector<std::vector<std::vector<double>>>;  // [t][i][j]

Dense dense_counts(const std::vector<IndexedBill>& bills, int horizon, int n, bool pass_only) {
  Dense a(horizon + 1, std::vector<std::vector<double>>(n, std::vector<double>(n, 0.0)));
  for (const auto& b : bills) {
    if (pass_only && !b.passed) continue;
    for (auto i : b.participants) {
      for (auto j : b.participants) {
        if (i != j) a[b.month][i][j] += 1.0;
      }
    }
  }
  return a;
}

// C[t] = sum_{n <= t} e^{k (t - n)} A[n]
double closed_form(const Dense& a, double k, int t, int i, int j) {
  double s = 0.0;
  for (int n = 1; n <= t; ++n) s += std::exp(k * (t - n)) * a[n][i][j];
  return s;
}

std::vector<IndexedBill> random_bills(std::mt19937_64& gen, int n, int horizon, int count) {
  std::uniform_int_distribution<int> month(1, horizon), size(0, std::min(n, 5));
  std::bernoulli_distribution pass(0.4);
  std::vector<IndexedBill> bills;
  for (int b = 0; b < count; ++b) {
    std::vector<LegislatorIndex> all(n);
    for (int i = 0; i < n; ++i) all[i] = static_cast<LegislatorIndex>(i);
    std::shuffle(all.begin(), all.end(), gen);
    all.resize(size(gen));
    std::sort(all.begin(), all.end());
    bills.push_back(ib(month(gen), all, pass(gen)));
  }
  return bills;
}

}  // namespace

TEST_CASE("pair expansion of one bill") {
  const std::vector<IndexedBill> passed{ib(1, {0, 1, 2}, true)};
  auto m = build_monthly(passed, 1);
  REQUIRE(m.horizon() == 1);
  CHECK(m.pass[0].pairs().size() == 3);
  CHECK(m.pass[0].at(0, 1) == 1);
  CHECK(m.pass[0].at(2, 0) == 1);
  CHECK(m.pass[0].at(1, 1) == 0);

  const std::vector<IndexedBill> failed{ib(1, {0, 1, 2}, false)};
  m = build_monthly(failed, 1);
  CHECK(m.pass[0].pairs().empty());
  CHECK(m.tot[0].pairs().size() == 3);
}

TEST_CASE("two bills sharing a pair in one month") {
  const std::vector<IndexedBill> bills{ib(2, {0, 1}, true), ib(2, {0, 1, 3}, false), ib(1, {5}, true)};
  const auto m = build_monthly(bills, 2);
  CHECK(m.tot[1].at(0, 1) == 2);
  CHECK(m.pass[1].at(1, 0) == 1);
  CHECK(m.tot[0].pairs().empty());  // a lone participant makes no pairs
  CHECK(m.tot[1].month() == 2);
}

TEST_CASE("decay rate") {
  CHECK_THROWS_AS(DecayRate::from_half_life(0.0), ConfigError);
  CHECK_THROWS_AS(DecayRate::from_half_life(-3.0), ConfigError);
  CHECK_THROWS_AS(DecayRate::from_half_life(INFINITY), ConfigError);
  CHECK_THROWS_AS(DecayRate::from_half_life(NAN), ConfigError);
  for (double h : {1.0, 6.0, 12.0, 24.0, 7.5}) {
    const auto r = DecayRate::from_half_life(h);
    CHECK(r.k() < 0.0);
    CHECK(std::abs(r.weight_after(h) - 0.5) <= 1e-12);
  }
  // longer half-life, slower decay
  for (double d : {0.5, 1.0, 5.0, 40.0}) {
    CHECK(DecayRate::from_half_life(6).weight_after(d) < DecayRate::from_half_life(12).weight_after(d));
    CHECK(DecayRate::from_half_life(12).weight_after(d) < DecayRate::from_half_life(24).weight_after(d));
  }
}

TEST_CASE("single passed event halves after one half-life") {
  const std::vector<IndexedBill> bills{ib(1, {0, 1}, true)};
  const auto c = decay_accumulate(build_monthly(bills, 7), DecayRate::from_half_life(6));
  CHECK(c.pass(7, 0, 1) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(c.tot(7, 1, 0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(c.pass(1, 0, 1) == 1.0);
}

TEST_CASE("three unit months follow the worked expansion") {
  const std::vector<IndexedBill> bills{ib(1, {0, 1}, false), ib(2, {0, 1}, false), ib(3, {0, 1}, false)};
  const auto rate = DecayRate::from_half_life(9);
  const auto c = decay_accumulate(build_monthly(bills, 3), rate);
  const double k = rate.k();
  CHECK(c.tot(3, 0, 1) == doctest::Approx(std::exp(2 * k) + std::exp(k) + 1.0).epsilon(1e-12));
}

TEST_CASE("all-zero input gives all-zero output") {
  const auto c = decay_accumulate(build_monthly({}, 5), DecayRate::from_half_life(6));
  REQUIRE(c.horizon() == 5);
  for (int t = 1; t <= 5; ++t) CHECK(c.at_month(t).empty());
}

TEST_CASE("recurrence matches closed form on random sequences") {
  std::mt19937_64 gen(20240601);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(gen() % 9);
    const int horizon = 1 + static_cast<int>(gen() % 24);
    const auto bills = random_bills(gen, n, horizon, static_cast<int>(gen() % 15));
    const auto rate = DecayRate::from_half_life(1.0 + static_cast<double>(gen() % 240) / 10.0);
    const auto c = decay_accumulate(build_monthly(bills, horizon), rate);
    const auto ap = dense_counts(bills, horizon, n, true);
    const auto at = dense_counts(bills, horizon, n, false);
    for (int t = 1; t <= horizon; ++t) {
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          const double ep = closed_form(ap, rate.k(), t, i, j);
          const double et = closed_form(at, rate.k(), t, i, j);
          const double gp = c.pass(t, i, j), gt = c.tot(t, i, j);
          CHECK(std::abs(gp - ep) <= 1e-9 * std::max(1.0, std::abs(ep)));
          CHECK(std::abs(gt - et) <= 1e-9 * std::max(1.0, std::abs(et)));
          CHECK(gp == c.pass(t, j, i));
          CHECK(gp <= gt);
        }
      }
    }
  }
}

TEST_CASE("translation covariance") {
  std::mt19937_64 gen(7);
  const auto bills = random_bills(gen, 6, 10, 12);
  auto shifted = bills;
  for (auto& b : shifted) b.month += 5;
  const auto rate = DecayRate::from_half_life(6);
  const auto c = decay_accumulate(build_monthly(bills, 10), rate);
  const auto s = decay_accumulate(build_monthly(shifted, 15), rate);
  for (int t = 1; t <= 5; ++t) CHECK(s.at_month(t).empty());
  for (int t = 1; t <= 10; ++t) {
    const auto a = c.at_month(t);
    const auto b = s.at_month(t + 5);
    REQUIRE(a.size() == b.size());
    for (std::size_t e = 0; e < a.size(); ++e) {
      CHECK(a[e].i == b[e].i);
      CHECK(a[e].j == b[e].j);
      CHECK(a[e].pass == b[e].pass);
      CHECK(a[e].tot == b[e].tot);
    }
  }
}

TEST_CASE("adding a bill never decreases any entry") {
  std::mt19937_64 gen(11);
  auto bills = random_bills(gen, 6, 12, 10);
  const auto rate = DecayRate::from_half_life(6);
  const auto before = decay_accumulate(build_monthly(bills, 12), rate);
  bills.push_back(ib(4, {0, 2, 5}, true));
  const auto after = decay_accumulate(build_monthly(bills, 12), rate);
  for (int t = 1; t <= 12; ++t) {
    for (LegislatorIndex i = 0; i < 6; ++i) {
      for (LegislatorIndex j = i + 1; j < 6; ++j) {
        CHECK(after.pass(t, i, j) >= before.pass(t, i, j));
        CHECK(after.tot(t, i, j) >= before.tot(t, i, j));
      }
    }
  }
  CHECK(after.tot(4, 0, 5) > before.tot(4, 0, 5));
}

TEST_CASE("per-Congress reset zeroes the state") {
  const std::vector<IndexedBill> bills{ib(1, {0, 1}, true), ib(3, {1, 2}, false)};
  const auto rate = DecayRate::from_half_life(6);
  const auto c = decay_accumulate(build_monthly(bills, 4), rate, [](int t) { return t == 3; });
  CHECK(c.pass(2, 0, 1) > 0.0);
  CHECK(c.pass(3, 0, 1) == 0.0);
  CHECK(c.tot(4, 1, 2) == doctest::Approx(rate.weight_after(1)));
}

TEST_CASE("accumulator rejects inconsistent input") {
  DecayAccumulator acc(DecayRate::from_half_life(6));
  const MonthlyCooccurrence empty1(1, {});
  acc.advance(empty1, empty1);
  CHECK(acc.month() == 1);
  const MonthlyCooccurrence skip(3, {});
  CHECK_THROWS_AS(acc.advance(skip, skip), ConfigError);

  DecayAccumulator acc2(DecayRate::from_half_life(6));
  const MonthlyCooccurrence pass(1, {{0, 1, 2}});
  const MonthlyCooccurrence tot(1, {{0, 1, 1}});
  CHECK_THROWS_AS(acc2.advance(pass, tot), ConfigError);

  DecayAccumulator acc3(DecayRate::from_half_life(6));
  const MonthlyCooccurrence orphan(1, {{0, 2, 1}});
  CHECK_THROWS_AS(acc3.advance(orphan, MonthlyCooccurrence(1, {{0, 1, 1}})), ConfigError);

  MonthlyTensors gap;
  gap.pass = {MonthlyCooccurrence(1, {}), MonthlyCooccurrence(3, {})};
  gap.tot = gap.pass;
  CHECK_THROWS_AS(check_contiguous(gap), ConfigError);
  CHECK_THROWS_AS(decay_accumulate(gap, DecayRate::from_half_life(6)), ConfigError);
}

TEST_CASE("index_bills assigns months and ordered indices") {
  BillRecord a;
  a.bill_id = "hr1";
  a.congress = 112;
  a.introduced_date = {2011, 2, 10};
  a.sponsor_id = "Z";
  a.cosponsor_ids = {"M"};
  a.passed_house = true;
  BillRecord b = a;
  b.bill_id = "hr2";
  b.congress = 111;
  b.introduced_date = {2009, 1, 20};
  b.sponsor_id = "A";
  b.cosponsor_ids = {};

  LegislatorRoster roster;
  roster.add({"K", 111, Chamber::House, Party::Democrat});
  const std::vector<BillRecord> bills{a, b};
  const auto idx = index_bills(bills, &roster);
  CHECK(idx.calendar.origin_year() == 2009);
  CHECK(idx.horizon == 26);
  REQUIRE(idx.legislators.size() == 4);
  CHECK(idx.legislators.id(0) == "A");
  CHECK(idx.legislators.id(3) == "Z");
  CHECK(*idx.legislators.find("K") == 1);
  REQUIRE(idx.bills.size() == 2);
  CHECK(idx.bills[0].month == 26);
  CHECK(idx.bills[0].participants == std::vector<LegislatorIndex>{2, 3});
  CHECK(idx.bills[1].month == 1);

  CHECK_THROWS_AS(index_bills(bills, nullptr, MonthCalendar(2010, 1)), ConfigError);
}
