#include <doctest.h>

#include <cmath>

#include "errors.hpp"
#include "estimators.hpp"
#include "fixtures.hpp"
#include "rng.hpp"

using namespace svbench;
using namespace svbench::testing;

namespace {

const std::vector<FrameKind> kOneFrame{{"panel", FrameCategory::nonprobability, true}};

SurveyDataset vote_fixture(int rep, int dem, int other, int none = 0, int missing = 0) {
  std::vector<TinyRecordSpec> rows;
  int id = 0;
  auto add = [&](HouseVote v, int count) {
    for (int i = 0; i < count; ++i)
      rows.push_back({.id = "r" + std::to_string(++id), .frame_label = "panel", .vote = v});
  };
  add(HouseVote::rep, rep);
  add(HouseVote::dem, dem);
  add(HouseVote::other, other);
  add(HouseVote::none, none);
  add(HouseVote::missing, missing);
  return make_dataset(kOneFrame, rows);
}

SurveyDataset internet_fixture(int paid, int unpaid, int none, int missing = 0) {
  std::vector<TinyRecordSpec> rows;
  int id = 0;
  auto add = [&](Internet v, int count) {
    for (int i = 0; i < count; ++i)
      rows.push_back({.id = "r" + std::to_string(++id), .frame_label = "panel", .internet = v});
  };
  add(Internet::paid, paid);
  add(Internet::unpaid, unpaid);
  add(Internet::none, none);
  add(Internet::missing, missing);
  return make_dataset(kOneFrame, rows);
}

bool same_estimate(const EstimateWithCI& a, const EstimateWithCI& b) {
  return a.point == b.point && a.ci_low == b.ci_low && a.ci_high == b.ci_high &&
         a.n_used == b.n_used && a.effective_n == b.effective_n;
}

}  // namespace

TEST_CASE("weighted proportion with uniform weights matches the hand formula") {
  std::vector<TinyRecordSpec> rows;
  for (int i = 0; i < 1000; ++i)
    rows.push_back({.id = "r" + std::to_string(i),
                    .frame_label = "panel",
                    .vote = i < 400 ? HouseVote::rep : HouseVote::dem});
  auto ds = make_dataset(kOneFrame, rows);

  auto is_rep = [](const RespondentRecord& r) { return r.vote_house == HouseVote::rep; };
  auto all = [](const RespondentRecord&) { return true; };
  auto e = weighted_proportion(ds, {}, is_rep, all);
  CHECK(e.point == doctest::Approx(0.400).epsilon(1e-12));
  CHECK(e.n_used == 1000);
  CHECK(e.effective_n == doctest::Approx(1000.0));
  const double half = (e.ci_high - e.ci_low) / 2.0;
  CHECK(half == doctest::Approx(1.96 * std::sqrt(0.4 * 0.6 / 1000.0)).epsilon(1e-12));
  CHECK(half == doctest::Approx(0.0304).epsilon(2e-3));

  SUBCASE("doubling all weights changes nothing") {
    std::vector<double> w2(ds.size(), 2.0);
    auto doubled = weighted_proportion(ds, w2, is_rep, all);
    CHECK(doubled.point == e.point);
    CHECK(doubled.ci_low == e.ci_low);
    CHECK(doubled.ci_high == e.ci_high);
    CHECK(doubled.effective_n == e.effective_n);
  }

  SUBCASE("explicit unit weights equal the unweighted path") {
    std::vector<double> w1(ds.size(), 1.0);
    auto weighted = weighted_proportion(ds, w1, is_rep, all);
    CHECK(weighted.point == e.point);
    CHECK(weighted.ci_low == e.ci_low);
    CHECK(weighted.ci_high == e.ci_high);
  }

  SUBCASE("an all-true indicator has a degenerate interval") {
    auto one = weighted_proportion(ds, {}, all, all);
    CHECK(one.point == 1.0);
    CHECK(one.ci_low == 1.0);
    CHECK(one.ci_high == 1.0);
  }

  SUBCASE("empty denominator is an error") {
    auto nobody = [](const RespondentRecord&) { return false; };
    try {
      weighted_proportion(ds, {}, is_rep, nobody);
      FAIL("expected EmptyDenominator");
    } catch (const Error& e2) {
      CHECK(e2.code() == ErrorCode::empty_denominator);
    }
  }
}

TEST_CASE("weighted proportion agrees with a brute-force sum on random fixtures") {
  auto rng = make_stream(2024);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 5 + uniform_below(rng, 40);
    std::vector<TinyRecordSpec> rows;
    std::vector<double> weights(n);
    for (std::size_t i = 0; i < n; ++i) {
      rows.push_back({.id = "r" + std::to_string(i),
                      .frame_label = "panel",
                      .vote = uniform_below(rng, 2) ? HouseVote::rep : HouseVote::dem});
      weights[i] = 0.25 + uniform_double(rng) * 3.0;
    }
    auto ds = make_dataset(kOneFrame, rows);
    auto e = weighted_proportion(
        ds, weights, [](const RespondentRecord& r) { return r.vote_house == HouseVote::rep; },
        [](const RespondentRecord&) { return true; });
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      den += weights[i];
      if (ds[i].vote_house == HouseVote::rep) num += weights[i];
    }
    CHECK(e.point == doctest::Approx(num / den).epsilon(1e-14));
  }
}

TEST_CASE("interval width shrinks with sample size") {
  auto width = [](int n_total) {
    std::vector<TinyRecordSpec> rows;
    for (int i = 0; i < n_total; ++i)
      rows.push_back({.id = "r" + std::to_string(i),
                      .frame_label = "panel",
                      .vote = i % 4 == 0 ? HouseVote::rep : HouseVote::dem});
    auto ds = make_dataset(kOneFrame, rows);
    auto e = two_party_share(ds);
    return e.ci_high - e.ci_low;
  };
  CHECK(width(400) > width(1600));
}

TEST_CASE("two-party share is the Republican percent of the two-party vote") {
  SUBCASE("60/40/20 fixture is exactly 60 percent") {
    auto ds = vote_fixture(60, 40, 20);
    auto e = two_party_share(ds);
    CHECK(e.point == 60.0);
    CHECK(e.n_used == 100);
  }
  SUBCASE("unanimous sample") {
    auto e = two_party_share(vote_fixture(25, 0, 0));
    CHECK(e.point == 100.0);
  }
  SUBCASE("other, none and missing responses never move the estimate") {
    auto base = two_party_share(vote_fixture(60, 40, 0));
    auto noisy = two_party_share(vote_fixture(60, 40, 17, 9, 4));
    CHECK(same_estimate(base, noisy));
  }
  SUBCASE("no two-party responses at all") {
    try {
      two_party_share(vote_fixture(0, 0, 10));
      FAIL("expected EmptyDenominator");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::empty_denominator);
    }
  }
}

TEST_CASE("likely-voter screen follows the turnout/interest rule") {
  LikelyVoterRule rule;
  CHECK(rule.passes(TurnoutIntent::already_voted, Interest::not_at_all));
  CHECK(rule.passes(TurnoutIntent::certain, Interest::only_a_little));
  CHECK(rule.passes(TurnoutIntent::probably, Interest::very));
  CHECK(rule.passes(TurnoutIntent::probably, Interest::extremely));
  CHECK(!rule.passes(TurnoutIntent::probably, Interest::somewhat));
  CHECK(!rule.passes(TurnoutIntent::will_not_vote, Interest::extremely));
  CHECK(!rule.passes(TurnoutIntent::chances_50_50, Interest::extremely));
  CHECK(!rule.passes(TurnoutIntent::missing, Interest::very));
  CHECK(!rule.passes(TurnoutIntent::already_voted, Interest::missing));

  auto ds = make_dataset(
      kOneFrame,
      {{.id = "in1", .frame_label = "panel", .turnout = TurnoutIntent::already_voted,
        .interest = Interest::not_at_all},
       {.id = "out1", .frame_label = "panel", .turnout = TurnoutIntent::probably,
        .interest = Interest::somewhat},
       {.id = "out2", .frame_label = "panel", .turnout = TurnoutIntent::will_not_vote,
        .interest = Interest::extremely},
       {.id = "in2", .frame_label = "panel", .turnout = TurnoutIntent::certain,
        .interest = Interest::somewhat}});
  SurveyDataset lv = ds.filter(likely_voters());
  REQUIRE(lv.size() == 2);
  CHECK(lv[0].respondent_id == "in1");
  CHECK(lv[1].respondent_id == "in2");
}

TEST_CASE("births total scales the weighted mean to the eligible population") {
  std::vector<TinyRecordSpec> rows;
  const int counts[] = {0, 1, 2, 0, 1};
  for (int i = 0; i < 5; ++i)
    rows.push_back({.id = "w" + std::to_string(i), .frame_label = "panel", .age = 30,
                    .gender = Gender::woman, .births = counts[i]});
  // Outside the asked population: a man, an older woman, a woman with a
  // missing answer.
  rows.push_back({.id = "m1", .frame_label = "panel", .age = 30, .gender = Gender::man});
  rows.push_back({.id = "w70", .frame_label = "panel", .age = 70, .gender = Gender::woman});
  rows.push_back({.id = "wmiss", .frame_label = "panel", .age = 40, .gender = Gender::woman});
  auto ds = make_dataset(kOneFrame, rows);

  auto e = births_total(ds, {}, 1000000.0);
  CHECK(e.point == 800000.0);
  CHECK(e.n_used == 5);

  SUBCASE("linear in the population count") {
    auto twice = births_total(ds, {}, 2000000.0);
    CHECK(twice.point == 2.0 * e.point);
    CHECK(twice.ci_high - twice.ci_low == doctest::Approx(2.0 * (e.ci_high - e.ci_low)));
  }
  SUBCASE("all-zero births collapse to zero") {
    std::vector<TinyRecordSpec> zero_rows;
    for (int i = 0; i < 4; ++i)
      zero_rows.push_back({.id = "z" + std::to_string(i), .frame_label = "panel", .age = 25,
                           .gender = Gender::woman, .births = 0});
    auto zeros = births_total(make_dataset(kOneFrame, zero_rows), {}, 500000.0);
    CHECK(zeros.point == 0.0);
    CHECK(zeros.ci_low == 0.0);
    CHECK(zeros.ci_high == 0.0);
  }
  SUBCASE("no eligible respondents") {
    std::vector<TinyRecordSpec> men{{.id = "m", .frame_label = "panel", .gender = Gender::man}};
    try {
      births_total(make_dataset(kOneFrame, men), {}, 1000.0);
      FAIL("expected NoEligibleRespondents");
    } catch (const Error& err) {
      CHECK(err.code() == ErrorCode::no_eligible_respondents);
    }
  }
  SUBCASE("population count must be positive") {
    try {
      births_total(ds, {}, 0.0);
      FAIL("expected BadArgument");
    } catch (const Error& err) {
      CHECK(err.code() == ErrorCode::bad_argument);
    }
  }
}

TEST_CASE("internet shares are three proportions over non-missing answers") {
  auto s = internet_shares(internet_fixture(90, 5, 5, 10));
  CHECK(s.paid.point == doctest::Approx(0.90).epsilon(1e-12));
  CHECK(s.unpaid.point == doctest::Approx(0.05).epsilon(1e-12));
  CHECK(s.none.point == doctest::Approx(0.05).epsilon(1e-12));
  CHECK(s.paid.n_used == 100);
  CHECK(std::abs(s.paid.point + s.unpaid.point + s.none.point - 1.0) <= 1e-9);

  SUBCASE("everyone paid") {
    auto all_paid = internet_shares(internet_fixture(25, 0, 0));
    CHECK(all_paid.paid.point == 1.0);
    CHECK(all_paid.unpaid.point == 0.0);
    CHECK(all_paid.none.point == 0.0);
  }
  SUBCASE("only missing answers") {
    try {
      internet_shares(internet_fixture(0, 0, 0, 8));
      FAIL("expected EmptyDenominator");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::empty_denominator);
    }
  }
}
