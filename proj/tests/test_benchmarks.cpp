#include <doctest.h>

#include <cmath>
#include <fstream>

#include "benchmarks.hpp"
#include "errors.hpp"
#include "fixtures.hpp"

using namespace svbench;
using namespace svbench::testing;

namespace {

EstimateWithCI make_estimate(double point, double lo, double hi) {
  EstimateWithCI e;
  e.point = point;
  e.ci_low = lo;
  e.ci_high = hi;
  e.n_used = 100;
  e.effective_n = 100.0;
  return e;
}

MarginTargets realized_targets(const SurveyDataset& ds, const MarginSpec& spec) {
  auto cells = assign_cells(ds, spec);
  std::vector<double> unit(cells.n, 1.0);
  MarginTargets t;
  for (std::size_t d = 0; d < cells.dimension_names.size(); ++d)
    for (std::size_t c = 0; c < cells.category_labels[d].size(); ++c)
      t[cells.dimension_names[d]][cells.category_labels[d][c]] = weighted_share(cells, unit, d, c);
  return t;
}

}  // namespace

TEST_CASE("builtin registry carries the shipped truths") {
  auto reg = builtin_benchmarks();
  CHECK(reg.lookup("house_vote_2022").truth == 51.4);
  CHECK(reg.lookup("house_vote_2022").units == Units::percent);
  CHECK(reg.lookup("births_national").truth == 42091245.0);
  CHECK(reg.lookup("births_CA").truth == 5121438.0);
  CHECK(reg.lookup("births_FL").truth == 2401935.0);
  CHECK(reg.lookup("births_WI").truth == 710933.0);
  CHECK(reg.lookup("births_WI").scope == "WI");
  CHECK(reg.lookup("internet_paid").truth == 92.3);
  CHECK(reg.lookup("internet_unpaid").truth == 2.05);
  try {
    reg.lookup("house_vote_2020");
    FAIL("expected UnknownBenchmark");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::unknown_benchmark);
  }
}

TEST_CASE("overlay files edit truths and define new benchmarks") {
  TempDir tmp("benchmark_overlay");
  {
    std::ofstream out(tmp.path("overlay.json"));
    out << R"({
      "house_vote_2022": {"truth": 50.9},
      "births_national": {"estimator": {"params": {"population_count": 98000000}}},
      "marriage_rate": {"truth": 6.2, "units": "percent",
                        "estimator": {"id": "two_party_share"}, "scope": "national"}
    })";
  }
  auto reg = builtin_benchmarks();
  reg.apply_overlay_file(tmp.path("overlay.json"));
  CHECK(reg.lookup("house_vote_2022").truth == 50.9);
  CHECK(reg.lookup("house_vote_2022").estimator.id == "two_party_share");
  CHECK(reg.lookup("births_national").truth == 42091245.0);
  CHECK(reg.lookup("births_national").estimator.params.at("population_count") == 98000000.0);
  CHECK(reg.lookup("marriage_rate").truth == 6.2);

  SUBCASE("a new benchmark must be complete") {
    std::ofstream out(tmp.path("bad.json"));
    out << R"({"mystery": {"truth": 1.0}})";
    out.close();
    try {
      reg.apply_overlay_file(tmp.path("bad.json"));
      FAIL("expected config error");
    } catch (const Error& e) {
      CHECK(e.family() == ErrorFamily::config);
    }
  }
}

TEST_CASE("cdc 2022 adjustment averages the last three observed years") {
  std::map<int, double> years;
  SUBCASE("constant series") {
    for (int y = 2012; y <= 2021; ++y) years[y] = 10.0;
    CHECK(cdc_2022_adjustment(years) == doctest::Approx(110.0).epsilon(1e-12));
  }
  SUBCASE("mean of 2019-2021") {
    for (int y = 2012; y <= 2021; ++y) years[y] = 0.0;
    years[2019] = 3.0e6;
    years[2020] = 3.6e6;
    years[2021] = 3.6e6;
    CHECK(cdc_2022_adjustment(years) == doctest::Approx(10.2e6 + 3.4e6).epsilon(1e-12));
  }
  SUBCASE("missing year") {
    for (int y = 2012; y <= 2021; ++y)
      if (y != 2020) years[y] = 1.0;
    try {
      cdc_2022_adjustment(years);
      FAIL("expected MissingYear");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::missing_year);
    }
  }
  SUBCASE("a supplied 2022 count is rejected") {
    for (int y = 2012; y <= 2022; ++y) years[y] = 1.0;
    try {
      cdc_2022_adjustment(years);
      FAIL("expected UnexpectedYear");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::unexpected_year);
    }
  }
  SUBCASE("linear in a uniform scaling") {
    for (int y = 2012; y <= 2021; ++y) years[y] = 100.0 + 7.0 * (y - 2012);
    const double base = cdc_2022_adjustment(years);
    for (auto& [y, v] : years) v *= 3.0;
    CHECK(cdc_2022_adjustment(years) == doctest::Approx(3.0 * base).epsilon(1e-12));
  }
}

TEST_CASE("scores are errors against the truth plus interval coverage") {
  BenchmarkSpec vote{"house_vote_2022", 51.4, Units::percent, {"two_party_share", {}}, "national"};

  auto s = score(make_estimate(48.8, 46.0, 51.0), vote, Units::percent);
  CHECK(s.signed_error == doctest::Approx(-2.6).epsilon(1e-12));
  CHECK(s.abs_error == doctest::Approx(2.6).epsilon(1e-12));
  CHECK(!s.covered);

  auto exact = score(make_estimate(51.4, 50.0, 52.0), vote, Units::percent);
  CHECK(exact.abs_error == 0.0);
  CHECK(exact.covered);

  BenchmarkSpec births{"births_national", 42091245.0, Units::count, {"births_total", {}},
                       "national"};
  auto sb = score(make_estimate(42195773.0, 41000000.0, 43000000.0), births, Units::count);
  CHECK(sb.abs_error == doctest::Approx(104528.0));
  CHECK(sb.covered);

  SUBCASE("coverage tracks the interval in both directions") {
    CHECK(score(make_estimate(51.0, 50.0, 51.4), vote, Units::percent).covered);
    CHECK(score(make_estimate(51.5, 51.4, 52.0), vote, Units::percent).covered);
    CHECK(!score(make_estimate(51.0, 50.0, 51.39), vote, Units::percent).covered);
    CHECK(!score(make_estimate(52.0, 51.41, 53.0), vote, Units::percent).covered);
  }

  SUBCASE("unit mismatch is rejected") {
    try {
      score(make_estimate(0.488, 0.4, 0.6), births, Units::percent);
      FAIL("expected UnitMismatch");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::unit_mismatch);
    }
  }
}

TEST_CASE("estimator registry resolves ids and validates parameters") {
  CHECK(bind_estimator({"two_party_share", {}}).units == Units::percent);
  CHECK(bind_estimator({"births_total", {{"population_count", 1.0e6}}}).units == Units::count);
  CHECK(bind_estimator({"internet_paid", {}}).units == Units::percent);
  try {
    bind_estimator({"births_total", {}});
    FAIL("expected BadArgument");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::bad_argument);
  }
  try {
    bind_estimator({"nonesuch", {}});
    FAIL("expected BadArgument");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::bad_argument);
  }
}

TEST_CASE("scoreboard emits one row per approach and weighting") {
  SurveyDataset ds = cms_shaped_fixture();
  MarginTargets targets = realized_targets(ds, MarginSpec::national());
  BenchmarkSpec vote{"house_vote_2022", 51.4, Units::percent, {"two_party_share", {}}, "national"};

  // Figure-2 style grouping: twelve approaches, the ABS one spanning both
  // the national frame and the WI oversample frame.
  std::vector<ApproachFilter> grouping;
  {
    FilterSpec all;
    all.general_population = true;
    grouping.push_back({"All", all});
    FilterSpec p;
    p.frame_category = FrameCategory::probability;
    grouping.push_back({"All Probability", p});
    FilterSpec np;
    np.frame_category = FrameCategory::nonprobability;
    grouping.push_back({"All Nonprobability", np});
    FilterSpec abs_approach;
    abs_approach.source_label_any = {"random_abs", "random_abs_wi"};
    grouping.push_back({"random_abs", abs_approach});
    for (const char* label : {"prob_panel", "rdd", "nonprob_panel_1", "nonprob_panel_2",
                              "nonprob_marketplace_1", "nonprob_marketplace_2", "rv_abs",
                              "rv_sms"}) {
      FilterSpec f;
      f.source_label = label;
      grouping.push_back({label, f});
    }
  }
  REQUIRE(grouping.size() == 12);
  CHECK(ds.filter(grouping[3].filter).size() == 494);  // both ABS frames

  auto rows = scoreboard(ds, MarginSpec::national(), targets, vote, grouping);
  REQUIRE(rows.size() == 24);

  std::size_t ok_weighted = 0;
  for (std::size_t g = 0; g < grouping.size(); ++g) {
    const auto& unweighted = rows[2 * g];
    const auto& weighted = rows[2 * g + 1];
    CHECK(unweighted.approach == grouping[g].name);
    CHECK(!unweighted.weighted);
    CHECK(weighted.weighted);
    CHECK(unweighted.status == "ok");
    REQUIRE(unweighted.estimate.has_value());
    if (weighted.status == "ok") {
      ++ok_weighted;
      REQUIRE(weighted.estimate.has_value());
      CHECK(weighted.result->abs_error ==
            doctest::Approx(std::abs(weighted.estimate->point - 51.4)));
    }
  }
  CHECK(ok_weighted >= 10);
}

TEST_CASE("per-row failures never abort the table") {
  // Six clones demographically, so the full set rakes trivially while the
  // one-record approach trips the min-cell rule.
  std::vector<FrameKind> frames{{"big", FrameCategory::probability, true},
                                {"solo", FrameCategory::nonprobability, true}};
  std::vector<TinyRecordSpec> rows;
  for (int i = 0; i < 5; ++i)
    rows.push_back({.id = "b" + std::to_string(i), .frame_label = "big",
                    .vote = i % 2 ? HouseVote::rep : HouseVote::dem});
  rows.push_back({.id = "s1", .frame_label = "solo", .vote = HouseVote::rep});
  auto ds = make_dataset(frames, rows);
  MarginTargets targets = realized_targets(ds, MarginSpec::national());
  BenchmarkSpec vote{"v", 51.4, Units::percent, {"two_party_share", {}}, "national"};

  std::vector<ApproachFilter> grouping;
  FilterSpec everyone;
  grouping.push_back({"All", everyone});
  FilterSpec solo;
  solo.source_label = "solo";
  grouping.push_back({"solo", solo});

  auto table = scoreboard(ds, MarginSpec::national(), targets, vote, grouping);
  REQUIRE(table.size() == 4);
  CHECK(table[0].status == "ok");
  CHECK(table[1].status == "ok");  // six identical records match their own margins
  CHECK(table[2].status == "ok");
  CHECK(table[2].estimate->point == 100.0);
  CHECK(table[3].status == "InsufficientCells");
  CHECK(!table[3].estimate.has_value());
}

TEST_CASE("default grouping lists combined pools then every source label") {
  SurveyDataset ds = cms_shaped_fixture();
  auto groups = default_grouping(ds);
  REQUIRE(groups.size() == 13);  // 3 combined + 10 labels
  CHECK(groups[0].name == "All");
  CHECK(groups[1].name == "All Probability");
  CHECK(groups[2].name == "All Nonprobability");
  CHECK(ds.filter(groups[0].filter).size() == 13296);  // gen-pop incl. the WI ABS oversample
  CHECK(ds.filter(groups[1].filter).size() == 3650);
  CHECK(ds.filter(groups[2].filter).size() == 9646);
}
