#include "synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include <json.hpp>

#include "errors.hpp"
#include "rng.hpp"

namespace svbench {

MarginTargets default_demographics() {
  MarginTargets t;
  t["race_eth"] = {{"white_nh", 0.62}, {"black_nh", 0.12}, {"hispanic", 0.17}, {"other_nh", 0.09}};
  t["education"] = {
      {"lt_hs", 0.10}, {"hs", 0.28}, {"some_college", 0.28}, {"ba", 0.21}, {"post_ba", 0.13}};
  t["gender_age"] = {{"male_18_24", 0.06},  {"male_25_34", 0.09},   {"male_35_44", 0.08},
                     {"male_45_54", 0.08},  {"male_55_64", 0.08},   {"male_65_plus", 0.10},
                     {"female_18_24", 0.06}, {"female_25_34", 0.09}, {"female_35_44", 0.08},
                     {"female_45_54", 0.08}, {"female_55_64", 0.08}, {"female_65_plus", 0.12}};
  t["region"] = {{"northeast", 0.17}, {"south", 0.32}, {"midwest", 0.19},
                 {"west", 0.12},      {"CA", 0.12},    {"FL", 0.06},
                 {"WI", 0.02}};
  return t;
}

namespace {

struct CategoricalSampler {
  std::vector<double> cumulative;
  std::size_t draw(std::mt19937_64& rng) const {
    const double u = uniform_double(rng);
    for (std::size_t i = 0; i < cumulative.size(); ++i)
      if (u < cumulative[i]) return i;
    return cumulative.size() - 1;
  }
};

CategoricalSampler make_sampler(const MarginTargets& demo, const MarginDimension& dim) {
  auto it = demo.find(dim.name);
  if (it == demo.end())
    raise(ErrorCode::bad_argument, "demographics missing dimension '" + dim.name + "'");
  CategoricalSampler s;
  double acc = 0.0;
  for (const auto& cat : dim.categories) {
    auto share = it->second.find(cat);
    if (share == it->second.end())
      raise(ErrorCode::bad_argument,
            "demographics for '" + dim.name + "' missing category '" + cat + "'");
    acc += share->second;
    s.cumulative.push_back(acc);
  }
  if (std::abs(acc - 1.0) > 1e-9)
    raise(ErrorCode::bad_argument, "demographic shares for '" + dim.name + "' do not sum to 1");
  return s;
}

int sample_age(std::size_t band, std::mt19937_64& rng) {
  static constexpr int lo[] = {18, 25, 35, 45, 55, 65};
  static constexpr int hi[] = {24, 34, 44, 54, 64, 90};
  return lo[band] + static_cast<int>(uniform_below(rng, hi[band] - lo[band] + 1));
}

// Resolves an outcome parameter for one record: base plus any matching
// category adjustments, clamped when it is a probability.
double resolve_param(const OutcomeModel& model, const RespondentRecord& r, bool probability) {
  double v = model.base;
  const MarginSpec& spec = MarginSpec::national();
  for (const auto& adj : model.adjustments) {
    for (const auto& dim : spec.dimensions) {
      if (dim.name != adj.dimension) continue;
      int cat = dim.categorize(r);
      if (cat >= 0 && dim.categories[cat] == adj.category) v += adj.delta;
    }
  }
  if (probability) v = std::clamp(v, 0.0, 1.0);
  return std::max(0.0, v);
}

ScopeTruths tabulate_truths(const std::vector<SyntheticPerson>& people,
                            const std::string& state_filter) {
  ScopeTruths t;
  std::size_t rep = 0, two_party = 0, paid = 0, unpaid = 0, none = 0;
  for (const auto& p : people) {
    if (!state_filter.empty() && (!p.record.state || *p.record.state != state_filter)) continue;
    if (p.record.vote_house == HouseVote::rep) ++rep;
    if (p.record.vote_house == HouseVote::rep || p.record.vote_house == HouseVote::dem)
      ++two_party;
    if (p.record.internet == Internet::paid) ++paid;
    else if (p.record.internet == Internet::unpaid) ++unpaid;
    else if (p.record.internet == Internet::none) ++none;
    if (births_eligible(p.record)) {
      ++t.births_eligible_count;
      t.births_total += static_cast<double>(std::min(p.births_uncapped, 6));
      t.births_total_uncapped += static_cast<double>(p.births_uncapped);
    }
  }
  if (two_party > 0)
    t.two_party_rep_pct = 100.0 * static_cast<double>(rep) / static_cast<double>(two_party);
  const double denom = static_cast<double>(paid + unpaid + none);
  if (denom > 0) {
    t.internet_paid_pct = 100.0 * static_cast<double>(paid) / denom;
    t.internet_unpaid_pct = 100.0 * static_cast<double>(unpaid) / denom;
    t.internet_none_pct = 100.0 * static_cast<double>(none) / denom;
  }
  return t;
}

MarginTargets tabulate_margins(const std::vector<SyntheticPerson>& people, const MarginSpec& spec,
                               const std::string& state_filter = "") {
  MarginTargets out;
  std::vector<std::vector<std::size_t>> counts(spec.dimensions.size());
  for (std::size_t d = 0; d < spec.dimensions.size(); ++d)
    counts[d].assign(spec.dimensions[d].categories.size(), 0);
  std::size_t n = 0;
  for (const auto& p : people) {
    if (!state_filter.empty() && (!p.record.state || *p.record.state != state_filter)) continue;
    ++n;
    for (std::size_t d = 0; d < spec.dimensions.size(); ++d) {
      int cat = spec.dimensions[d].categorize(p.record);
      if (cat >= 0) ++counts[d][cat];
    }
  }
  for (std::size_t d = 0; d < spec.dimensions.size(); ++d)
    for (std::size_t c = 0; c < counts[d].size(); ++c)
      out[spec.dimensions[d].name][spec.dimensions[d].categories[c]] =
          n ? static_cast<double>(counts[d][c]) / static_cast<double>(n) : 0.0;
  return out;
}

}  // namespace

Population generate_population(const SyntheticPopulationConfig& config) {
  const MarginSpec& spec = MarginSpec::national();
  MarginTargets demo = config.demographics.empty() ? default_demographics() : config.demographics;

  CategoricalSampler race = make_sampler(demo, spec.dimensions[0]);
  CategoricalSampler educ = make_sampler(demo, spec.dimensions[1]);
  CategoricalSampler gender_age = make_sampler(demo, spec.dimensions[2]);
  CategoricalSampler region = make_sampler(demo, spec.dimensions[3]);

  auto rng = make_stream(config.seed);
  Population pop;
  pop.people.resize(config.population_size);

  for (std::size_t i = 0; i < config.population_size; ++i) {
    RespondentRecord r;
    r.respondent_id = "p" + std::to_string(i + 1);
    r.race_eth = static_cast<RaceEth>(race.draw(rng));
    r.education = static_cast<Education>(educ.draw(rng));

    const std::size_t ga = gender_age.draw(rng);
    r.gender = ga < 6 ? Gender::man : Gender::woman;
    r.age_years = sample_age(ga % 6, rng);

    // Region category: 4 census regions or one of the carved-out states.
    switch (region.draw(rng)) {
      case 0: r.region = Region::northeast; r.state = "NY"; break;
      case 1: r.region = Region::south; r.state = "TX"; break;
      case 2: r.region = Region::midwest; r.state = "OH"; break;
      case 3: r.region = Region::west; r.state = "WA"; break;
      case 4: r.region = Region::west; r.state = "CA"; break;
      case 5: r.region = Region::south; r.state = "FL"; break;
      case 6: r.region = Region::midwest; r.state = "WI"; break;
    }

    // House vote: two-party with a lump of other/none/missing.
    if (uniform_double(rng) < config.p_non_two_party) {
      const double u = uniform_double(rng);
      r.vote_house = u < 0.4 ? HouseVote::other : (u < 0.8 ? HouseVote::none : HouseVote::missing);
    } else {
      const double p_rep = resolve_param(config.p_rep_two_party, r, true);
      r.vote_house = uniform_double(rng) < p_rep ? HouseVote::rep : HouseVote::dem;
    }

    // Turnout screen answers, roughly election-season shaped.
    {
      static constexpr double turnout_cum[] = {0.10, 0.15, 0.25, 0.45, 0.80, 1.0};
      const double u = uniform_double(rng);
      std::size_t k = 0;
      while (turnout_cum[k] <= u) ++k;
      r.turnout_intent = static_cast<TurnoutIntent>(k);
      static constexpr double interest_cum[] = {0.10, 0.25, 0.55, 0.80, 1.0};
      const double v = uniform_double(rng);
      k = 0;
      while (interest_cum[k] <= v) ++k;
      r.interest = static_cast<Interest>(k);
    }

    SyntheticPerson person;
    person.record = std::move(r);

    if (births_eligible(person.record)) {
      const double rate = resolve_param(config.births_rate, person.record, false);
      person.births_uncapped = poisson_knuth(rng, rate);
      person.record.births_10yr = std::min(person.births_uncapped, 6);
    }

    {
      const double paid = resolve_param(config.p_internet_paid, person.record, true);
      const double unpaid = resolve_param(config.p_internet_unpaid, person.record, true);
      const double u = uniform_double(rng);
      person.record.internet =
          u < paid ? Internet::paid : (u < paid + unpaid ? Internet::unpaid : Internet::none);
    }

    pop.people[i] = std::move(person);
  }

  // Exact truths by enumeration of the realized population.
  TrueValues& t = pop.truths;
  t.population_size = pop.people.size();
  t.national = tabulate_truths(pop.people, "");
  for (const char* state : {"CA", "FL", "WI"}) {
    t.by_state[state] = tabulate_truths(pop.people, state);
    t.state_margins[state] = tabulate_margins(pop.people, MarginSpec::state(), state);
  }
  t.realized_margins = tabulate_margins(pop.people, MarginSpec::national());
  return pop;
}

SurveyDataset sample_frames(const Population& population, const std::vector<FrameSpec>& frames,
                            std::uint64_t seed) {
  const std::size_t N = population.people.size();
  std::vector<FrameKind> frame_table;
  std::vector<RespondentRecord> records;

  std::uint64_t frame_key = 0;
  for (const auto& frame : frames) {
    if (frame.sample_size > N)
      raise(ErrorCode::size_exceeds_population,
            "frame '" + frame.kind.source_label + "' asks for " +
                std::to_string(frame.sample_size) + " of " + std::to_string(N));

    auto rng = make_stream(seed, ++frame_key);
    const bool identity = frame.bias.demographic.empty() && frame.bias.by_vote.empty() &&
                          frame.bias.by_internet.empty();

    std::vector<double> propensity;
    if (!identity) {
      propensity.assign(N, 1.0);
      const MarginSpec& spec = MarginSpec::national();
      for (std::size_t i = 0; i < N; ++i) {
        const RespondentRecord& r = population.people[i].record;
        double w = 1.0;
        for (const auto& mult : frame.bias.demographic) {
          for (const auto& dim : spec.dimensions) {
            if (dim.name != mult.dimension) continue;
            int cat = dim.categorize(r);
            if (cat >= 0 && dim.categories[cat] == mult.category) w *= mult.factor;
          }
        }
        if (!frame.bias.by_vote.empty()) {
          auto it = frame.bias.by_vote.find(to_string(r.vote_house));
          if (it != frame.bias.by_vote.end()) w *= it->second;
        }
        if (!frame.bias.by_internet.empty()) {
          auto it = frame.bias.by_internet.find(to_string(r.internet));
          if (it != frame.bias.by_internet.end()) w *= it->second;
        }
        if (!(w > 0.0))
          raise(ErrorCode::bad_argument, "selection propensities must stay positive");
        propensity[i] = w;
      }
    }

    std::vector<std::uint32_t> chosen;
    if (identity) {
      // Simple random sample via partial Fisher-Yates.
      std::vector<std::uint32_t> idx(N);
      std::iota(idx.begin(), idx.end(), 0u);
      chosen.reserve(frame.sample_size);
      for (std::size_t i = 0; i < frame.sample_size; ++i) {
        std::size_t j = i + static_cast<std::size_t>(uniform_below(rng, N - i));
        std::swap(idx[i], idx[j]);
        chosen.push_back(idx[i]);
      }
    } else {
      // Weighted draw without replacement (Efraimidis-Spirakis): keep the
      // sample_size largest u^(1/w) keys, compared in log space.
      std::vector<std::pair<double, std::uint32_t>> keys(N);
      for (std::size_t i = 0; i < N; ++i) {
        const double u = uniform_double(rng);
        keys[i] = {std::log(std::max(u, 1e-300)) / propensity[i], static_cast<std::uint32_t>(i)};
      }
      std::partial_sort(keys.begin(), keys.begin() + frame.sample_size, keys.end(),
                        [](const auto& a, const auto& b) {
                          return a.first > b.first || (a.first == b.first && a.second < b.second);
                        });
      chosen.resize(frame.sample_size);
      for (std::size_t i = 0; i < frame.sample_size; ++i) chosen[i] = keys[i].second;
    }
    std::sort(chosen.begin(), chosen.end());

    const auto frame_idx = static_cast<std::uint16_t>(frame_table.size());
    frame_table.push_back(frame.kind);
    std::size_t seq = 0;
    for (std::uint32_t person : chosen) {
      RespondentRecord r = population.people[person].record;
      r.respondent_id = frame.kind.source_label + "-" + std::to_string(++seq);
      r.frame = frame_idx;
      r.mode = frame.mode;
      records.push_back(std::move(r));
    }
  }

  Provenance prov{"synthetic", "", records.size()};
  return SurveyDataset(std::move(records), std::move(frame_table), std::move(prov));
}

TargetsFile targets_from_truths(const TrueValues& truths) {
  TargetsFile t;
  t.national = truths.realized_margins;
  t.states = truths.state_margins;
  return t;
}

namespace {

nlohmann::json margins_to_json(const MarginTargets& t) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [dim, cats] : t)
    for (const auto& [cat, share] : cats) j[dim][cat] = share;
  return j;
}

}  // namespace

namespace {

nlohmann::json scope_to_json(const ScopeTruths& t) {
  nlohmann::json j;
  j["two_party_rep_pct"] = t.two_party_rep_pct;
  j["births_total"] = t.births_total;
  j["births_total_uncapped"] = t.births_total_uncapped;
  j["births_eligible_count"] = t.births_eligible_count;
  j["internet_paid_pct"] = t.internet_paid_pct;
  j["internet_unpaid_pct"] = t.internet_unpaid_pct;
  j["internet_none_pct"] = t.internet_none_pct;
  return j;
}

}  // namespace

void write_truths(const TrueValues& truths, const std::string& path) {
  nlohmann::json j;
  j["population_size"] = truths.population_size;
  j["national"] = scope_to_json(truths.national);
  for (const auto& [state, t] : truths.by_state) j["states"][state] = scope_to_json(t);
  j["realized_margins"] = margins_to_json(truths.realized_margins);
  for (const auto& [state, margins] : truths.state_margins)
    j["state_margins"][state] = margins_to_json(margins);
  std::ofstream out(path);
  if (!out) raise(ErrorCode::missing_file, "cannot write " + path);
  out << j.dump(2) << '\n';
}

void write_truth_benchmarks(const TrueValues& truths, const std::string& path) {
  nlohmann::json j;
  auto emit = [&](const std::string& name, double truth, const char* units,
                  const std::string& estimator_id, const std::string& scope,
                  std::optional<double> population_count) {
    j[name]["truth"] = truth;
    j[name]["units"] = units;
    j[name]["scope"] = scope;
    j[name]["estimator"]["id"] = estimator_id;
    if (population_count) j[name]["estimator"]["params"]["population_count"] = *population_count;
  };
  emit("synthetic_house_vote", truths.national.two_party_rep_pct, "percent", "two_party_share",
       "national", std::nullopt);
  emit("synthetic_births_national", truths.national.births_total, "count", "births_total",
       "national", static_cast<double>(truths.national.births_eligible_count));
  emit("synthetic_internet_paid", truths.national.internet_paid_pct, "percent", "internet_paid",
       "national", std::nullopt);
  emit("synthetic_internet_unpaid", truths.national.internet_unpaid_pct, "percent",
       "internet_unpaid", "national", std::nullopt);
  for (const auto& [state, t] : truths.by_state) {
    emit("synthetic_house_vote_" + state, t.two_party_rep_pct, "percent", "two_party_share", state,
         std::nullopt);
    emit("synthetic_births_" + state, t.births_total, "count", "births_total", state,
         static_cast<double>(t.births_eligible_count));
  }
  std::ofstream out(path);
  if (!out) raise(ErrorCode::missing_file, "cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace svbench
