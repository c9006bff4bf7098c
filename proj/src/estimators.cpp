#include "estimators.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace svbench {

namespace {

constexpr double kZ95 = 1.96;

double weight_at(WeightSpan weights, std::size_t i) {
  return weights.empty() ? 1.0 : weights[i];
}

}  // namespace

EstimateWithCI weighted_proportion(const SurveyDataset& dataset, WeightSpan weights,
                                   const RecordPredicate& indicator,
                                   const RecordPredicate& denominator) {
  if (!weights.empty() && weights.size() != dataset.size())
    raise(ErrorCode::bad_argument, "weight vector does not align with the dataset view");

  double num = 0.0, den = 0.0, den_sq = 0.0;
  std::size_t n_used = 0;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const RespondentRecord& r = dataset[i];
    if (!denominator(r)) continue;
    const double w = weight_at(weights, i);
    den += w;
    den_sq += w * w;
    if (indicator(r)) num += w;
    ++n_used;
  }
  if (n_used == 0) raise(ErrorCode::empty_denominator, "no records match the denominator");

  EstimateWithCI e;
  e.n_used = n_used;
  e.weighted = !weights.empty();
  e.effective_n = den * den / den_sq;
  e.point = num / den;
  const double half = kZ95 * std::sqrt(e.point * (1.0 - e.point) / e.effective_n);
  e.ci_low = std::max(0.0, e.point - half);
  e.ci_high = std::min(1.0, e.point + half);
  return e;
}

namespace {

EstimateWithCI scale(EstimateWithCI e, double factor) {
  e.point *= factor;
  e.ci_low *= factor;
  e.ci_high *= factor;
  return e;
}

}  // namespace

EstimateWithCI two_party_share(const SurveyDataset& dataset, WeightSpan weights) {
  auto e = weighted_proportion(
      dataset, weights, [](const RespondentRecord& r) { return r.vote_house == HouseVote::rep; },
      [](const RespondentRecord& r) {
        return r.vote_house == HouseVote::rep || r.vote_house == HouseVote::dem;
      });
  return scale(e, 100.0);
}

FilterSpec likely_voters(const LikelyVoterRule& rule) {
  FilterSpec spec;
  spec.likely_voter = rule;
  return spec;
}

EstimateWithCI births_total(const SurveyDataset& dataset, WeightSpan weights,
                            double eligible_population_count) {
  if (!weights.empty() && weights.size() != dataset.size())
    raise(ErrorCode::bad_argument, "weight vector does not align with the dataset view");
  if (!(eligible_population_count > 0))
    raise(ErrorCode::bad_argument, "eligible_population_count must be positive");

  double wsum = 0.0, wsum_sq = 0.0, wx = 0.0;
  std::size_t n_used = 0;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const RespondentRecord& r = dataset[i];
    if (!births_eligible(r) || !r.births_10yr) continue;
    const double w = weight_at(weights, i);
    wsum += w;
    wsum_sq += w * w;
    wx += w * static_cast<double>(*r.births_10yr);
    ++n_used;
  }
  if (n_used == 0)
    raise(ErrorCode::no_eligible_respondents,
          "no eligible women (65 or younger) with a births answer");

  EstimateWithCI e;
  e.n_used = n_used;
  e.weighted = !weights.empty();
  e.effective_n = wsum * wsum / wsum_sq;

  const double mean = wx / wsum;
  double wvar = 0.0;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const RespondentRecord& r = dataset[i];
    if (!births_eligible(r) || !r.births_10yr) continue;
    const double d = static_cast<double>(*r.births_10yr) - mean;
    wvar += weight_at(weights, i) * d * d;
  }
  wvar /= wsum;
  const double se_mean = std::sqrt(wvar / e.effective_n);

  e.point = mean * eligible_population_count;
  e.ci_low = std::max(0.0, (mean - kZ95 * se_mean) * eligible_population_count);
  e.ci_high = (mean + kZ95 * se_mean) * eligible_population_count;
  return e;
}

InternetShares internet_shares(const SurveyDataset& dataset, WeightSpan weights) {
  auto denominator = [](const RespondentRecord& r) { return r.internet != Internet::missing; };
  auto share = [&](Internet value) {
    return weighted_proportion(
        dataset, weights, [value](const RespondentRecord& r) { return r.internet == value; },
        denominator);
  };
  InternetShares s;
  s.paid = share(Internet::paid);
  s.unpaid = share(Internet::unpaid);
  s.none = share(Internet::none);
  return s;
}

}  // namespace svbench
