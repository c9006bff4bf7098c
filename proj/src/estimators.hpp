#pragma once

#include <functional>
#include <span>

#include "dataset.hpp"
#include "raking.hpp"

namespace svbench {

// Point estimate with a 95% interval. Intervals use the normal approximation
// with the Kish effective sample size; that choice is surfaced in output
// metadata so alternatives can be compared.
struct EstimateWithCI {
  double point = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::size_t n_used = 0;
  double effective_n = 0.0;
  bool weighted = false;
};

using RecordPredicate = std::function<bool(const RespondentRecord&)>;

// An empty weight span means unweighted (all weights 1); otherwise weights
// must align with the dataset view, one per record.
using WeightSpan = std::span<const double>;

// p = sum(w * indicator) / sum(w) over denominator records, with
// CI = p +- 1.96 * sqrt(p(1-p)/effective_n) clamped to [0,1].
EstimateWithCI weighted_proportion(const SurveyDataset& dataset, WeightSpan weights,
                                   const RecordPredicate& indicator,
                                   const RecordPredicate& denominator);

// Percent Republican out of the two-party house vote, on a 0..100 scale.
EstimateWithCI two_party_share(const SurveyDataset& dataset, WeightSpan weights = {});

// FilterSpec selecting respondents who pass the turnout/interest screen.
FilterSpec likely_voters(const LikelyVoterRule& rule = {});

// Weighted mean births per eligible woman (women 65 or younger with a
// non-missing answer) scaled to the supplied census count of eligible women.
EstimateWithCI births_total(const SurveyDataset& dataset, WeightSpan weights,
                            double eligible_population_count);

struct InternetShares {
  EstimateWithCI paid;
  EstimateWithCI unpaid;
  EstimateWithCI none;
};

// Three weighted proportions over non-missing internet responses; the points
// sum to 1.
InternetShares internet_shares(const SurveyDataset& dataset, WeightSpan weights = {});

}  // namespace svbench
