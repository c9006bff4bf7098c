#pragma once

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "dataset.hpp"
#include "margins.hpp"
#include "raking.hpp"

namespace svbench::testing {

// Deterministic fixture shaped like the 2022 survey: 19,820 respondents
// across ten frames (three national probability, one single-state ABS
// oversample, four nonprobability, two registered-voter), with the
// documented per-frame CA/FL/WI counts. Demographics cycle so every national
// weighting cell is populated; the WI slice of nonprob_panel_2 is built
// education-sparse on purpose.
SurveyDataset cms_shaped_fixture();

// A small hand-labeled dataset built from explicit records.
struct TinyRecordSpec {
  std::string id;
  std::string frame_label;
  std::string state;  // "" = none
  int age = 40;
  Gender gender = Gender::man;
  RaceEth race = RaceEth::white_nh;
  Education education = Education::hs;
  Region region = Region::south;
  HouseVote vote = HouseVote::missing;
  TurnoutIntent turnout = TurnoutIntent::missing;
  Interest interest = Interest::missing;
  int births = -1;  // -1 = missing
  Internet internet = Internet::missing;
};
SurveyDataset make_dataset(const std::vector<FrameKind>& frames,
                           const std::vector<TinyRecordSpec>& rows);

// Random raking fixture: 2..max_dims dimensions, 2..max_cats categories
// each, every full cell populated at least once (so IPF is feasible), at
// most max_n respondents, strictly positive random targets.
struct RakeFixture {
  CellAssignment assignment;
  MarginTargets targets;
};
RakeFixture random_rake_fixture(std::mt19937_64& rng, int max_dims = 2, int max_cats = 3,
                                int max_n = 30);

// Independent brute-force IPF on the two-way contingency table: rows/columns
// are scaled alternately to the target margins until the worst share gap is
// below tol. Returns mean-normalized per-respondent weights.
std::vector<double> ipf_oracle_2d(const CellAssignment& assignment, const MarginTargets& targets,
                                  double tol = 1e-12, int max_iter = 100000);

// Respondent-level alternating proportional adjustment for any number of
// dimensions; used as a second route for >2-dimension checks.
std::vector<double> ipf_oracle_nd(const CellAssignment& assignment, const MarginTargets& targets,
                                  double tol = 1e-12, int max_iter = 100000);

// Weighted share of one category, recomputed directly from weights.
double weighted_share(const CellAssignment& assignment, const std::vector<double>& weights,
                      std::size_t dim, std::size_t cat);

class TempDir {
 public:
  explicit TempDir(const std::string& name);
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  std::string path(const std::string& file) const { return (dir_ / file).string(); }
  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
};

}  // namespace svbench::testing
