#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace svbench {

enum class FrameCategory : std::uint8_t { probability, nonprobability, registered_voter };

enum class Mode : std::uint8_t { phone, web };

enum class Gender : std::uint8_t { man, woman, other };

enum class RaceEth : std::uint8_t { white_nh, black_nh, hispanic, other_nh };

enum class Education : std::uint8_t { lt_hs, hs, some_college, ba, post_ba };

enum class Region : std::uint8_t { northeast, south, midwest, west };

enum class HouseVote : std::uint8_t { dem, rep, other, none, missing };

// Turnout-intent scale, ordered as asked ("How likely are you to vote...").
enum class TurnoutIntent : std::uint8_t {
  will_not_vote,
  lt_50_50,
  chances_50_50,
  probably,
  certain,
  already_voted,
  missing,
};

enum class Interest : std::uint8_t {
  not_at_all,
  only_a_little,
  somewhat,
  very,
  extremely,
  missing,
};

enum class Internet : std::uint8_t { paid, unpaid, none, missing };

// A sampling frame. `national` marks national general-population frames;
// single-state oversample frames (e.g. a WI-only ABS sample) carry false and
// stay out of the probability/nonprobability blend pools.
struct FrameKind {
  std::string source_label;
  FrameCategory category = FrameCategory::probability;
  bool national = true;

  bool operator==(const FrameKind&) const = default;
};

struct RespondentRecord {
  std::string respondent_id;
  std::uint16_t frame = 0;  // index into the dataset's frame table
  Mode mode = Mode::web;
  std::optional<std::string> state;  // 2-letter code
  int age_years = 0;
  Gender gender = Gender::man;
  RaceEth race_eth = RaceEth::white_nh;
  Education education = Education::lt_hs;
  Region region = Region::northeast;
  HouseVote vote_house = HouseVote::missing;
  TurnoutIntent turnout_intent = TurnoutIntent::missing;
  Interest interest = Interest::missing;
  std::optional<int> births_10yr;  // 0..6, null unless asked (woman, age <= 65)
  Internet internet = Internet::missing;

  bool operator==(const RespondentRecord&) const = default;
};

// Birth question eligibility: asked of women 65 or younger.
inline bool births_eligible(const RespondentRecord& r) {
  return r.gender == Gender::woman && r.age_years <= 65;
}

// Likely-voter screen: already voted or certain to vote passes outright;
// "probably" requires very or extreme interest. A missing answer on either
// item excludes the respondent.
struct LikelyVoterRule {
  bool passes(TurnoutIntent turnout, Interest interest) const {
    if (turnout == TurnoutIntent::missing || interest == Interest::missing) return false;
    if (turnout == TurnoutIntent::already_voted || turnout == TurnoutIntent::certain) return true;
    if (turnout == TurnoutIntent::probably)
      return interest == Interest::very || interest == Interest::extremely;
    return false;
  }
};

const char* to_string(FrameCategory v);
const char* to_string(Mode v);
const char* to_string(Gender v);
const char* to_string(RaceEth v);
const char* to_string(Education v);
const char* to_string(Region v);
const char* to_string(HouseVote v);
const char* to_string(TurnoutIntent v);
const char* to_string(Interest v);
const char* to_string(Internet v);

}  // namespace svbench
