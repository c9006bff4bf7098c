#include "types.hpp"

namespace svbench {

const char* to_string(FrameCategory v) {
  switch (v) {
    case FrameCategory::probability: return "probability";
    case FrameCategory::nonprobability: return "nonprobability";
    case FrameCategory::registered_voter: return "registered_voter";
  }
  return "?";
}

const char* to_string(Mode v) {
  switch (v) {
    case Mode::phone: return "phone";
    case Mode::web: return "web";
  }
  return "?";
}

const char* to_string(Gender v) {
  switch (v) {
    case Gender::man: return "man";
    case Gender::woman: return "woman";
    case Gender::other: return "other";
  }
  return "?";
}

const char* to_string(RaceEth v) {
  switch (v) {
    case RaceEth::white_nh: return "white_nh";
    case RaceEth::black_nh: return "black_nh";
    case RaceEth::hispanic: return "hispanic";
    case RaceEth::other_nh: return "other_nh";
  }
  return "?";
}

const char* to_string(Education v) {
  switch (v) {
    case Education::lt_hs: return "lt_hs";
    case Education::hs: return "hs";
    case Education::some_college: return "some_college";
    case Education::ba: return "ba";
    case Education::post_ba: return "post_ba";
  }
  return "?";
}

const char* to_string(Region v) {
  switch (v) {
    case Region::northeast: return "northeast";
    case Region::south: return "south";
    case Region::midwest: return "midwest";
    case Region::west: return "west";
  }
  return "?";
}

const char* to_string(HouseVote v) {
  switch (v) {
    case HouseVote::dem: return "dem";
    case HouseVote::rep: return "rep";
    case HouseVote::other: return "other";
    case HouseVote::none: return "none";
    case HouseVote::missing: return "missing";
  }
  return "?";
}

const char* to_string(TurnoutIntent v) {
  switch (v) {
    case TurnoutIntent::will_not_vote: return "will_not_vote";
    case TurnoutIntent::lt_50_50: return "lt_50_50";
    case TurnoutIntent::chances_50_50: return "chances_50_50";
    case TurnoutIntent::probably: return "probably";
    case TurnoutIntent::certain: return "certain";
    case TurnoutIntent::already_voted: return "already_voted";
    case TurnoutIntent::missing: return "missing";
  }
  return "?";
}

const char* to_string(Interest v) {
  switch (v) {
    case Interest::not_at_all: return "not_at_all";
    case Interest::only_a_little: return "only_a_little";
    case Interest::somewhat: return "somewhat";
    case Interest::very: return "very";
    case Interest::extremely: return "extremely";
    case Interest::missing: return "missing";
  }
  return "?";
}

const char* to_string(Internet v) {
  switch (v) {
    case Internet::paid: return "paid";
    case Internet::unpaid: return "unpaid";
    case Internet::none: return "none";
    case Internet::missing: return "missing";
  }
  return "?";
}

}  // namespace svbench
