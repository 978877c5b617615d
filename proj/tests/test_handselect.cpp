#include "itsg/handselect.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "itsg/demonstration.hpp"

using namespace itsg;

namespace {

HandSelectState state(double dl_target, double dr_target, double dl_source = 0.3,
                      double dr_source = 0.3) {
  HandSelectState s;
  s.d_left_target = dl_target;
  s.d_right_target = dr_target;
  s.d_left_source = dl_source;
  s.d_right_source = dr_source;
  return s;
}

}  // namespace

TEST(HandSelect, ActionStringRoundTrip) {
  EXPECT_EQ(action_from_string(to_string(Action::UseLeftHand)), Action::UseLeftHand);
  EXPECT_EQ(action_from_string(to_string(Action::UseRightHand)), Action::UseRightHand);
  EXPECT_THROW(action_from_string("use_third_hand"), DataError);
}

TEST(HandSelect, PicksTheHandWhosePartnerIsWorsePlaced) {
  // The right hand being closer to the target frees the left hand to act.
  EXPECT_EQ(select_hand(state(0.8, 0.2)), Action::UseLeftHand);
  EXPECT_EQ(select_hand(state(0.2, 0.8)), Action::UseRightHand);
}

TEST(HandSelect, TiesGoToTheRightHand) {
  EXPECT_EQ(select_hand(state(0.5, 0.5)), Action::UseRightHand);
  EXPECT_EQ(select_hand(state(0.0, 0.0)), Action::UseRightHand);
}

TEST(HandSelect, SourceDistancesDoNotMatter) {
  for (double src_l : {0.0, 0.4, 9.9})
    for (double src_r : {0.0, 0.4, 9.9})
      EXPECT_EQ(select_hand(state(0.8, 0.2, src_l, src_r)), Action::UseLeftHand);
}

TEST(HandSelect, RejectsNonFiniteTargets) {
  EXPECT_THROW(select_hand(state(std::numeric_limits<double>::quiet_NaN(), 0.2)), DataError);
  EXPECT_THROW(select_hand(state(0.2, std::numeric_limits<double>::infinity())), DataError);
}

TEST(HandSelect, ExhaustiveGridFollowsTheRule) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> src(0.0, 2.0);
  for (int i = 0; i <= 20; ++i)
    for (int j = 0; j <= 20; ++j) {
      const double dl = 0.05 * i, dr = 0.05 * j;
      const Action expected = dr < dl ? Action::UseLeftHand : Action::UseRightHand;
      EXPECT_EQ(select_hand(state(dl, dr, src(rng), src(rng))), expected)
          << "dl=" << dl << " dr=" << dr;
    }
}

TEST(HandSelect, ScaleInvariant) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> dist(0.0, 1.5);
  std::uniform_real_distribution<double> scale(1e-3, 1e3);
  for (int i = 0; i < 1000; ++i) {
    const HandSelectState s = state(dist(rng), dist(rng), dist(rng), dist(rng));
    const double k = scale(rng);
    const HandSelectState scaled =
        state(k * s.d_left_target, k * s.d_right_target, k * s.d_left_source,
              k * s.d_right_source);
    EXPECT_EQ(select_hand(s), select_hand(scaled));
  }
}

TEST(HandSelect, RewardIsBonusOrMinusPenalty) {
  const RewardConfig cfg{2.0, 3.0};
  EXPECT_DOUBLE_EQ(reward(Action::UseLeftHand, Action::UseLeftHand, cfg), 2.0);
  EXPECT_DOUBLE_EQ(reward(Action::UseLeftHand, Action::UseRightHand, cfg), -3.0);
}

TEST(EvaluatePolicy, AgreementRatioAndClosedFormReward) {
  // Alternate agreeing and disagreeing decisions: k of n agree, so the
  // accumulated reward must equal k*bonus - (n-k)*penalty exactly.
  const RewardConfig cfg{0.25, 0.125};
  std::vector<HandSelectState> states;
  std::vector<Action> human;
  const long n = 40, k = 23;
  for (long i = 0; i < n; ++i) {
    states.push_back(state(0.8, 0.2));  // rule says left
    human.push_back(i < k ? Action::UseLeftHand : Action::UseRightHand);
  }
  const PolicyReport report = evaluate_policy(states, human, cfg);
  EXPECT_DOUBLE_EQ(report.agreement, static_cast<double>(k) / static_cast<double>(n));
  EXPECT_EQ(report.total_reward, k * cfg.bonus - (n - k) * cfg.penalty);
}

TEST(EvaluatePolicy, EdgeCases) {
  const PolicyReport empty = evaluate_policy({}, {}, RewardConfig{});
  EXPECT_DOUBLE_EQ(empty.agreement, 0.0);
  EXPECT_DOUBLE_EQ(empty.total_reward, 0.0);
  EXPECT_THROW(evaluate_policy({state(0.1, 0.2)}, {}, RewardConfig{}), DataError);
}
