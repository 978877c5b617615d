// Dual-arm hand selection: pick the hand whose partner is worse placed,
// which yields the efficient crossing-arm strategy, plus the agreement
// reward used to score the rule against demonstrated choices.
#pragma once

#include <string>
#include <vector>

namespace itsg {

/// The four distances describing one selection decision: each hand's
/// distance to the object to acquire (target) and to the destination
/// (source of the following placement).
struct HandSelectState {
  double d_left_source = 0.0;
  double d_left_target = 0.0;
  double d_right_source = 0.0;
  double d_right_target = 0.0;
};

enum class Action { UseLeftHand, UseRightHand };

const char* to_string(Action a);
Action action_from_string(const std::string& s);

struct RewardConfig {
  double bonus = 1.0;
  double penalty = 1.0;
};

struct PolicyReport {
  double agreement = 0.0;
  double total_reward = 0.0;
};

/// UseLeftHand exactly when the right hand is closer to the target; ties go
/// to the right hand.  Only the two target distances matter.
Action select_hand(const HandSelectState& s);

/// +bonus on agreement with the demonstrated action, -penalty otherwise.
double reward(Action a, Action a_star, const RewardConfig& cfg);

/// Agreement ratio and accumulated reward over paired decisions.
PolicyReport evaluate_policy(const std::vector<HandSelectState>& states,
                             const std::vector<Action>& human_actions,
                             const RewardConfig& cfg);

}  // namespace itsg
