#include "itsg/handselect.hpp"

#include <cmath>

#include "itsg/demonstration.hpp"

namespace itsg {

const char* to_string(Action a) {
  return a == Action::UseLeftHand ? "use_left_hand" : "use_right_hand";
}

Action action_from_string(const std::string& s) {
  if (s == "use_left_hand") return Action::UseLeftHand;
  if (s == "use_right_hand") return Action::UseRightHand;
  throw DataError("unknown action: " + s);
}

Action select_hand(const HandSelectState& s) {
  if (!std::isfinite(s.d_left_target) || !std::isfinite(s.d_right_target))
    throw DataError("hand selection requires finite target distances");
  return s.d_right_target < s.d_left_target ? Action::UseLeftHand : Action::UseRightHand;
}

double reward(Action a, Action a_star, const RewardConfig& cfg) {
  return a == a_star ? cfg.bonus : -cfg.penalty;
}

PolicyReport evaluate_policy(const std::vector<HandSelectState>& states,
                             const std::vector<Action>& human_actions,
                             const RewardConfig& cfg) {
  if (states.size() != human_actions.size())
    throw DataError("states and demonstrated actions differ in length");
  PolicyReport report;
  if (states.empty()) return report;
  long matches = 0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const Action a = select_hand(states[i]);
    if (a == human_actions[i]) ++matches;
    report.total_reward += reward(a, human_actions[i], cfg);
  }
  report.agreement = static_cast<double>(matches) / static_cast<double>(states.size());
  return report;
}

}  // namespace itsg
