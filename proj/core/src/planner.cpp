#include "itsg/planner.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

namespace itsg {

namespace {

struct Placement {
  double pick_t = 0.0;
  double start_t = 0.0;
  double end_t = 0.0;
  std::string hand_id;
  std::string side;  // "left" or "right"
  std::string object_id;
  std::string object_label;
  std::string partner_label;  // background the object comes to rest against
  bool has_partner = false;
};

std::string side_of(const Demonstration& demo, const std::string& hand_id) {
  const EntityTrack* tr = demo.find(hand_id);
  if (tr != nullptr && tr->kind == EntityKind::HandRight) return "right";
  return "left";
}

std::string label_of(const Demonstration& demo, const std::string& id) {
  const EntityTrack* tr = demo.find(id);
  return tr != nullptr && !tr->label.empty() ? tr->label : id;
}

// The background object the placed one ends up resting against, read off the
// timeline's essential edges inside the placement interval.
bool find_partner(const GraphTimeline& timeline, const Placement& p, std::string* out) {
  for (auto it = timeline.graphs.rbegin(); it != timeline.graphs.rend(); ++it) {
    if (it->t < p.start_t || it->t >= p.end_t) continue;
    for (const SceneEdge& e : it->edges)
      if (e.from_id == p.object_id && e.relation == InteractionKind::EssentialContact) {
        *out = e.to_id;
        return true;
      }
  }
  return false;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

const Placement* member_for_side(const std::vector<Placement>& group, const std::string& side) {
  for (const Placement& p : group)
    if (p.side == side) return &p;
  return nullptr;
}

}  // namespace

BehaviorTree emit_plan(const GraphTimeline& timeline, const std::vector<Segment>& segments,
                       const Demonstration& demo, const AnalysisConfig& cfg) {
  cfg.validate();
  BehaviorTree plan;

  std::vector<Placement> placements;
  for (const Segment& s : segments) {
    if (s.primitive != Primitive::Place || !s.essential || !s.object_id) continue;
    Placement p;
    p.start_t = s.start_t;
    p.end_t = s.end_t;
    p.pick_t = s.start_t;
    for (const Segment& t : segments)
      if (t.hand_id == s.hand_id && t.primitive == Primitive::Transport &&
          t.end_t == s.start_t)
        p.pick_t = t.start_t;
    p.hand_id = s.hand_id;
    p.side = side_of(demo, s.hand_id);
    p.object_id = *s.object_id;
    p.object_label = label_of(demo, p.object_id);
    std::string partner_id;
    if (find_partner(timeline, p, &partner_id)) {
      p.has_partner = true;
      p.partner_label = label_of(demo, partner_id);
    }
    placements.push_back(std::move(p));
  }
  std::sort(placements.begin(), placements.end(), [](const Placement& a, const Placement& b) {
    return std::tie(a.start_t, a.hand_id) < std::tie(b.start_t, b.hand_id);
  });

  // Overlapping placements by opposite hands act as one coordinated group.
  std::vector<std::vector<Placement>> groups;
  for (Placement& p : placements) {
    bool merged = false;
    if (!groups.empty()) {
      for (const Placement& m : groups.back())
        if (m.side != p.side && p.start_t < m.end_t && m.start_t < p.end_t) merged = true;
    }
    if (merged)
      groups.back().push_back(std::move(p));
    else
      groups.push_back({std::move(p)});
  }

  std::vector<std::string> placed_labels;
  std::set<std::string> placed_ids;
  for (const auto& group : groups) {
    const bool dual = group.size() > 1;
    const Placement* left = member_for_side(group, "left");
    const Placement* right = member_for_side(group, "right");

    PlanNode pick, place;
    if (dual && left != nullptr && right != nullptr) {
      pick.node = "PickObjDual";
      place.node = "PlaceObjDual";
      pick.param = place.param =
          "left: " + left->object_id + ", right: " + right->object_id;
      pick.reason = "Acquire " + left->object_label + " with the left hand and " +
                    right->object_label + " with the right hand, as both placements were " +
                    "demonstrated together.";
      pick.verify = left->object_label + " is held by the left hand and " +
                    right->object_label + " by the right hand.";
      auto rest = [](const Placement& p) {
        return p.has_partner ? p.object_label + " against " + p.partner_label
                             : p.object_label + " at its demonstrated pose";
      };
      place.reason = "Set down " + rest(*left) + " and " + rest(*right) +
                     " in one coordinated motion.";
      place.verify = rest(*left) + " and " + rest(*right) + ", both stable.";
    } else {
      const Placement& p = group.front();
      pick.node = "PickObj";
      place.node = "PlaceObj";
      pick.param = place.param = p.side + ": " + p.object_id;
      pick.reason = "Acquire " + p.object_label + " with the " + p.side +
                    " hand, matching the demonstrated grasp.";
      pick.verify = p.object_label + " is held by the " + p.side + " hand.";
      if (p.has_partner) {
        place.reason = "Place " + p.object_label + " against " + p.partner_label +
                       " to reproduce the demonstrated contact.";
        place.verify = p.object_label + " rests against " + p.partner_label + ".";
      } else {
        place.reason = "Place " + p.object_label + " at its demonstrated target pose.";
        place.verify = p.object_label + " rests at the target pose.";
      }
    }
    plan.task_planning.push_back(std::move(pick));
    plan.task_planning.push_back(std::move(place));
    for (const Placement& p : group) {
      if (placed_ids.insert(p.object_id).second) placed_labels.push_back(p.object_label);
    }
  }

  if (groups.empty()) {
    plan.final_analysis =
        "No placement was confirmed by a stable object contact; the demonstration "
        "yields no plan steps.";
    return plan;
  }

  std::vector<std::string> unplaced;
  for (const EntityTrack* obj : demo.objects())
    if (placed_ids.count(obj->id) == 0) unplaced.push_back(label_of(demo, obj->id));

  std::ostringstream fa;
  fa << "The plan reproduces " << groups.size() << " placement group"
     << (groups.size() == 1 ? "" : "s") << " as " << plan.task_planning.size()
     << " nodes; placed: " << join(placed_labels, ", ") << ".";
  if (!unplaced.empty())
    fa << " Observed but never placed: " << join(unplaced, ", ") << ".";
  plan.final_analysis = fa.str();
  return plan;
}

std::vector<Subtask> subtasks_from_plan(const BehaviorTree& plan) {
  std::vector<Subtask> out;
  out.reserve(plan.task_planning.size());
  for (std::size_t i = 0; i < plan.task_planning.size(); ++i) {
    const PlanNode& node = plan.task_planning[i];
    Subtask s;
    s.action = node.node;
    s.order_index = static_cast<long>(i);
    std::stringstream ss(node.param);
    std::string pair;
    while (std::getline(ss, pair, ',')) {
      const std::size_t colon = pair.find(':');
      if (colon == std::string::npos) continue;
      auto trim = [](std::string v) {
        const auto b = v.find_first_not_of(' ');
        const auto e = v.find_last_not_of(' ');
        return b == std::string::npos ? std::string() : v.substr(b, e - b + 1);
      };
      const std::string side = trim(pair.substr(0, colon));
      const std::string id = trim(pair.substr(colon + 1));
      if (side.empty() || id.empty()) continue;
      s.hand_roles[side] = id;
      s.objects.push_back(id);
    }
    std::sort(s.objects.begin(), s.objects.end());
    s.objects.erase(std::unique(s.objects.begin(), s.objects.end()), s.objects.end());
    out.push_back(std::move(s));
  }
  return out;
}

std::string subtask_key(const Subtask& s) {
  std::string key = s.action + "|";
  for (const std::string& o : s.objects) key += o + ";";
  key += "|";
  for (const auto& [side, id] : s.hand_roles) key += side + "=" + id + ";";
  return key;
}

double plan_coverage(const std::vector<Subtask>& gt, const std::vector<Subtask>& pred) {
  if (gt.empty()) throw DataError("plan coverage needs a non-empty reference");
  std::set<std::string> have;
  for (const Subtask& s : pred) have.insert(subtask_key(s));
  long hit = 0;
  for (const Subtask& s : gt)
    if (have.count(subtask_key(s)) != 0) ++hit;
  return static_cast<double>(hit) / static_cast<double>(gt.size());
}

double ordering_accuracy(const std::vector<Subtask>& gt, const std::vector<Subtask>& pred,
                         std::size_t* shared) {
  std::map<std::string, long> gt_rank, pred_rank;
  for (const Subtask& s : gt) gt_rank.emplace(subtask_key(s), s.order_index);
  for (const Subtask& s : pred) pred_rank.emplace(subtask_key(s), s.order_index);

  std::vector<std::pair<long, long>> ranks;  // (reference order, predicted order)
  for (const auto& [key, r] : gt_rank) {
    auto it = pred_rank.find(key);
    if (it != pred_rank.end()) ranks.emplace_back(r, it->second);
  }
  if (shared != nullptr) *shared = ranks.size();
  const std::size_t n = ranks.size();
  if (n < 2) throw DataError("ordering accuracy needs at least two shared subtasks");

  long concordant = 0, discordant = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const long a = (ranks[i].first < ranks[j].first) - (ranks[i].first > ranks[j].first);
      const long b = (ranks[i].second < ranks[j].second) - (ranks[i].second > ranks[j].second);
      if (a * b > 0) ++concordant;
      if (a * b < 0) ++discordant;
    }
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  const double tau = static_cast<double>(concordant - discordant) / pairs;
  return (1.0 + tau) / 2.0;
}

double verification_correctness(const std::vector<bool>& gt_flags,
                                const std::vector<bool>& pred_flags) {
  if (gt_flags.size() != pred_flags.size())
    throw DataError("verification flag lists differ in length");
  if (gt_flags.empty()) throw DataError("verification flag lists are empty");
  long agree = 0;
  for (std::size_t i = 0; i < gt_flags.size(); ++i)
    if (gt_flags[i] == pred_flags[i]) ++agree;
  return static_cast<double>(agree) / static_cast<double>(gt_flags.size());
}

double likert_mean(const std::vector<std::vector<double>>& ratings, double scale_max) {
  double sum = 0.0;
  long count = 0;
  for (const auto& row : ratings)
    for (double r : row) {
      if (r < 1.0 || r > scale_max)
        throw DataError("rating outside the 1.." + std::to_string(scale_max) + " scale");
      sum += r;
      ++count;
    }
  if (count == 0) throw DataError("empty rating matrix");
  return sum / static_cast<double>(count);
}

}  // namespace itsg
