#include "itsg/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <tuple>

namespace itsg {
namespace {

// Phase timing: the carried object arrives at this fraction of [grasp, place]
// and settles for the remainder; reach/retreat fill up to this share of the
// free gap around an action, capped in seconds.
constexpr double kArriveFraction = 0.7;
constexpr double kMaxReachS = 1.2;
constexpr double kMaxRetreatS = 0.8;
constexpr double kGapShare = 0.9;
constexpr double kDerivedTailS = 2.0;   // slack after the last place when duration is derived
constexpr double kJitterQuantum = 0.01; // corpus jitter step; matches the default histogram bin

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (const unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t mix64(std::uint64_t seed, std::uint64_t key) { return splitmix64(seed ^ splitmix64(key)); }

long int_in(std::mt19937_64& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

// Minimum-jerk profile: zero velocity and acceleration at both ends.
double minjerk(double u) {
  u = std::clamp(u, 0.0, 1.0);
  return u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
}

struct Phase {
  double t0 = 0.0, t1 = 0.0;
  Eigen::Vector3d p0, p1, th0, th1;
};

struct EntityPlan {
  Eigen::Vector3d rest_p, rest_th;
  std::vector<Phase> phases;  // time-ordered, non-overlapping, continuous

  std::pair<Eigen::Vector3d, Eigen::Vector3d> pose_at(double t) const {
    const Phase* last = nullptr;
    for (const Phase& ph : phases) {
      if (ph.t0 <= t)
        last = &ph;
      else
        break;
    }
    if (last == nullptr) return {rest_p, rest_th};
    if (t >= last->t1) return {last->p1, last->th1};
    const double s = minjerk((t - last->t0) / (last->t1 - last->t0));
    return {last->p0 + s * (last->p1 - last->p0), last->th0 + s * (last->th1 - last->th0)};
  }

  bool moving_at(double t) const {
    for (const Phase& ph : phases)
      if (ph.t0 < t && t < ph.t1) return true;
    return false;
  }
};

struct ScheduleEntry {
  const ScriptAction* action = nullptr;
  double arrive_t = 0.0;
  double reach_start = 0.0;
  Eigen::Vector3d pick_p, pick_th;              // object pose when grasped
  std::optional<std::string> partner;           // contact partner at the target
};

const ScriptEntity* find_entity(const DemoScript& script, const std::string& id) {
  for (const ScriptEntity& e : script.entities)
    if (e.id == id) return &e;
  return nullptr;
}

double resolve_duration(const DemoScript& script) {
  if (script.duration > 0.0) return script.duration;
  double last = 0.0;
  for (const ScriptAction& a : script.actions) last = std::max(last, a.place_t);
  return last + kDerivedTailS;
}

struct BuiltPlans {
  std::map<std::string, EntityPlan> plans;
  std::vector<ScheduleEntry> schedule;  // in grasp order
};

BuiltPlans build_plans(const DemoScript& script, double duration) {
  BuiltPlans out;
  for (const ScriptEntity& e : script.entities) {
    EntityPlan plan;
    plan.rest_p = e.p;
    plan.rest_th = e.theta;
    out.plans.emplace(e.id, std::move(plan));
  }

  std::vector<const ScriptAction*> ordered;
  for (const ScriptAction& a : script.actions) ordered.push_back(&a);
  std::stable_sort(ordered.begin(), ordered.end(), [](const ScriptAction* a, const ScriptAction* b) {
    return std::tie(a->grasp_t, a->hand_id) < std::tie(b->grasp_t, b->hand_id);
  });

  // Objects first: each transport starts from wherever the object last rested.
  std::map<const ScriptAction*, std::size_t> entry_of;
  for (const ScriptAction* a : ordered) {
    EntityPlan& obj = out.plans.at(a->object_id);
    ScheduleEntry entry;
    entry.action = a;
    entry.arrive_t = a->grasp_t + kArriveFraction * (a->place_t - a->grasp_t);
    entry.pick_p = obj.phases.empty() ? obj.rest_p : obj.phases.back().p1;
    entry.pick_th = obj.phases.empty() ? obj.rest_th : obj.phases.back().th1;
    Phase transport;
    transport.t0 = a->grasp_t;
    transport.t1 = entry.arrive_t;
    transport.p0 = entry.pick_p;
    transport.p1 = a->place_p;
    transport.th0 = entry.pick_th;
    transport.th1 = a->place_theta;
    obj.phases.push_back(transport);
    entry_of[a] = out.schedule.size();
    out.schedule.push_back(std::move(entry));
  }

  // Hands: reach to the pick pose, carry with the exact transport phase the
  // object uses (the two trajectories are therefore bit-identical while
  // coupled), linger through the settle, then retreat to rest.
  std::map<std::string, std::vector<const ScriptAction*>> per_hand;
  for (const ScriptAction* a : ordered) per_hand[a->hand_id].push_back(a);
  for (auto& [hand_id, acts] : per_hand) {
    EntityPlan& hand = out.plans.at(hand_id);
    double free_t = 0.0;
    Eigen::Vector3d free_p = hand.rest_p;
    for (std::size_t i = 0; i < acts.size(); ++i) {
      const ScriptAction* a = acts[i];
      ScheduleEntry& entry = out.schedule[entry_of.at(a)];
      const double rd = std::min(kMaxReachS, kGapShare * (a->grasp_t - free_t));
      entry.reach_start = a->grasp_t - rd;

      Phase reach;
      reach.t0 = entry.reach_start;
      reach.t1 = a->grasp_t;
      reach.p0 = free_p;
      reach.p1 = entry.pick_p;
      reach.th0 = reach.th1 = hand.rest_th;
      hand.phases.push_back(reach);

      Phase carry;
      carry.t0 = a->grasp_t;
      carry.t1 = entry.arrive_t;
      carry.p0 = entry.pick_p;
      carry.p1 = a->place_p;
      carry.th0 = carry.th1 = hand.rest_th;
      hand.phases.push_back(carry);

      const double next_g = i + 1 < acts.size() ? acts[i + 1]->grasp_t : duration;
      const double rr = std::min(kMaxRetreatS, kGapShare * (next_g - a->place_t));
      Phase retreat;
      retreat.t0 = a->place_t;
      retreat.t1 = a->place_t + rr;
      retreat.p0 = a->place_p;
      retreat.p1 = hand.rest_p;
      retreat.th0 = retreat.th1 = hand.rest_th;
      hand.phases.push_back(retreat);
      free_t = retreat.t1;
      free_p = hand.rest_p;
    }
  }
  return out;
}

void resolve_partners(const DemoScript& script, const BuiltPlans& built,
                      std::vector<ScheduleEntry>& schedule, double oo_dist) {
  for (ScheduleEntry& entry : schedule) {
    if (entry.action->background_near) {
      entry.partner = *entry.action->background_near;
      continue;
    }
    double best = oo_dist;
    for (const ScriptEntity& e : script.entities) {
      if (e.kind != EntityKind::Object || e.id == entry.action->object_id) continue;
      const EntityPlan& plan = built.plans.at(e.id);
      if (plan.moving_at(entry.arrive_t)) continue;
      const double d = (plan.pose_at(entry.arrive_t).first - entry.action->place_p).norm();
      if (d < best) {
        best = d;
        entry.partner = e.id;
      }
    }
  }
}

// Three standard normals per call: two Box-Muller pairs, fourth value unused.
Eigen::Vector3d normal3(std::mt19937_64& rng) {
  auto unit = [&rng]() { return ((rng() >> 11) + 1) * 0x1.0p-53; };  // (0, 1]
  const double u1 = unit(), u2 = unit(), u3 = unit(), u4 = unit();
  const double r1 = std::sqrt(-2.0 * std::log(u1));
  const double r2 = std::sqrt(-2.0 * std::log(u3));
  constexpr double kTau = 6.283185307179586476925286766559;
  return {r1 * std::cos(kTau * u2), r1 * std::sin(kTau * u2), r2 * std::cos(kTau * u4)};
}

Demonstration render(const DemoScript& script, const BuiltPlans& built, double duration) {
  Demonstration demo;
  demo.rate = script.rate;
  demo.meta["source"] = "synthetic";
  demo.meta["seed"] = std::to_string(script.seed);
  const long frames = static_cast<long>(std::floor(duration * script.rate + 1e-9)) + 1;
  for (const ScriptEntity& e : script.entities) {
    EntityTrack track;
    track.id = e.id;
    track.kind = e.kind;
    track.label = e.label;
    track.samples.reserve(frames);
    const EntityPlan& plan = built.plans.at(e.id);
    std::mt19937_64 rng(mix64(script.seed, fnv1a64(e.id)));
    for (long k = 0; k < frames; ++k) {
      PoseSample s;
      s.t = k / script.rate;
      auto [p, th] = plan.pose_at(s.t);
      if (script.noise_sigma > 0.0) p += script.noise_sigma * normal3(rng);
      s.p = p;
      s.theta = th;
      track.samples.push_back(std::move(s));
    }
    demo.tracks.push_back(std::move(track));
  }
  return demo;
}

std::string side_of_hand(const DemoScript& script, const std::string& hand_id) {
  const ScriptEntity* e = find_entity(script, hand_id);
  return e != nullptr && e->kind == EntityKind::HandLeft ? "left" : "right";
}

GroundTruth make_ground_truth(const DemoScript& script, const BuiltPlans& built,
                              const Demonstration& demo, double duration,
                              const AnalysisConfig& cfg) {
  GroundTruth gt;

  for (const ScheduleEntry& entry : built.schedule) {
    const ScriptAction* a = entry.action;
    InteractionEvent cm;
    cm.kind = InteractionKind::CoupledMotion;
    cm.subject_id = a->hand_id;
    cm.object_id = a->object_id;
    cm.start_t = a->grasp_t;
    cm.end_t = a->place_t;
    gt.events.push_back(cm);

    InteractionEvent docked = cm;
    docked.kind = InteractionKind::Docked;
    docked.start_t = entry.arrive_t;
    gt.events.push_back(docked);

    if (entry.partner) {
      InteractionEvent contact;
      contact.kind = InteractionKind::EssentialContact;
      contact.subject_id = a->object_id;
      contact.object_id = *entry.partner;
      contact.start_t = entry.arrive_t;
      contact.end_t = a->place_t;
      gt.events.push_back(contact);
    }

    gt.boundaries.push_back(a->grasp_t);
    gt.boundaries.push_back(entry.arrive_t);
    gt.boundaries.push_back(a->place_t);
  }
  std::sort(gt.events.begin(), gt.events.end(),
            [](const InteractionEvent& a, const InteractionEvent& b) {
              return std::tie(a.start_t, a.subject_id, a.object_id, a.kind) <
                     std::tie(b.start_t, b.subject_id, b.object_id, b.kind);
            });

  std::sort(gt.boundaries.begin(), gt.boundaries.end());
  gt.boundaries.erase(std::unique(gt.boundaries.begin(), gt.boundaries.end()),
                      gt.boundaries.end());
  const long frames = static_cast<long>(std::floor(duration * script.rate + 1e-9)) + 1;
  const double t_end = (frames - 1) / script.rate;
  std::erase_if(gt.boundaries, [t_end](double b) { return b == 0.0 || b == t_end; });

  // Confirmed placements grouped exactly the way the planner groups them:
  // overlapping opposite-hand placements form one coordinated subtask.
  struct GtPlacement {
    double start_t, end_t;
    std::string hand_id, side, object_id;
  };
  std::vector<GtPlacement> placements;
  for (const ScheduleEntry& entry : built.schedule) {
    if (!entry.partner) continue;
    placements.push_back({entry.arrive_t, entry.action->place_t, entry.action->hand_id,
                          side_of_hand(script, entry.action->hand_id), entry.action->object_id});
  }
  std::sort(placements.begin(), placements.end(), [](const GtPlacement& a, const GtPlacement& b) {
    return std::tie(a.start_t, a.hand_id) < std::tie(b.start_t, b.hand_id);
  });
  std::vector<std::vector<GtPlacement>> groups;
  for (GtPlacement& p : placements) {
    bool merged = false;
    if (!groups.empty()) {
      for (const GtPlacement& m : groups.back())
        if (m.side != p.side && p.start_t < m.end_t && m.start_t < p.end_t) merged = true;
    }
    if (merged)
      groups.back().push_back(std::move(p));
    else
      groups.push_back({std::move(p)});
  }
  for (std::size_t g = 0; g < groups.size(); ++g) {
    Subtask s;
    s.action = groups[g].size() > 1 ? "PlaceObjDual" : "PlaceObj";
    s.order_index = static_cast<long>(g);
    for (const GtPlacement& p : groups[g]) {
      s.objects.push_back(p.object_id);
      s.hand_roles[p.side] = p.object_id;
    }
    std::sort(s.objects.begin(), s.objects.end());
    gt.subtasks.push_back(std::move(s));
  }

  // Hand decisions exist only for bimanual scenes: the demonstrated choice,
  // plus the four hand-to-goal distances frozen at the moment the reach began.
  const ScriptEntity* left = nullptr;
  const ScriptEntity* right = nullptr;
  for (const ScriptEntity& e : script.entities) {
    if (e.kind == EntityKind::HandLeft) left = &e;
    if (e.kind == EntityKind::HandRight) right = &e;
  }
  if (left != nullptr && right != nullptr) {
    const EntityPlan& lp = built.plans.at(left->id);
    const EntityPlan& rp = built.plans.at(right->id);
    for (const ScheduleEntry& entry : built.schedule) {
      const ScriptAction* a = entry.action;
      gt.hand_choices.push_back(a->hand_id == left->id ? Action::UseLeftHand
                                                       : Action::UseRightHand);
      const Eigen::Vector3d l = lp.pose_at(entry.reach_start).first;
      const Eigen::Vector3d r = rp.pose_at(entry.reach_start).first;
      HandSelectState state;
      state.d_left_target = (l - entry.pick_p).norm();
      state.d_right_target = (r - entry.pick_p).norm();
      state.d_left_source = (l - a->place_p).norm();
      state.d_right_source = (r - a->place_p).norm();
      gt.hand_states.push_back(state);
    }
  }

  // Reference timeline: the noise-free twin of this demonstration run through
  // the detector, so per-frame comparisons see identical grids and labels.
  if (script.noise_sigma == 0.0) {
    gt.timeline = build_timeline(demo, detect_events(demo, cfg));
  } else {
    DemoScript clean = script;
    clean.noise_sigma = 0.0;
    const Demonstration twin = render(clean, built, duration);
    gt.timeline = build_timeline(twin, detect_events(twin, cfg));
  }
  return gt;
}

}  // namespace

void DemoScript::validate() const {
  if (!(rate > 0.0) || !std::isfinite(rate)) throw DataError("script rate must be positive");
  if (noise_sigma < 0.0 || !std::isfinite(noise_sigma))
    throw DataError("script noise sigma must be non-negative");
  if (duration < 0.0 || !std::isfinite(duration))
    throw DataError("script duration must be non-negative");

  std::set<std::string> ids;
  long hands_left = 0, hands_right = 0;
  for (const ScriptEntity& e : entities) {
    if (e.id.empty()) throw DataError("script entity with empty id");
    if (!ids.insert(e.id).second) throw DataError("duplicate script entity id: " + e.id);
    if (e.kind == EntityKind::HandLeft) ++hands_left;
    if (e.kind == EntityKind::HandRight) ++hands_right;
    if (!e.p.allFinite() || !e.theta.allFinite())
      throw DataError("non-finite rest pose for entity " + e.id);
  }
  if (hands_left + hands_right == 0) throw DataError("script needs at least one hand entity");
  if (hands_left > 1 || hands_right > 1)
    throw DataError("script allows at most one hand per side");

  std::map<std::string, std::vector<std::pair<double, double>>> hand_spans, object_spans;
  double last_place = 0.0;
  for (const ScriptAction& a : actions) {
    const ScriptEntity* hand = find_entity(*this, a.hand_id);
    if (hand == nullptr || hand->kind == EntityKind::Object)
      throw DataError("action hand is not a scripted hand: " + a.hand_id);
    const ScriptEntity* object = find_entity(*this, a.object_id);
    if (object == nullptr || object->kind != EntityKind::Object)
      throw DataError("action object is not a scripted object: " + a.object_id);
    if (a.background_near) {
      const ScriptEntity* bg = find_entity(*this, *a.background_near);
      if (bg == nullptr || bg->kind != EntityKind::Object || bg->id == a.object_id)
        throw DataError("action contact partner is not a distinct scripted object: " +
                        *a.background_near);
    }
    if (!std::isfinite(a.grasp_t) || !std::isfinite(a.place_t) || a.grasp_t <= 0.0 ||
        a.place_t <= a.grasp_t)
      throw DataError("action times must satisfy 0 < grasp < place");
    if (!a.place_p.allFinite() || !a.place_theta.allFinite())
      throw DataError("non-finite placement pose for object " + a.object_id);
    hand_spans[a.hand_id].push_back({a.grasp_t, a.place_t});
    object_spans[a.object_id].push_back({a.grasp_t, a.place_t});
    last_place = std::max(last_place, a.place_t);
  }
  auto check_spans = [](std::map<std::string, std::vector<std::pair<double, double>>>& spans,
                        const char* what) {
    for (auto& [id, list] : spans) {
      std::sort(list.begin(), list.end());
      for (std::size_t i = 1; i < list.size(); ++i)
        if (list[i].first <= list[i - 1].second)
          throw DataError(std::string("overlapping actions for ") + what + " " + id);
    }
  };
  check_spans(hand_spans, "hand");
  check_spans(object_spans, "object");

  if (actions.empty() && duration == 0.0)
    throw DataError("a script without actions needs an explicit duration");
  if (duration > 0.0 && !actions.empty() && duration <= last_place)
    throw DataError("script duration ends before the last placement");
}

std::pair<Demonstration, GroundTruth> generate(const DemoScript& script,
                                               const AnalysisConfig& cfg) {
  script.validate();
  cfg.validate();
  const double duration = resolve_duration(script);
  BuiltPlans built = build_plans(script, duration);
  resolve_partners(script, built, built.schedule, cfg.oo_dist);
  Demonstration demo = render(script, built, duration);
  GroundTruth gt = make_ground_truth(script, built, demo, duration, cfg);
  return {std::move(demo), std::move(gt)};
}

std::vector<DemoScript> corpus_scripts(long n, const DemoScript& tmpl, std::uint64_t seed) {
  if (n < 0) throw std::invalid_argument("corpus size must be non-negative");
  tmpl.validate();
  std::vector<DemoScript> out;
  out.reserve(static_cast<std::size_t>(n));
  std::set<std::string> moved;
  for (const ScriptAction& a : tmpl.actions) moved.insert(a.object_id);

  for (long i = 0; i < n; ++i) {
    const std::uint64_t member_seed =
        splitmix64(seed + 0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(i + 1));
    DemoScript script = tmpl;

    std::mt19937_64 scene_rng(mix64(member_seed, fnv1a64("scene")));
    const double dx = kJitterQuantum * int_in(scene_rng, -3, 3);
    const double dy = kJitterQuantum * int_in(scene_rng, -3, 3);
    for (ScriptEntity& e : script.entities) {
      e.p.x() += dx;
      e.p.y() += dy;
      if (e.kind != EntityKind::Object || moved.count(e.id) != 0) {
        std::mt19937_64 rng(mix64(member_seed, fnv1a64("jitter:" + e.id)));
        e.p.x() += kJitterQuantum * int_in(rng, -2, 2);
        e.p.y() += kJitterQuantum * int_in(rng, -2, 2);
      }
    }
    for (std::size_t a = 0; a < script.actions.size(); ++a) {
      ScriptAction& act = script.actions[a];
      act.place_p.x() += dx;
      act.place_p.y() += dy;
      std::mt19937_64 rng(mix64(member_seed, fnv1a64("action:" + std::to_string(a))));
      const double shift = 0.05 * int_in(rng, -3, 3);
      act.grasp_t += shift;
      act.place_t += shift;
      act.place_p.x() += kJitterQuantum * int_in(rng, -1, 1);
      act.place_p.y() += kJitterQuantum * int_in(rng, -1, 1);
    }
    script.seed = mix64(member_seed, fnv1a64("noise"));
    out.push_back(std::move(script));
  }
  return out;
}

std::vector<std::pair<Demonstration, GroundTruth>> corpus(long n, const DemoScript& tmpl,
                                                          std::uint64_t seed,
                                                          const AnalysisConfig& cfg) {
  std::vector<std::pair<Demonstration, GroundTruth>> out;
  out.reserve(static_cast<std::size_t>(std::max(0l, n)));
  for (const DemoScript& script : corpus_scripts(n, tmpl, seed))
    out.push_back(generate(script, cfg));
  return out;
}

Eigen::Vector3d scripted_position(const DemoScript& script, const std::string& entity_id,
                                  double t) {
  script.validate();
  if (find_entity(script, entity_id) == nullptr)
    throw DataError("unknown scripted entity: " + entity_id);
  const BuiltPlans built = build_plans(script, resolve_duration(script));
  return built.plans.at(entity_id).pose_at(t).first;
}

namespace {

ScriptEntity make_entity(std::string id, EntityKind kind, std::string label, double x, double y) {
  ScriptEntity e;
  e.id = std::move(id);
  e.kind = kind;
  e.label = std::move(label);
  e.p = {x, y, 0.0};
  return e;
}

ScriptAction make_action(std::string hand, std::string object, double grasp, double place,
                         double px, double py, std::optional<std::string> near = std::nullopt) {
  ScriptAction a;
  a.hand_id = std::move(hand);
  a.object_id = std::move(object);
  a.grasp_t = grasp;
  a.place_t = place;
  a.place_p = {px, py, 0.0};
  a.background_near = std::move(near);
  return a;
}

}  // namespace

DemoScript single_pick_place_script() {
  DemoScript s;
  s.entities = {
      make_entity("hand_r", EntityKind::HandRight, "right hand", 0.455, -0.295),
      make_entity("block_a", EntityKind::Object, "red block", 0.255, -0.145),
      make_entity("base", EntityKind::Object, "base plate", 0.005, 0.205),
  };
  s.actions = {make_action("hand_r", "block_a", 3.0, 4.8, 0.005, 0.105, "base")};
  s.duration = 7.5;
  s.seed = 1;
  return s;
}

DemoScript relocation_script() {
  DemoScript s;
  s.entities = {
      make_entity("hand_r", EntityKind::HandRight, "right hand", 0.455, -0.295),
      make_entity("block_a", EntityKind::Object, "red block", 0.255, -0.145),
  };
  s.actions = {make_action("hand_r", "block_a", 3.0, 4.8, -0.245, -0.145)};
  s.duration = 7.5;
  s.seed = 3;
  return s;
}

DemoScript letter_r_script() {
  DemoScript s;
  s.entities = {
      make_entity("hand_l", EntityKind::HandLeft, "left hand", -0.395, 0.005),
      make_entity("hand_r", EntityKind::HandRight, "right hand", 0.405, 0.005),
      make_entity("board", EntityKind::Object, "board", -0.165, -0.095),
      make_entity("spine_1", EntityKind::Object, "spine block 1", 0.005, -0.295),
      make_entity("spine_2", EntityKind::Object, "spine block 2", 0.305, -0.145),
      make_entity("spine_3", EntityKind::Object, "spine block 3", -0.295, 0.205),
      make_entity("bump", EntityKind::Object, "bump block", 0.305, 0.205),
      make_entity("leg", EntityKind::Object, "leg block", 0.305, -0.295),
  };
  s.actions = {
      make_action("hand_l", "spine_1", 2.0, 3.8, 0.005, -0.095, "board"),
      make_action("hand_r", "spine_2", 5.0, 6.8, 0.005, 0.005, "spine_1"),
      make_action("hand_l", "spine_3", 8.0, 9.8, 0.005, 0.105, "spine_2"),
      make_action("hand_r", "bump", 11.0, 12.8, 0.105, 0.105, "spine_3"),
      make_action("hand_l", "leg", 14.0, 15.8, 0.105, -0.115, "spine_1"),
  };
  s.duration = 18.5;
  s.seed = 7;
  return s;
}

DemoScript dual_parallel_script() {
  DemoScript s;
  s.entities = {
      make_entity("hand_l", EntityKind::HandLeft, "left hand", -0.395, 0.005),
      make_entity("hand_r", EntityKind::HandRight, "right hand", 0.405, 0.005),
      make_entity("block_l", EntityKind::Object, "left block", -0.295, -0.195),
      make_entity("block_r", EntityKind::Object, "right block", 0.305, -0.195),
      make_entity("base_l", EntityKind::Object, "left base", -0.195, 0.305),
      make_entity("base_r", EntityKind::Object, "right base", 0.205, 0.305),
  };
  s.actions = {
      make_action("hand_l", "block_l", 3.0, 4.8, -0.195, 0.205, "base_l"),
      make_action("hand_r", "block_r", 3.0, 4.8, 0.205, 0.205, "base_r"),
  };
  s.duration = 7.5;
  s.seed = 11;
  return s;
}

DemoScript crossing_script() {
  DemoScript s;
  s.entities = {
      make_entity("hand_l", EntityKind::HandLeft, "left hand", -0.395, 0.005),
      make_entity("hand_r", EntityKind::HandRight, "right hand", 0.405, 0.005),
      make_entity("block_1", EntityKind::Object, "first block", 0.205, -0.245),
      make_entity("block_2", EntityKind::Object, "second block", -0.195, -0.245),
  };
  // Each block starts on the flank of the hand that does NOT take it, so the
  // demonstrated choices follow the contralateral rule exactly.
  s.actions = {
      make_action("hand_l", "block_1", 2.0, 3.8, -0.145, 0.305),
      make_action("hand_r", "block_2", 5.0, 6.8, 0.155, 0.305),
  };
  s.duration = 9.5;
  s.seed = 13;
  return s;
}

DemoScript idle_script() {
  DemoScript s;
  s.entities = {
      make_entity("hand_r", EntityKind::HandRight, "right hand", 0.405, 0.005),
      make_entity("block_a", EntityKind::Object, "red block", 0.005, 0.205),
  };
  s.duration = 6.0;
  s.seed = 23;
  return s;
}

DemoScript flyby_base_script() {
  DemoScript s;
  s.entities = {
      make_entity("hand_r", EntityKind::HandRight, "right hand", 0.455, -0.345),
      make_entity("block_a", EntityKind::Object, "red block", 0.355, -0.145),
      make_entity("base", EntityKind::Object, "base plate", -0.245, 0.205),
  };
  s.actions = {make_action("hand_r", "block_a", 3.0, 5.0, -0.245, 0.105, "base")};
  s.duration = 8.0;
  s.seed = 17;
  return s;
}

DemoScript with_flyby(const DemoScript& base) {
  if (base.actions.empty()) throw DataError("fly-by variant needs a script with actions");
  const ScriptAction& a = base.actions.front();
  const ScriptEntity* object = find_entity(base, a.object_id);
  if (object == nullptr) throw DataError("fly-by variant: action object missing");
  const Eigen::Vector3d d = a.place_p - object->p;
  const double len = std::hypot(d.x(), d.y());
  if (len <= 0.0) throw DataError("fly-by variant needs a nonzero transport");

  // Drop the bystander beside the point the carried object passes at 45 % of
  // its transport: close enough to matter, far enough to stay untouched.
  const Eigen::Vector3d at = object->p + minjerk(0.45) * d;
  const Eigen::Vector3d perp(d.y() / len, -d.x() / len, 0.0);
  Eigen::Vector3d p = at + 0.185 * perp;
  auto snap = [](double v) { return std::round((v - 0.005) / 0.01) * 0.01 + 0.005; };

  DemoScript script = base;
  ScriptEntity bystander;
  bystander.id = "bystander";
  bystander.kind = EntityKind::Object;
  bystander.label = "bystander block";
  bystander.p = {snap(p.x()), snap(p.y()), p.z()};
  script.entities.push_back(std::move(bystander));
  return script;
}

}  // namespace itsg
