#include "itsg/segmentation.hpp"

#include <algorithm>
#include <tuple>

namespace itsg {

const char* to_string(Primitive p) {
  switch (p) {
    case Primitive::Reach: return "reach";
    case Primitive::Transport: return "transport";
    case Primitive::Place: return "place";
    case Primitive::Retreat: return "retreat";
    case Primitive::Idle: return "idle";
  }
  return "?";
}

Primitive primitive_from_string(const std::string& s) {
  if (s == "reach") return Primitive::Reach;
  if (s == "transport") return Primitive::Transport;
  if (s == "place") return Primitive::Place;
  if (s == "retreat") return Primitive::Retreat;
  if (s == "idle") return Primitive::Idle;
  throw DataError("unknown primitive: " + s);
}

namespace {

// A contiguous same-object engagement of one hand: the chain of
// coupled-motion / docked events from grasp to release.
struct Episode {
  std::string object_id;
  double start_t = 0.0;
  double end_t = 0.0;
  std::vector<const InteractionEvent*> chain;  // time-ordered constituent events
  double place_start = 0.0;  // begin of placement evidence; == end_t when none
  bool has_place = false;
  bool essential = false;
};

std::vector<Episode> hand_episodes(const std::string& hand_id,
                                   const std::vector<InteractionEvent>& events) {
  std::vector<const InteractionEvent*> ho;
  for (const InteractionEvent& ev : events)
    if (ev.subject_id == hand_id &&
        (ev.kind == InteractionKind::CoupledMotion || ev.kind == InteractionKind::Docked))
      ho.push_back(&ev);
  std::sort(ho.begin(), ho.end(), [](const InteractionEvent* a, const InteractionEvent* b) {
    return a->start_t < b->start_t;
  });

  std::vector<Episode> episodes;
  for (const InteractionEvent* ev : ho) {
    const bool chains = !episodes.empty() && episodes.back().object_id == ev->object_id &&
                        episodes.back().end_t == ev->start_t;
    if (!chains) {
      Episode e;
      e.object_id = ev->object_id;
      e.start_t = ev->start_t;
      episodes.push_back(std::move(e));
    }
    Episode& e = episodes.back();
    e.end_t = ev->end_t;
    e.chain.push_back(ev);
  }
  return episodes;
}

void fold_in_contacts(std::vector<Episode>& episodes,
                      const std::vector<InteractionEvent>& events) {
  for (Episode& e : episodes) {
    // Placement evidence: the trailing docked run (a docked flicker in the
    // middle of a transport does not end it) ...
    for (auto it = e.chain.rbegin(); it != e.chain.rend(); ++it) {
      if ((*it)->kind != InteractionKind::Docked) break;
      e.has_place = true;
      e.place_start = (*it)->start_t;
    }
    // ... or the essential contact of the carried object still open at
    // release, whichever starts first.  A contact closed before release (a
    // departure from the previous resting spot, or a slide-off) is not
    // placement evidence.  Transient contacts are filtered out entirely.
    for (const InteractionEvent& ev : events) {
      if (ev.subject_id != e.object_id) continue;
      if (ev.kind != InteractionKind::EssentialContact) continue;
      if (ev.end_t != e.end_t || ev.start_t >= e.end_t) continue;
      e.essential = true;
      const double s = std::max(ev.start_t, e.start_t);
      if (!e.has_place || s < e.place_start) {
        e.has_place = true;
        e.place_start = s;
      }
    }
    if (!e.has_place) e.place_start = e.end_t;
  }
}

}  // namespace

std::vector<Segment> segment(const GraphTimeline& timeline,
                             const std::vector<InteractionEvent>& events,
                             const Demonstration& demo, const AnalysisConfig& cfg) {
  cfg.validate();
  if (demo.tracks.empty()) return {};
  if (!timeline.graphs.empty() &&
      static_cast<long>(timeline.graphs.size()) != demo.frame_count())
    throw DataError("timeline does not match the demonstration");

  const auto& samples = demo.tracks.front().samples;
  const double t0 = samples.front().t;
  const double t_end = samples.back().t;
  std::vector<Segment> out;
  if (!(t0 < t_end)) return out;

  auto push = [&out](double s, double e, const std::string& hand, Primitive prim,
                     std::optional<std::string> obj, bool essential) {
    if (s < e) out.push_back({s, e, hand, prim, std::move(obj), essential});
  };

  for (const EntityTrack* hand : demo.hands()) {
    std::vector<Episode> episodes = hand_episodes(hand->id, events);
    fold_in_contacts(episodes, events);

    if (episodes.empty()) {
      push(t0, t_end, hand->id, Primitive::Idle, std::nullopt, false);
      continue;
    }
    double cursor = t0;
    for (const Episode& e : episodes) {
      push(cursor, e.start_t, hand->id, Primitive::Reach, e.object_id, false);
      push(e.start_t, e.place_start, hand->id, Primitive::Transport, e.object_id, false);
      push(e.place_start, e.end_t, hand->id, Primitive::Place, e.object_id, e.essential);
      cursor = e.end_t;
    }
    push(cursor, t_end, hand->id, Primitive::Retreat, episodes.back().object_id, false);
  }

  std::sort(out.begin(), out.end(), [](const Segment& a, const Segment& b) {
    return std::tie(a.start_t, a.hand_id, a.end_t) < std::tie(b.start_t, b.hand_id, b.end_t);
  });
  return out;
}

std::vector<double> boundaries(const std::vector<Segment>& segments) {
  if (segments.empty()) return {};
  double lo = segments.front().start_t, hi = segments.front().end_t;
  std::vector<double> instants;
  for (const Segment& s : segments) {
    lo = std::min(lo, s.start_t);
    hi = std::max(hi, s.end_t);
    instants.push_back(s.start_t);
    instants.push_back(s.end_t);
  }
  std::sort(instants.begin(), instants.end());
  instants.erase(std::unique(instants.begin(), instants.end()), instants.end());
  std::erase_if(instants, [lo, hi](double t) { return t == lo || t == hi; });
  return instants;
}

}  // namespace itsg
