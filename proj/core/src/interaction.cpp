#include "itsg/interaction.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <set>
#include <span>
#include <tuple>

namespace itsg {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::pair<std::string, std::string> pair_key(const std::string& a, const std::string& b) {
  return a <= b ? std::make_pair(a, b) : std::make_pair(b, a);
}

}  // namespace

const char* to_string(InteractionKind kind) {
  switch (kind) {
    case InteractionKind::CoupledMotion: return "coupled_motion";
    case InteractionKind::Docked: return "docked";
    case InteractionKind::EssentialContact: return "essential_contact";
    case InteractionKind::TransientContact: return "transient_contact";
  }
  return "?";
}

InteractionKind interaction_kind_from_string(const std::string& s) {
  if (s == "coupled_motion") return InteractionKind::CoupledMotion;
  if (s == "docked") return InteractionKind::Docked;
  if (s == "essential_contact") return InteractionKind::EssentialContact;
  if (s == "transient_contact") return InteractionKind::TransientContact;
  throw DataError("unknown interaction kind: " + s);
}

SignalCache::SignalCache(const Demonstration& demo, const AnalysisConfig& cfg)
    : demo_(demo), cfg_(cfg) {
  cfg_.validate();
  if (demo_.tracks.empty()) throw DataError("demonstration has no tracks");
  frames_ = static_cast<long>(demo_.tracks.front().samples.size());
  if (frames_ < 2) throw DataError("demonstration too short for windowed analysis");
  for (const EntityTrack& tr : demo_.tracks) {
    if (static_cast<long>(tr.samples.size()) != frames_)
      throw DataError("tracks not on a shared grid: " + tr.id);
    for (long k = 0; k < frames_; ++k)
      if (tr.samples[static_cast<std::size_t>(k)].t !=
          demo_.tracks.front().samples[static_cast<std::size_t>(k)].t)
        throw DataError("tracks not on a shared grid: " + tr.id);
  }
  dt_ = demo_.tracks.front().median_dt();
  const int n = window_samples(cfg_, 1.0 / dt_);
  half_ = n / 2;
}

double SignalCache::time_at(long k) const {
  if (k < frames_)
    return demo_.tracks.front().samples[static_cast<std::size_t>(std::max(k, 0L))].t;
  // One-past-the-end instants for closing half-open intervals.
  return demo_.tracks.front().samples[static_cast<std::size_t>(frames_ - 1)].t +
         dt_ * static_cast<double>(k - frames_ + 1);
}

const EntityTrack& SignalCache::track(const std::string& id) const {
  const EntityTrack* tr = demo_.find(id);
  if (tr == nullptr) throw DataError("unknown entity id: " + id);
  return *tr;
}

const std::vector<double>& SignalCache::distance(const std::string& a, const std::string& b) {
  auto key = pair_key(a, b);
  auto it = dist_.find(key);
  if (it != dist_.end()) return it->second;

  const EntityTrack& ta = track(a);
  const EntityTrack& tb = track(b);
  const int n = 2 * half_ + 1;
  std::vector<double> series(static_cast<std::size_t>(frames_), kNaN);
  for (long k = half_; k + half_ < frames_; ++k) {
    double acc = 0.0;
    for (long j = k - half_; j <= k + half_; ++j) {
      const std::size_t u = static_cast<std::size_t>(j);
      acc += planar_norm(ta.samples[u].p - tb.samples[u].p, cfg_.planar);
    }
    series[static_cast<std::size_t>(k)] = acc / static_cast<double>(n);
  }
  return dist_.emplace(key, std::move(series)).first->second;
}

const std::vector<double>& SignalCache::mi(const std::string& a, const std::string& b) {
  auto key = pair_key(a, b);
  auto it = mi_.find(key);
  if (it != mi_.end()) return it->second;

  const EntityTrack& ta = track(a);
  const EntityTrack& tb = track(b);
  const int n = 2 * half_ + 1;
  const int axes = cfg_.planar ? 2 : 3;
  std::array<std::vector<double>, 3> va, vb;
  for (int ax = 0; ax < axes; ++ax) {
    va[static_cast<std::size_t>(ax)].resize(static_cast<std::size_t>(frames_));
    vb[static_cast<std::size_t>(ax)].resize(static_cast<std::size_t>(frames_));
    for (long j = 0; j < frames_; ++j) {
      const std::size_t u = static_cast<std::size_t>(j);
      va[static_cast<std::size_t>(ax)][u] = ta.samples[u].p[ax];
      vb[static_cast<std::size_t>(ax)][u] = tb.samples[u].p[ax];
    }
  }
  std::vector<double> series(static_cast<std::size_t>(frames_), kNaN);
  for (long k = half_; k + half_ < frames_; ++k) {
    const std::size_t first = static_cast<std::size_t>(k - half_);
    double total = 0.0;
    for (int ax = 0; ax < axes; ++ax) {
      std::span<const double> wx(va[static_cast<std::size_t>(ax)].data() + first,
                                 static_cast<std::size_t>(n));
      std::span<const double> wy(vb[static_cast<std::size_t>(ax)].data() + first,
                                 static_cast<std::size_t>(n));
      total += mutual_information(wx, wy, cfg_);
    }
    series[static_cast<std::size_t>(k)] = total;
  }
  return mi_.emplace(key, std::move(series)).first->second;
}

const std::vector<double>& SignalCache::distance_entropy(const std::string& a,
                                                         const std::string& b) {
  auto key = pair_key(a, b);
  auto it = dist_ent_.find(key);
  if (it != dist_ent_.end()) return it->second;

  const std::vector<double>& d = distance(a, b);
  const int n = 2 * half_ + 1;
  std::vector<double> series(static_cast<std::size_t>(frames_), kNaN);
  // The distance series is itself only valid half a window in from each end,
  // so its windowed entropy is valid a full window in.
  for (long k = 2L * half_; k + 2L * half_ < frames_; ++k) {
    std::span<const double> w(d.data() + static_cast<std::size_t>(k - half_),
                              static_cast<std::size_t>(n));
    series[static_cast<std::size_t>(k)] = entropy(w, cfg_);
  }
  return dist_ent_.emplace(key, std::move(series)).first->second;
}

Trend SignalCache::trend_at(const std::vector<double>& series, long k, int n) const {
  if (n < 2 || k - static_cast<long>(n) + 1 < 0 || k >= static_cast<long>(series.size()))
    return Trend::NotDecreasing;
  const std::size_t first = static_cast<std::size_t>(k - n + 1);
  for (std::size_t j = first; j <= static_cast<std::size_t>(k); ++j)
    if (std::isnan(series[j])) return Trend::NotDecreasing;
  return trend(std::span<const double>(series.data() + first, static_cast<std::size_t>(n)), n);
}

namespace {

struct Candidate {
  double dist;
  const EntityTrack* obj;
};

// In-gate candidates by increasing windowed distance, ties by id; entries
// without a valid distance at k are dropped.
std::vector<Candidate> ranked_candidates(long k, const std::string& subject_id,
                                         const std::vector<const EntityTrack*>& others,
                                         double gate, SignalCache& cache) {
  std::vector<Candidate> out;
  out.reserve(others.size());
  for (const EntityTrack* obj : others) {
    if (obj == nullptr || obj->id == subject_id) continue;
    const double d = cache.distance(subject_id, obj->id)[static_cast<std::size_t>(k)];
    if (std::isnan(d) || d >= gate) continue;
    out.push_back({d, obj});
  }
  std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
    return std::tie(a.dist, a.obj->id) < std::tie(b.dist, b.obj->id);
  });
  return out;
}

void require_window(long k, const SignalCache& cache) {
  if (k < cache.half() || k + cache.half() >= cache.frames())
    throw DataError("frame " + std::to_string(k) + " has no complete analysis window");
}

}  // namespace

HOState classify_ho(long k, const EntityTrack& hand,
                    const std::vector<const EntityTrack*>& objects,
                    const HOState& prev, const AnalysisConfig& cfg, SignalCache& cache) {
  require_window(k, cache);
  for (const Candidate& c : ranked_candidates(k, hand.id, objects, cfg.ho_dist, cache)) {
    const double mi = cache.mi(hand.id, c.obj->id)[static_cast<std::size_t>(k)];
    if (mi > cfg.mi_on) return {HOKind::CoupledMotion, c.obj->id, mi};
    // A docked contact only continues an engagement with the same object; it
    // is never entered cold, so a hand merely resting near an object stays
    // unclassified.
    if (prev.kind != HOKind::None && prev.object_id == c.obj->id)
      return {HOKind::Docked, c.obj->id, mi};
  }
  return {};
}

OOState classify_oo(long k, const HOState& ho, const EntityTrack& manipulated,
                    const std::vector<const EntityTrack*>& background,
                    const OOState& prev, const AnalysisConfig& cfg, SignalCache& cache) {
  if (ho.kind == HOKind::None) return {};
  require_window(k, cache);

  // An established essential contact persists until the pair separates,
  // regardless of whether a different object has drifted closer.
  if (prev.kind == OOKind::EssentialContact && prev.manipulated_id == manipulated.id) {
    bool known = false;
    for (const EntityTrack* obj : background)
      if (obj != nullptr && obj->id == prev.background_id) known = true;
    if (known) {
      const double d =
          cache.distance(manipulated.id, prev.background_id)[static_cast<std::size_t>(k)];
      if (!std::isnan(d) && d < cfg.oo_dist) return prev;
    }
  }

  auto ranked = ranked_candidates(k, manipulated.id, background, cfg.oo_dist, cache);
  if (ranked.empty()) return {};
  const std::string& bg = ranked.front().obj->id;
  if (ho.kind == HOKind::Docked)
    return {OOKind::EssentialContact, manipulated.id, bg};
  // Coupled motion near a background object: a falling distance-entropy
  // trend is the settling signature of a deliberate placement; anything else
  // is a passing (transient) contact.
  const Trend tr = cache.trend_at(cache.distance_entropy(manipulated.id, bg), k, cfg.trend_n);
  if (tr == Trend::Decreasing) return {OOKind::EssentialContact, manipulated.id, bg};
  return {OOKind::TransientContact, manipulated.id, bg};
}

namespace {

struct OpenEvent {
  InteractionKind kind;
  std::string subject_id;
  std::string object_id;
  long start_k = 0;
  double mi_sum = 0.0;
  long mi_frames = 0;
};

void close_event(const OpenEvent& ev, long end_k, SignalCache& cache,
                 std::vector<InteractionEvent>& out) {
  InteractionEvent e;
  e.kind = ev.kind;
  e.subject_id = ev.subject_id;
  e.object_id = ev.object_id;
  e.start_t = cache.time_at(ev.start_k);
  e.end_t = cache.time_at(end_k);
  if (ev.mi_frames > 0) e.mean_mi = ev.mi_sum / static_cast<double>(ev.mi_frames);
  out.push_back(std::move(e));
}

}  // namespace

std::vector<InteractionEvent> detect_events(const Demonstration& demo,
                                            const AnalysisConfig& cfg) {
  cfg.validate();
  if (demo.hands().empty()) throw DataError("demonstration has no hand tracks");
  SignalCache cache(demo, cfg);

  const long first = cache.half();
  const long last = cache.frames() - 1 - cache.half();
  std::vector<InteractionEvent> events;
  if (first > last) return events;

  const std::vector<const EntityTrack*> objects = demo.objects();
  const std::vector<const EntityTrack*> hands = demo.hands();

  struct HandLane {
    HOState ho_prev;
    OOState oo_prev;
    std::optional<OpenEvent> open_ho, open_oo;
  };
  std::vector<HandLane> lanes(hands.size());
  // Object pairs (unordered) currently in essential contact.  The relation
  // belongs to the pair, not to a hand engagement: it survives a release and
  // a re-grasp, and only actual separation clears it.  This is what keeps a
  // pick-off-a-stack departure from being misread as a fresh transient pass.
  std::set<std::pair<std::string, std::string>> essential_pairs;

  for (long k = first; k <= last; ++k) {
    for (auto it = essential_pairs.begin(); it != essential_pairs.end();) {
      const double d = cache.distance(it->first, it->second)[static_cast<std::size_t>(k)];
      if (std::isnan(d) || d >= cfg.oo_dist)
        it = essential_pairs.erase(it);
      else
        ++it;
    }

    for (std::size_t h = 0; h < hands.size(); ++h) {
      HandLane& lane = lanes[h];
      const HOState ho = classify_ho(k, *hands[h], objects, lane.ho_prev, cfg, cache);

      const bool ho_changed =
          ho.kind != lane.ho_prev.kind || ho.object_id != lane.ho_prev.object_id;
      if (ho_changed && lane.open_ho) {
        close_event(*lane.open_ho, k, cache, events);
        lane.open_ho.reset();
      }
      if (ho.kind != HOKind::None) {
        if (!lane.open_ho) {
          lane.open_ho.emplace();
          lane.open_ho->kind = ho.kind == HOKind::CoupledMotion ? InteractionKind::CoupledMotion
                                                                : InteractionKind::Docked;
          lane.open_ho->subject_id = hands[h]->id;
          lane.open_ho->object_id = ho.object_id;
          lane.open_ho->start_k = k;
        }
        lane.open_ho->mi_sum += ho.mi;
        ++lane.open_ho->mi_frames;
      }

      OOState oo;
      if (ho.kind != HOKind::None) {
        const EntityTrack* manipulated = demo.find(ho.object_id);
        std::vector<const EntityTrack*> background;
        background.reserve(objects.size());
        for (const EntityTrack* obj : objects)
          if (obj->id != ho.object_id) background.push_back(obj);

        OOState prev = lane.oo_prev;
        if (!(prev.kind == OOKind::EssentialContact && prev.manipulated_id == ho.object_id)) {
          // Resume a remembered essential contact of the manipulated object:
          // nearest still-in-gate partner, ties by id.
          double best = std::numeric_limits<double>::infinity();
          std::string best_bg;
          for (const EntityTrack* obj : background) {
            if (essential_pairs.count(pair_key(ho.object_id, obj->id)) == 0) continue;
            const double d =
                cache.distance(ho.object_id, obj->id)[static_cast<std::size_t>(k)];
            if (std::isnan(d) || d >= cfg.oo_dist) continue;
            if (d < best || (d == best && obj->id < best_bg)) {
              best = d;
              best_bg = obj->id;
            }
          }
          if (!best_bg.empty()) prev = {OOKind::EssentialContact, ho.object_id, best_bg};
        }
        oo = classify_oo(k, ho, *manipulated, background, prev, cfg, cache);
        // The pair memory outranks a fresh transient reading: while the pair
        // is still armed (never separated), renewed contact is the same
        // essential relation, whichever hand or partner order produced it.
        if (oo.kind == OOKind::TransientContact &&
            essential_pairs.count(pair_key(oo.manipulated_id, oo.background_id)) != 0)
          oo.kind = OOKind::EssentialContact;
      }

      const bool oo_changed = oo.kind != lane.oo_prev.kind ||
                              oo.manipulated_id != lane.oo_prev.manipulated_id ||
                              oo.background_id != lane.oo_prev.background_id;
      if (oo_changed && lane.open_oo) {
        close_event(*lane.open_oo, k, cache, events);
        lane.open_oo.reset();
      }
      if (oo.kind != OOKind::None && !lane.open_oo) {
        lane.open_oo.emplace();
        lane.open_oo->kind = oo.kind == OOKind::EssentialContact
                                 ? InteractionKind::EssentialContact
                                 : InteractionKind::TransientContact;
        lane.open_oo->subject_id = oo.manipulated_id;
        lane.open_oo->object_id = oo.background_id;
        lane.open_oo->start_k = k;
      }
      if (oo.kind == OOKind::EssentialContact)
        essential_pairs.insert(pair_key(oo.manipulated_id, oo.background_id));

      lane.ho_prev = ho;
      lane.oo_prev = oo;
    }
  }
  for (HandLane& lane : lanes) {
    if (lane.open_ho) close_event(*lane.open_ho, last + 1, cache, events);
    if (lane.open_oo) close_event(*lane.open_oo, last + 1, cache, events);
  }

  std::sort(events.begin(), events.end(),
            [](const InteractionEvent& a, const InteractionEvent& b) {
              return std::tie(a.start_t, a.subject_id, a.object_id, a.kind) <
                     std::tie(b.start_t, b.subject_id, b.object_id, b.kind);
            });
  return events;
}

}  // namespace itsg
