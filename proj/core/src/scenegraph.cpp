#include "itsg/scenegraph.hpp"

#include <algorithm>
#include <tuple>

namespace itsg {

namespace {

void add_node(SceneGraph& g, const EntityTrack& tr, long k) {
  for (const SceneNode& n : g.nodes)
    if (n.id == tr.id) return;
  const PoseSample& s = tr.samples[static_cast<std::size_t>(k)];
  g.nodes.push_back({tr.id, tr.label, s.p, s.theta});
}

InteractionKind ho_relation(HOKind kind) {
  return kind == HOKind::CoupledMotion ? InteractionKind::CoupledMotion : InteractionKind::Docked;
}

InteractionKind oo_relation(OOKind kind) {
  return kind == OOKind::EssentialContact ? InteractionKind::EssentialContact
                                          : InteractionKind::TransientContact;
}

}  // namespace

SceneGraph build_graph(long k, const std::vector<HandState>& states,
                       const Demonstration& demo) {
  SceneGraph g;
  g.frame = k;
  if (!demo.tracks.empty() &&
      k >= 0 && k < static_cast<long>(demo.tracks.front().samples.size()))
    g.t = demo.tracks.front().samples[static_cast<std::size_t>(k)].t;

  for (const HandState& hs : states) {
    if (hs.ho.kind == HOKind::None) continue;
    const EntityTrack* hand = demo.find(hs.hand_id);
    const EntityTrack* obj = demo.find(hs.ho.object_id);
    if (hand == nullptr || obj == nullptr)
      throw DataError("interaction state references unknown entity");
    add_node(g, *hand, k);
    add_node(g, *obj, k);
    g.edges.push_back({hand->id, obj->id, ho_relation(hs.ho.kind), hs.ho.mi});

    if (hs.oo.kind == OOKind::None || hs.oo.manipulated_id != obj->id) continue;
    const EntityTrack* bg = demo.find(hs.oo.background_id);
    if (bg == nullptr) throw DataError("interaction state references unknown entity");
    add_node(g, *bg, k);
    g.edges.push_back({obj->id, bg->id, oo_relation(hs.oo.kind), std::nullopt});
  }
  return g;
}

namespace {

using Topology = std::pair<std::vector<std::pair<std::string, std::string>>,
                           std::vector<std::tuple<std::string, std::string, int>>>;

Topology topology_of(const SceneGraph& g) {
  Topology t;
  t.first.reserve(g.nodes.size());
  for (const SceneNode& n : g.nodes) t.first.emplace_back(n.id, n.label);
  t.second.reserve(g.edges.size());
  for (const SceneEdge& e : g.edges)
    t.second.emplace_back(e.from_id, e.to_id, static_cast<int>(e.relation));
  std::sort(t.first.begin(), t.first.end());
  std::sort(t.second.begin(), t.second.end());
  return t;
}

}  // namespace

GraphTimeline build_timeline(const Demonstration& demo,
                             const std::vector<InteractionEvent>& events) {
  GraphTimeline tl;
  if (demo.tracks.empty()) return tl;
  const long n = demo.frame_count();
  tl.graphs.reserve(static_cast<std::size_t>(n));

  const std::vector<const EntityTrack*> hands = demo.hands();
  Topology prev;  // empty: frame 0 is a keyframe iff its graph is non-empty
  for (long k = 0; k < n; ++k) {
    const double t = demo.tracks.front().samples[static_cast<std::size_t>(k)].t;
    std::vector<HandState> states;
    states.reserve(hands.size());
    for (const EntityTrack* hand : hands) {
      HandState hs;
      hs.hand_id = hand->id;
      for (const InteractionEvent& ev : events) {
        if (ev.subject_id != hand->id || t < ev.start_t || t >= ev.end_t) continue;
        if (ev.kind == InteractionKind::CoupledMotion || ev.kind == InteractionKind::Docked) {
          hs.ho.kind = ev.kind == InteractionKind::CoupledMotion ? HOKind::CoupledMotion
                                                                 : HOKind::Docked;
          hs.ho.object_id = ev.object_id;
          hs.ho.mi = ev.mean_mi.value_or(0.0);
        }
      }
      if (hs.ho.kind != HOKind::None) {
        for (const InteractionEvent& ev : events) {
          if (ev.subject_id != hs.ho.object_id || t < ev.start_t || t >= ev.end_t) continue;
          if (ev.kind == InteractionKind::EssentialContact ||
              ev.kind == InteractionKind::TransientContact) {
            hs.oo.kind = ev.kind == InteractionKind::EssentialContact
                             ? OOKind::EssentialContact
                             : OOKind::TransientContact;
            hs.oo.manipulated_id = hs.ho.object_id;
            hs.oo.background_id = ev.object_id;
          }
        }
      }
      states.push_back(std::move(hs));
    }

    tl.graphs.push_back(build_graph(k, states, demo));
    Topology topo = topology_of(tl.graphs.back());
    if (topo != prev) tl.keyframes.push_back(k);
    prev = std::move(topo);
  }
  return tl;
}

bool graph_equal(const SceneGraph& g1, const SceneGraph& g2, double pos_tol) {
  if (g1.nodes.size() != g2.nodes.size() || g1.edges.size() != g2.edges.size()) return false;

  auto sorted_nodes = [](const SceneGraph& g) {
    std::vector<const SceneNode*> v;
    v.reserve(g.nodes.size());
    for (const SceneNode& n : g.nodes) v.push_back(&n);
    std::sort(v.begin(), v.end(), [](const SceneNode* a, const SceneNode* b) {
      return std::tie(a->id, a->label) < std::tie(b->id, b->label);
    });
    return v;
  };
  const auto n1 = sorted_nodes(g1);
  const auto n2 = sorted_nodes(g2);
  for (std::size_t i = 0; i < n1.size(); ++i) {
    if (n1[i]->id != n2[i]->id || n1[i]->label != n2[i]->label) return false;
    if ((n1[i]->p - n2[i]->p).norm() >= pos_tol) return false;
  }

  auto edge_keys = [](const SceneGraph& g) {
    std::vector<std::tuple<std::string, std::string, int>> v;
    v.reserve(g.edges.size());
    for (const SceneEdge& e : g.edges)
      v.emplace_back(e.from_id, e.to_id, static_cast<int>(e.relation));
    std::sort(v.begin(), v.end());
    return v;
  };
  return edge_keys(g1) == edge_keys(g2);
}

}  // namespace itsg
