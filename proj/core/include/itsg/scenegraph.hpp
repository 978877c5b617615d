// Per-frame directed scene graphs and the keyframed timeline.  A graph holds
// only the entities participating in an interaction chain: each engaged hand
// contributes h -> object, extended to h -> object -> background while an
// object-object contact is open.  Idle entities never appear, so graph
// topology is exactly the interaction structure.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "itsg/demonstration.hpp"
#include "itsg/interaction.hpp"

namespace itsg {

struct SceneNode {
  std::string id;
  std::string label;
  Eigen::Vector3d p = Eigen::Vector3d::Zero();      // position, m
  Eigen::Vector3d theta = Eigen::Vector3d::Zero();  // orientation, rad
};

struct SceneEdge {
  std::string from_id;
  std::string to_id;
  InteractionKind relation = InteractionKind::CoupledMotion;
  std::optional<double> mi;  // annotation on hand-object edges, nats
};

struct SceneGraph {
  long frame = 0;
  double t = 0.0;
  std::vector<SceneNode> nodes;
  std::vector<SceneEdge> edges;

  bool empty() const { return nodes.empty() && edges.empty(); }
};

struct GraphTimeline {
  std::vector<SceneGraph> graphs;   // one per frame
  std::vector<long> keyframes;      // frames whose topology differs from the previous frame
};

/// Interaction state of one hand at one frame, the unit build_graph consumes.
struct HandState {
  std::string hand_id;
  HOState ho;
  OOState oo;  // meaningful only while ho is active
};

/// Graph for frame k from per-hand states; poses are read from the
/// demonstration at that frame.  Hands with no active engagement contribute
/// nothing; an object-object state without its hand engagement is ignored.
SceneGraph build_graph(long k, const std::vector<HandState>& states,
                       const Demonstration& demo);

/// One graph per frame, derived from the events covering each frame time
/// (half-open intervals), plus the keyframes: every frame whose topology
/// (node and edge sets, poses excluded) differs from its predecessor, with
/// frame 0 a keyframe when its graph is non-empty.  Hand-object edges carry
/// the event's mean mutual information.
GraphTimeline build_timeline(const Demonstration& demo,
                             const std::vector<InteractionEvent>& events);

/// Structural equality: node (id, label) sets match, edge
/// (from, to, relation) sets match, and each matched node's position differs
/// by less than pos_tol.  Node/edge order, frame numbers, times, and MI
/// annotations are ignored.
bool graph_equal(const SceneGraph& g1, const SceneGraph& g2, double pos_tol);

}  // namespace itsg
