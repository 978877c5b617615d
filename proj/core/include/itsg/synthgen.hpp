// Seeded synthetic demonstration generator with ground truth by
// construction.  Scripts describe entities plus timed pick/place actions;
// generation renders smooth minimum-jerk phase trajectories (reach,
// transport, settle, retreat) with independent per-entity Gaussian position
// noise, and derives the reference events, boundaries, timeline, subtasks,
// and hand choices the evaluation suite compares against.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "itsg/analysis_config.hpp"
#include "itsg/demonstration.hpp"
#include "itsg/handselect.hpp"
#include "itsg/interaction.hpp"
#include "itsg/planner.hpp"
#include "itsg/scenegraph.hpp"

namespace itsg {

struct ScriptEntity {
  std::string id;
  EntityKind kind = EntityKind::Object;
  std::string label;
  Eigen::Vector3d p = Eigen::Vector3d::Zero();      // rest position
  Eigen::Vector3d theta = Eigen::Vector3d::Zero();  // rest orientation
};

struct ScriptAction {
  std::string hand_id;
  std::string object_id;
  double grasp_t = 0.0;
  double place_t = 0.0;
  Eigen::Vector3d place_p = Eigen::Vector3d::Zero();
  Eigen::Vector3d place_theta = Eigen::Vector3d::Zero();
  // Intended contact partner; when unset the nearest resting object within
  // the contact gate (if any) is used for the ground truth.
  std::optional<std::string> background_near;
};

struct DemoScript {
  std::vector<ScriptEntity> entities;
  std::vector<ScriptAction> actions;
  double noise_sigma = 0.0;  // m
  double rate = 30.0;        // Hz
  double duration = 0.0;     // s; 0 = derive from the last action
  std::uint64_t seed = 0;

  void validate() const;
};

struct GroundTruth {
  std::vector<InteractionEvent> events;
  std::vector<double> boundaries;
  GraphTimeline timeline;
  std::vector<Subtask> subtasks;
  std::vector<Action> hand_choices;          // the demonstrator's hand per action
  std::vector<HandSelectState> hand_states;  // decision-time distances per action
};

/// Render the script into a demonstration plus its ground truth.  Identical
/// scripts produce bit-identical output.  The reference timeline is the
/// noise-free twin of the demonstration passed through event detection at
/// `cfg`; events/boundaries/subtasks come straight from the phase schedule.
std::pair<Demonstration, GroundTruth> generate(const DemoScript& script,
                                               const AnalysisConfig& cfg = {});

/// n seeded variants of the template: whole-scene translation, per-source
/// jitter (bin-aligned so resting objects stay histogram-friendly), and
/// timing jitter.  Member i uses an independent noise stream derived from
/// (seed, i).  All jitter draws are keyed by entity id / action index, so
/// adding an entity to a script never changes the variants of the others.
std::vector<DemoScript> corpus_scripts(long n, const DemoScript& tmpl, std::uint64_t seed);
std::vector<std::pair<Demonstration, GroundTruth>> corpus(long n, const DemoScript& tmpl,
                                                          std::uint64_t seed,
                                                          const AnalysisConfig& cfg = {});

/// The exact noise-free position of one scripted entity at time t.
Eigen::Vector3d scripted_position(const DemoScript& script, const std::string& entity_id,
                                  double t);

// Ready-made templates.  Static rest positions and placement targets sit at
// histogram bin centers so that a resting entity's quantized position is a
// single bin; keep that property when editing geometry.
DemoScript single_pick_place_script();   // one arm, one block onto a base block
DemoScript relocation_script();          // one block moved to free space (no contact)
DemoScript letter_r_script();            // five blocks, two arms interleaved
DemoScript dual_parallel_script();       // simultaneous left+right placements
DemoScript crossing_script();            // each block nearer the hand that does NOT take it
DemoScript idle_script();                // nothing happens
/// The fly-by pair: `with_flyby` adds one bystander block near the transport
/// path (passed without being touched); everything else is bit-identical to
/// the base script.
DemoScript flyby_base_script();
DemoScript with_flyby(const DemoScript& base);

}  // namespace itsg
