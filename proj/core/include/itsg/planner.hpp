// Deterministic behavior-tree emission from a segmented demonstration, plus
// the plan-comparison metrics (coverage, Kendall ordering, verification
// agreement, Likert means).  Each confirmed placement becomes a pick/place
// node pair; simultaneous left/right placements merge into dual-arm nodes.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "itsg/analysis_config.hpp"
#include "itsg/demonstration.hpp"
#include "itsg/scenegraph.hpp"
#include "itsg/segmentation.hpp"

namespace itsg {

struct PlanNode {
  std::string node;    // action name, e.g. "PickObj", "PlaceObjDual"
  std::string param;   // "<side>: <id>" or "left: <id>, right: <id>"
  std::string reason;
  std::string verify;
};

struct BehaviorTree {
  std::vector<PlanNode> task_planning;
  std::string final_analysis;
};

struct Subtask {
  std::string action;
  std::vector<std::string> objects;              // sorted, duplicate-free
  std::map<std::string, std::string> hand_roles; // side -> object id
  long order_index = 0;
};

/// Build the plan: every essential Place segment contributes a pick node
/// (anchored at the opening of its transport) and a place node; left/right
/// placements that overlap in time merge into single dual-arm nodes, so the
/// node count is twice the number of placement groups.  Reason/verify
/// strings are templated from entity labels and the contact partner found in
/// the timeline.  Without any essential placement the tree is empty and
/// final_analysis says why.  Output is deterministic.
BehaviorTree emit_plan(const GraphTimeline& timeline, const std::vector<Segment>& segments,
                       const Demonstration& demo, const AnalysisConfig& cfg);

/// The plan's nodes as comparable subtasks (action + objects + hand roles),
/// ordered as planned.
std::vector<Subtask> subtasks_from_plan(const BehaviorTree& plan);

/// Canonical identity used for subtask matching.
std::string subtask_key(const Subtask& s);

/// Fraction of reference subtasks present in the predicted list (by
/// canonical identity).  Errors on an empty reference.
double plan_coverage(const std::vector<Subtask>& gt, const std::vector<Subtask>& pred);

/// (1 + Kendall tau)/2 over the identity intersection of both lists, ranked
/// by order_index; `shared` (optional) receives the intersection size.
/// Errors when fewer than two subtasks are shared.
double ordering_accuracy(const std::vector<Subtask>& gt, const std::vector<Subtask>& pred,
                         std::size_t* shared = nullptr);

/// Mean agreement of per-subtask success flags.  Errors on length mismatch.
double verification_correctness(const std::vector<bool>& gt_flags,
                                const std::vector<bool>& pred_flags);

/// Grand mean of a trials-by-raters rating matrix on a 1..scale_max scale.
/// Errors on an empty matrix or out-of-range rating.
double likert_mean(const std::vector<std::vector<double>>& ratings, double scale_max = 5.0);

}  // namespace itsg
