// JSON document forms for every pipeline artifact — events, traces,
// timelines, segments, plans, scripts, ground truth, trial records, metric
// reports, and the run manifest — with byte-stable key order so identical
// inputs always serialize identically.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "itsg/analysis_config.hpp"
#include "itsg/demonstration.hpp"
#include "itsg/handselect.hpp"
#include "itsg/infotheory.hpp"
#include "itsg/interaction.hpp"
#include "itsg/metrics.hpp"
#include "itsg/planner.hpp"
#include "itsg/scenegraph.hpp"
#include "itsg/segmentation.hpp"
#include "itsg/synthgen.hpp"

namespace itsg {

using json = nlohmann::ordered_json;

// Events
json to_json(const InteractionEvent& ev);
json to_json(const std::vector<InteractionEvent>& events);
InteractionEvent event_from_json(const nlohmann::json& j);
std::vector<InteractionEvent> events_from_json(const nlohmann::json& j);

// Scene graphs and timelines
json to_json(const SceneGraph& graph);
json to_json(const GraphTimeline& timeline);
SceneGraph graph_from_json(const nlohmann::json& j);
GraphTimeline timeline_from_json(const nlohmann::json& j);

// Segments and boundaries
json to_json(const Segment& segment);
json segments_to_json(const std::vector<Segment>& segments, const std::vector<double>& boundaries);
Segment segment_from_json(const nlohmann::json& j);
std::vector<Segment> segments_from_json(const nlohmann::json& j);

// Plans
json to_json(const BehaviorTree& plan);
BehaviorTree plan_from_json(const nlohmann::json& j);

// Configuration: serialized flat; loading starts from defaults, overrides the
// keys present, and rejects unknown keys.
json to_json(const AnalysisConfig& cfg);
AnalysisConfig config_from_json(const nlohmann::json& j);

// Windowed traces, bundled per demonstration.
struct TraceBundle {
  std::vector<EntropyTrace> entropy;
  std::vector<MITrace> mi;
  std::vector<DistanceTrace> distance;
};
json to_json(const TraceBundle& traces);
/// Long-format CSV: kind,id,partner,axis,t,value — one row per trace point.
void write_trace_csv(const TraceBundle& traces, std::ostream& out);

// Trial records (line-delimited) for the success/pose metrics.
json to_json(const TrialRecord& trial);
TrialRecord trial_from_json(const nlohmann::json& j);
std::vector<TrialRecord> load_trials(std::istream& in);
void save_trials(const std::vector<TrialRecord>& trials, std::ostream& out);

// Synthetic scripts and ground truth
json to_json(const DemoScript& script);
DemoScript script_from_json(const nlohmann::json& j);
json to_json(const Subtask& subtask);
Subtask subtask_from_json(const nlohmann::json& j);
json to_json(const GroundTruth& gt);
GroundTruth ground_truth_from_json(const nlohmann::json& j);

/// Everything needed to rerun a command byte-exactly: tool version, seed,
/// config snapshot, and input digests.  The timestamp documents the run and
/// is ignored on replay.
struct RunManifest {
  std::string tool;
  std::string version;
  std::string command;
  std::uint64_t seed = 0;
  AnalysisConfig config;
  std::map<std::string, std::string> input_digests;  // path -> fnv1a64 hex
  std::string created_utc;
};
json to_json(const RunManifest& manifest);
RunManifest manifest_from_json(const nlohmann::json& j);

/// FNV-1a 64-bit digest of a byte stream / buffer, and its fixed-width hex form.
std::uint64_t content_digest(std::istream& in);
std::uint64_t content_digest(const std::string& bytes);
std::string digest_hex(std::uint64_t digest);

/// Parse with a DataError (rather than a bare json exception) on failure.
nlohmann::json parse_json(std::istream& in, const std::string& what);

}  // namespace itsg
