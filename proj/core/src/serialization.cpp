#include "itsg/serialization.hpp"

#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

namespace itsg {
namespace {

json vec3_to_json(const Eigen::Vector3d& v) { return json::array({v.x(), v.y(), v.z()}); }

Eigen::Vector3d vec3_from_json(const nlohmann::json& j, const char* what) {
  if (!j.is_array() || j.size() != 3 || !j[0].is_number() || !j[1].is_number() ||
      !j[2].is_number())
    throw DataError(std::string(what) + " must be a [x, y, z] number triple");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

template <typename T>
T field(const nlohmann::json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) throw DataError(std::string("missing field: ") + key);
  try {
    return it->template get<T>();
  } catch (const nlohmann::json::exception&) {
    throw DataError(std::string("malformed field: ") + key);
  }
}

void require_object(const nlohmann::json& j, const char* what) {
  if (!j.is_object()) throw DataError(std::string(what) + " must be a document object");
}

void require_array(const nlohmann::json& j, const char* what) {
  if (!j.is_array()) throw DataError(std::string(what) + " must be a list");
}

}  // namespace

json to_json(const InteractionEvent& ev) {
  json j;
  j["kind"] = to_string(ev.kind);
  j["subject"] = ev.subject_id;
  j["object"] = ev.object_id;
  j["start_t"] = ev.start_t;
  j["end_t"] = ev.end_t;
  if (ev.mean_mi) j["mean_mi"] = *ev.mean_mi;
  return j;
}

json to_json(const std::vector<InteractionEvent>& events) {
  json j = json::array();
  for (const InteractionEvent& ev : events) j.push_back(to_json(ev));
  return j;
}

InteractionEvent event_from_json(const nlohmann::json& j) {
  require_object(j, "event");
  InteractionEvent ev;
  ev.kind = interaction_kind_from_string(field<std::string>(j, "kind"));
  ev.subject_id = field<std::string>(j, "subject");
  ev.object_id = field<std::string>(j, "object");
  ev.start_t = field<double>(j, "start_t");
  ev.end_t = field<double>(j, "end_t");
  if (j.contains("mean_mi")) ev.mean_mi = field<double>(j, "mean_mi");
  return ev;
}

std::vector<InteractionEvent> events_from_json(const nlohmann::json& j) {
  require_array(j, "event list");
  std::vector<InteractionEvent> events;
  events.reserve(j.size());
  for (const auto& item : j) events.push_back(event_from_json(item));
  return events;
}

json to_json(const SceneGraph& graph) {
  json j;
  j["frame"] = graph.frame;
  j["t"] = graph.t;
  json nodes = json::array();
  for (const SceneNode& n : graph.nodes) {
    json node;
    node["id"] = n.id;
    node["label"] = n.label;
    node["p"] = vec3_to_json(n.p);
    node["theta"] = vec3_to_json(n.theta);
    nodes.push_back(std::move(node));
  }
  j["nodes"] = std::move(nodes);
  json edges = json::array();
  for (const SceneEdge& e : graph.edges) {
    json edge;
    edge["from"] = e.from_id;
    edge["to"] = e.to_id;
    edge["relation"] = to_string(e.relation);
    if (e.mi) edge["mi"] = *e.mi;
    edges.push_back(std::move(edge));
  }
  j["edges"] = std::move(edges);
  return j;
}

json to_json(const GraphTimeline& timeline) {
  json j;
  json graphs = json::array();
  for (const SceneGraph& g : timeline.graphs) graphs.push_back(to_json(g));
  j["graphs"] = std::move(graphs);
  j["keyframes"] = timeline.keyframes;
  return j;
}

SceneGraph graph_from_json(const nlohmann::json& j) {
  require_object(j, "graph");
  SceneGraph g;
  g.frame = field<long>(j, "frame");
  g.t = field<double>(j, "t");
  const auto& nodes = j.at("nodes");
  require_array(nodes, "graph nodes");
  for (const auto& item : nodes) {
    require_object(item, "graph node");
    SceneNode n;
    n.id = field<std::string>(item, "id");
    n.label = field<std::string>(item, "label");
    n.p = vec3_from_json(item.at("p"), "node p");
    n.theta = vec3_from_json(item.at("theta"), "node theta");
    g.nodes.push_back(std::move(n));
  }
  const auto& edges = j.at("edges");
  require_array(edges, "graph edges");
  for (const auto& item : edges) {
    require_object(item, "graph edge");
    SceneEdge e;
    e.from_id = field<std::string>(item, "from");
    e.to_id = field<std::string>(item, "to");
    e.relation = interaction_kind_from_string(field<std::string>(item, "relation"));
    if (item.contains("mi")) e.mi = field<double>(item, "mi");
    g.edges.push_back(std::move(e));
  }
  return g;
}

GraphTimeline timeline_from_json(const nlohmann::json& j) {
  require_object(j, "timeline");
  GraphTimeline timeline;
  const auto& graphs = j.at("graphs");
  require_array(graphs, "timeline graphs");
  for (const auto& item : graphs) timeline.graphs.push_back(graph_from_json(item));
  timeline.keyframes = field<std::vector<long>>(j, "keyframes");
  return timeline;
}

json to_json(const Segment& segment) {
  json j;
  j["start_t"] = segment.start_t;
  j["end_t"] = segment.end_t;
  j["hand"] = segment.hand_id;
  j["primitive"] = to_string(segment.primitive);
  if (segment.object_id) j["object"] = *segment.object_id;
  j["essential"] = segment.essential;
  return j;
}

json segments_to_json(const std::vector<Segment>& segments,
                      const std::vector<double>& boundaries) {
  json j;
  json list = json::array();
  for (const Segment& s : segments) list.push_back(to_json(s));
  j["segments"] = std::move(list);
  j["boundaries"] = boundaries;
  return j;
}

Segment segment_from_json(const nlohmann::json& j) {
  require_object(j, "segment");
  Segment s;
  s.start_t = field<double>(j, "start_t");
  s.end_t = field<double>(j, "end_t");
  s.hand_id = field<std::string>(j, "hand");
  s.primitive = primitive_from_string(field<std::string>(j, "primitive"));
  if (j.contains("object")) s.object_id = field<std::string>(j, "object");
  if (j.contains("essential")) s.essential = field<bool>(j, "essential");
  return s;
}

std::vector<Segment> segments_from_json(const nlohmann::json& j) {
  const nlohmann::json* list = &j;
  if (j.is_object()) {
    if (!j.contains("segments")) throw DataError("segment document lacks a segments list");
    list = &j.at("segments");
  }
  require_array(*list, "segment list");
  std::vector<Segment> segments;
  segments.reserve(list->size());
  for (const auto& item : *list) segments.push_back(segment_from_json(item));
  return segments;
}

json to_json(const BehaviorTree& plan) {
  json j;
  json nodes = json::array();
  for (const PlanNode& n : plan.task_planning) {
    json node;
    node["node"] = n.node;
    node["param"] = n.param;
    node["reason"] = n.reason;
    node["verify"] = n.verify;
    nodes.push_back(std::move(node));
  }
  j["Task Planning"] = std::move(nodes);
  j["Final Analysis"] = plan.final_analysis;
  return j;
}

BehaviorTree plan_from_json(const nlohmann::json& j) {
  require_object(j, "plan");
  BehaviorTree plan;
  const auto& nodes = j.at("Task Planning");
  require_array(nodes, "Task Planning");
  for (const auto& item : nodes) {
    require_object(item, "plan node");
    PlanNode n;
    n.node = field<std::string>(item, "node");
    n.param = field<std::string>(item, "param");
    n.reason = field<std::string>(item, "reason");
    n.verify = field<std::string>(item, "verify");
    plan.task_planning.push_back(std::move(n));
  }
  plan.final_analysis = field<std::string>(j, "Final Analysis");
  return plan;
}

json to_json(const AnalysisConfig& cfg) {
  json j;
  j["window"] = cfg.window_s;
  j["bin_width"] = cfg.bin_width;
  j["mi_on"] = cfg.mi_on;
  j["mi_off"] = cfg.mi_off;
  j["ho_dist"] = cfg.ho_dist;
  j["oo_dist"] = cfg.oo_dist;
  j["trend_n"] = cfg.trend_n;
  j["entropy_scale"] = cfg.entropy_scale;
  j["planar"] = cfg.planar;
  j["pos_tol"] = cfg.pos_tol;
  j["tsa_tol"] = cfg.tsa_tol;
  return j;
}

AnalysisConfig config_from_json(const nlohmann::json& j) {
  require_object(j, "config");
  AnalysisConfig cfg;
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "window")
        cfg.window_s = value.get<double>();
      else if (key == "bin_width")
        cfg.bin_width = value.get<double>();
      else if (key == "mi_on")
        cfg.mi_on = value.get<double>();
      else if (key == "mi_off")
        cfg.mi_off = value.get<double>();
      else if (key == "ho_dist")
        cfg.ho_dist = value.get<double>();
      else if (key == "oo_dist")
        cfg.oo_dist = value.get<double>();
      else if (key == "trend_n")
        cfg.trend_n = value.get<int>();
      else if (key == "entropy_scale")
        cfg.entropy_scale = value.get<double>();
      else if (key == "planar")
        cfg.planar = value.get<bool>();
      else if (key == "pos_tol")
        cfg.pos_tol = value.get<double>();
      else if (key == "tsa_tol")
        cfg.tsa_tol = value.get<double>();
      else
        throw DataError("unknown config key: " + key);
    } catch (const nlohmann::json::exception&) {
      throw DataError("malformed config value for key: " + key);
    }
  }
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    // At this boundary an inconsistent setting is a data problem, so the
    // caller sees the same error type as for a malformed document.
    throw DataError(e.what());
  }
  return cfg;
}

json to_json(const TraceBundle& traces) {
  json j;
  auto points_to_json = [](const std::vector<TracePoint>& points) {
    json list = json::array();
    for (const TracePoint& p : points) list.push_back(json::array({p.t, p.value}));
    return list;
  };
  json entropy = json::array();
  for (const EntropyTrace& tr : traces.entropy) {
    json item;
    item["entity"] = tr.entity_id;
    item["axis"] = to_string(tr.axis);
    item["points"] = points_to_json(tr.values);
    entropy.push_back(std::move(item));
  }
  j["entropy"] = std::move(entropy);
  json mi = json::array();
  for (const MITrace& tr : traces.mi) {
    json item;
    item["first"] = tr.first_id;
    item["second"] = tr.second_id;
    item["points"] = points_to_json(tr.values);
    mi.push_back(std::move(item));
  }
  j["mi"] = std::move(mi);
  json distance = json::array();
  for (const DistanceTrace& tr : traces.distance) {
    json item;
    item["first"] = tr.first_id;
    item["second"] = tr.second_id;
    item["points"] = points_to_json(tr.values);
    distance.push_back(std::move(item));
  }
  j["distance"] = std::move(distance);
  return j;
}

void write_trace_csv(const TraceBundle& traces, std::ostream& out) {
  out << "kind,id,partner,axis,t,value\n";
  std::ostringstream row;
  row << std::setprecision(17);
  auto emit = [&out, &row](const char* kind, const std::string& id, const std::string& partner,
                           const std::string& axis, const std::vector<TracePoint>& points) {
    for (const TracePoint& p : points) {
      row.str("");
      row << kind << ',' << id << ',' << partner << ',' << axis << ',' << p.t << ',' << p.value
          << '\n';
      out << row.str();
    }
  };
  for (const EntropyTrace& tr : traces.entropy)
    emit("entropy", tr.entity_id, "", to_string(tr.axis), tr.values);
  for (const MITrace& tr : traces.mi) emit("mi", tr.first_id, tr.second_id, "", tr.values);
  for (const DistanceTrace& tr : traces.distance)
    emit("distance", tr.first_id, tr.second_id, "", tr.values);
}

json to_json(const TrialRecord& trial) {
  json j;
  j["grasp_attempts"] = trial.grasp_attempts;
  j["grasp_successes"] = trial.grasp_successes;
  j["place_attempts"] = trial.place_attempts;
  j["place_successes"] = trial.place_successes;
  json placements = json::array();
  for (const TrialRecord::PlacementError& p : trial.placements) {
    json item;
    item["p_est"] = vec3_to_json(p.p_est);
    item["p_gt"] = vec3_to_json(p.p_gt);
    item["theta_err"] = p.theta_err;
    placements.push_back(std::move(item));
  }
  j["placements"] = std::move(placements);
  j["success"] = trial.success;
  j["reused_policy"] = trial.reused_policy;
  return j;
}

TrialRecord trial_from_json(const nlohmann::json& j) {
  require_object(j, "trial record");
  TrialRecord trial;
  trial.grasp_attempts = field<long>(j, "grasp_attempts");
  trial.grasp_successes = field<long>(j, "grasp_successes");
  trial.place_attempts = field<long>(j, "place_attempts");
  trial.place_successes = field<long>(j, "place_successes");
  if (j.contains("placements")) {
    const auto& placements = j.at("placements");
    require_array(placements, "trial placements");
    for (const auto& item : placements) {
      require_object(item, "trial placement");
      TrialRecord::PlacementError p;
      p.p_est = vec3_from_json(item.at("p_est"), "p_est");
      p.p_gt = vec3_from_json(item.at("p_gt"), "p_gt");
      p.theta_err = field<double>(item, "theta_err");
      trial.placements.push_back(std::move(p));
    }
  }
  trial.success = field<bool>(j, "success");
  if (j.contains("reused_policy")) trial.reused_policy = field<bool>(j, "reused_policy");
  return trial;
}

std::vector<TrialRecord> load_trials(std::istream& in) {
  std::vector<TrialRecord> trials;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw DataError("trial record line " + std::to_string(line_no) + ": " + e.what());
    }
    trials.push_back(trial_from_json(j));
  }
  return trials;
}

void save_trials(const std::vector<TrialRecord>& trials, std::ostream& out) {
  for (const TrialRecord& trial : trials) out << to_json(trial).dump() << '\n';
}

json to_json(const DemoScript& script) {
  json j;
  json entities = json::array();
  for (const ScriptEntity& e : script.entities) {
    json item;
    item["id"] = e.id;
    item["kind"] = to_string(e.kind);
    item["label"] = e.label;
    item["p"] = vec3_to_json(e.p);
    item["theta"] = vec3_to_json(e.theta);
    entities.push_back(std::move(item));
  }
  j["entities"] = std::move(entities);
  json actions = json::array();
  for (const ScriptAction& a : script.actions) {
    json item;
    item["hand"] = a.hand_id;
    item["object"] = a.object_id;
    item["grasp_t"] = a.grasp_t;
    item["place_t"] = a.place_t;
    item["place_p"] = vec3_to_json(a.place_p);
    item["place_theta"] = vec3_to_json(a.place_theta);
    if (a.background_near) item["background_near"] = *a.background_near;
    actions.push_back(std::move(item));
  }
  j["actions"] = std::move(actions);
  j["noise_sigma"] = script.noise_sigma;
  j["rate"] = script.rate;
  j["duration"] = script.duration;
  j["seed"] = script.seed;
  return j;
}

DemoScript script_from_json(const nlohmann::json& j) {
  require_object(j, "script");
  DemoScript script;
  const auto& entities = j.at("entities");
  require_array(entities, "script entities");
  for (const auto& item : entities) {
    require_object(item, "script entity");
    ScriptEntity e;
    e.id = field<std::string>(item, "id");
    e.kind = entity_kind_from_string(field<std::string>(item, "kind"));
    e.label = field<std::string>(item, "label");
    if (item.contains("p")) e.p = vec3_from_json(item.at("p"), "entity p");
    if (item.contains("theta")) e.theta = vec3_from_json(item.at("theta"), "entity theta");
    script.entities.push_back(std::move(e));
  }
  if (j.contains("actions")) {
    const auto& actions = j.at("actions");
    require_array(actions, "script actions");
    for (const auto& item : actions) {
      require_object(item, "script action");
      ScriptAction a;
      a.hand_id = field<std::string>(item, "hand");
      a.object_id = field<std::string>(item, "object");
      a.grasp_t = field<double>(item, "grasp_t");
      a.place_t = field<double>(item, "place_t");
      a.place_p = vec3_from_json(item.at("place_p"), "place_p");
      if (item.contains("place_theta"))
        a.place_theta = vec3_from_json(item.at("place_theta"), "place_theta");
      if (item.contains("background_near"))
        a.background_near = field<std::string>(item, "background_near");
      script.actions.push_back(std::move(a));
    }
  }
  if (j.contains("noise_sigma")) script.noise_sigma = field<double>(j, "noise_sigma");
  if (j.contains("rate")) script.rate = field<double>(j, "rate");
  if (j.contains("duration")) script.duration = field<double>(j, "duration");
  if (j.contains("seed")) script.seed = field<std::uint64_t>(j, "seed");
  script.validate();
  return script;
}

json to_json(const Subtask& subtask) {
  json j;
  j["action"] = subtask.action;
  j["objects"] = subtask.objects;
  j["hand_roles"] = subtask.hand_roles;
  j["order_index"] = subtask.order_index;
  return j;
}

Subtask subtask_from_json(const nlohmann::json& j) {
  require_object(j, "subtask");
  Subtask s;
  s.action = field<std::string>(j, "action");
  s.objects = field<std::vector<std::string>>(j, "objects");
  s.hand_roles = field<std::map<std::string, std::string>>(j, "hand_roles");
  s.order_index = field<long>(j, "order_index");
  return s;
}

json to_json(const GroundTruth& gt) {
  json j;
  j["events"] = to_json(gt.events);
  j["boundaries"] = gt.boundaries;
  j["timeline"] = to_json(gt.timeline);
  json subtasks = json::array();
  for (const Subtask& s : gt.subtasks) subtasks.push_back(to_json(s));
  j["subtasks"] = std::move(subtasks);
  json choices = json::array();
  for (const Action a : gt.hand_choices) choices.push_back(to_string(a));
  j["hand_choices"] = std::move(choices);
  json states = json::array();
  for (const HandSelectState& s : gt.hand_states) {
    json item;
    item["d_left_source"] = s.d_left_source;
    item["d_left_target"] = s.d_left_target;
    item["d_right_source"] = s.d_right_source;
    item["d_right_target"] = s.d_right_target;
    states.push_back(std::move(item));
  }
  j["hand_states"] = std::move(states);
  return j;
}

GroundTruth ground_truth_from_json(const nlohmann::json& j) {
  require_object(j, "ground truth");
  GroundTruth gt;
  gt.events = events_from_json(j.at("events"));
  gt.boundaries = field<std::vector<double>>(j, "boundaries");
  gt.timeline = timeline_from_json(j.at("timeline"));
  const auto& subtasks = j.at("subtasks");
  require_array(subtasks, "ground-truth subtasks");
  for (const auto& item : subtasks) gt.subtasks.push_back(subtask_from_json(item));
  for (const auto& item : field<std::vector<std::string>>(j, "hand_choices"))
    gt.hand_choices.push_back(action_from_string(item));
  const auto& states = j.at("hand_states");
  require_array(states, "ground-truth hand states");
  for (const auto& item : states) {
    require_object(item, "hand state");
    HandSelectState s;
    s.d_left_source = field<double>(item, "d_left_source");
    s.d_left_target = field<double>(item, "d_left_target");
    s.d_right_source = field<double>(item, "d_right_source");
    s.d_right_target = field<double>(item, "d_right_target");
    gt.hand_states.push_back(s);
  }
  return gt;
}

json to_json(const RunManifest& manifest) {
  json j;
  j["tool"] = manifest.tool;
  j["version"] = manifest.version;
  j["command"] = manifest.command;
  j["seed"] = manifest.seed;
  j["config"] = to_json(manifest.config);
  j["input_digests"] = manifest.input_digests;
  j["created_utc"] = manifest.created_utc;
  return j;
}

RunManifest manifest_from_json(const nlohmann::json& j) {
  require_object(j, "manifest");
  RunManifest m;
  m.tool = field<std::string>(j, "tool");
  m.version = field<std::string>(j, "version");
  m.command = field<std::string>(j, "command");
  m.seed = field<std::uint64_t>(j, "seed");
  m.config = config_from_json(j.at("config"));
  m.input_digests = field<std::map<std::string, std::string>>(j, "input_digests");
  if (j.contains("created_utc")) m.created_utc = field<std::string>(j, "created_utc");
  return m;
}

std::uint64_t content_digest(std::istream& in) {
  std::uint64_t h = 14695981039346656037ull;
  char buffer[4096];
  while (in.read(buffer, sizeof buffer) || in.gcount() > 0) {
    const std::streamsize n = in.gcount();
    for (std::streamsize i = 0; i < n; ++i) {
      h ^= static_cast<unsigned char>(buffer[i]);
      h *= 1099511628211ull;
    }
    if (!in) break;
  }
  return h;
}

std::uint64_t content_digest(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string digest_hex(std::uint64_t digest) {
  std::ostringstream out;
  out << std::hex << std::setfill('0') << std::setw(16) << digest;
  return out.str();
}

nlohmann::json parse_json(std::istream& in, const std::string& what) {
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(what + ": " + e.what());
  }
}

}  // namespace itsg
