#include "itsg/serialization.hpp"

#include <gtest/gtest.h>

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "itsg/synthgen.hpp"

using namespace itsg;

namespace {

std::vector<InteractionEvent> sample_events() {
  InteractionEvent cm;
  cm.kind = InteractionKind::CoupledMotion;
  cm.subject_id = "hand_r";
  cm.object_id = "block";
  cm.start_t = 2.0;
  cm.end_t = 4.0;
  cm.mean_mi = 1.5;
  InteractionEvent eoo;
  eoo.kind = InteractionKind::EssentialContact;
  eoo.subject_id = "block";
  eoo.object_id = "base";
  eoo.start_t = 3.5;
  eoo.end_t = 4.0;
  return {cm, eoo};
}

// Reference FNV-1a 64-bit, folded byte by byte.
std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

TEST(EventJson, RoundTripPreservesAllFields) {
  const auto events = sample_events();
  const auto back = events_from_json(to_json(events));
  ASSERT_EQ(back.size(), events.size());
  for (std::size_t i = 0; i < events.size(); ++i) {
    EXPECT_EQ(back[i].kind, events[i].kind);
    EXPECT_EQ(back[i].subject_id, events[i].subject_id);
    EXPECT_EQ(back[i].object_id, events[i].object_id);
    EXPECT_EQ(back[i].start_t, events[i].start_t);
    EXPECT_EQ(back[i].end_t, events[i].end_t);
    EXPECT_EQ(back[i].mean_mi, events[i].mean_mi);
  }
  EXPECT_THROW(event_from_json(nlohmann::json::array()), DataError);
  EXPECT_THROW(event_from_json(nlohmann::json{{"kind", "coupled_motion"}}), DataError);
}

TEST(TimelineJson, RoundTripIsByteStable) {
  const auto [demo, gt] = generate(single_pick_place_script());
  const json doc = to_json(gt.timeline);
  const GraphTimeline back = timeline_from_json(doc);
  EXPECT_EQ(back.keyframes, gt.timeline.keyframes);
  ASSERT_EQ(back.graphs.size(), gt.timeline.graphs.size());
  EXPECT_EQ(to_json(back).dump(), doc.dump());
}

TEST(SegmentJson, RoundTripWithBoundaries) {
  std::vector<Segment> segs;
  segs.push_back({0.0, 2.0, "hand_r", Primitive::Reach, "block", false});
  segs.push_back({2.0, 5.0, "hand_r", Primitive::Place, "block", true});
  segs.push_back({5.0, 8.0, "hand_r", Primitive::Idle, std::nullopt, false});
  const json doc = segments_to_json(segs, boundaries(segs));
  EXPECT_TRUE(doc.contains("boundaries"));

  const auto back = segments_from_json(doc);
  ASSERT_EQ(back.size(), segs.size());
  for (std::size_t i = 0; i < segs.size(); ++i) {
    EXPECT_EQ(back[i].start_t, segs[i].start_t);
    EXPECT_EQ(back[i].end_t, segs[i].end_t);
    EXPECT_EQ(back[i].hand_id, segs[i].hand_id);
    EXPECT_EQ(back[i].primitive, segs[i].primitive);
    EXPECT_EQ(back[i].object_id, segs[i].object_id);
    EXPECT_EQ(back[i].essential, segs[i].essential);
  }
}

TEST(PlanJson, DocumentUsesThePlanningAndAnalysisSections) {
  BehaviorTree plan;
  plan.task_planning.push_back({"PickObj", "right: block", "why", "check"});
  plan.final_analysis = "done";
  const json doc = to_json(plan);
  ASSERT_TRUE(doc.contains("Task Planning"));
  ASSERT_TRUE(doc.contains("Final Analysis"));
  const auto& node = doc.at("Task Planning").at(0);
  EXPECT_EQ(node.at("node"), "PickObj");
  EXPECT_EQ(node.at("param"), "right: block");
  EXPECT_EQ(node.at("reason"), "why");
  EXPECT_EQ(node.at("verify"), "check");

  const BehaviorTree back = plan_from_json(doc);
  EXPECT_EQ(back.task_planning.size(), plan.task_planning.size());
  EXPECT_EQ(back.final_analysis, plan.final_analysis);
  EXPECT_EQ(to_json(back).dump(), doc.dump());
}

TEST(ConfigJson, PartialOverrideFromDefaults) {
  const AnalysisConfig cfg = config_from_json(nlohmann::json{{"mi_on", 0.2}, {"mi_off", 0.1}});
  EXPECT_DOUBLE_EQ(cfg.mi_on, 0.2);
  EXPECT_DOUBLE_EQ(cfg.mi_off, 0.1);
  EXPECT_DOUBLE_EQ(cfg.window_s, AnalysisConfig{}.window_s);

  const AnalysisConfig defaults;
  const AnalysisConfig back = config_from_json(to_json(defaults));
  EXPECT_EQ(to_json(back).dump(), to_json(defaults).dump());
}

TEST(ConfigJson, RejectsUnknownKeysAndBadValues) {
  EXPECT_THROW(config_from_json(nlohmann::json{{"volume", 11}}), DataError);
  EXPECT_THROW(config_from_json(nlohmann::json{{"window", "wide"}}), DataError);
  EXPECT_THROW(config_from_json(nlohmann::json{{"bin_width", 0.0}}), DataError);
  EXPECT_THROW(config_from_json(nlohmann::json::array()), DataError);
  // Overrides are validated as a whole: raising the release threshold above
  // the engage threshold is inconsistent.
  EXPECT_THROW(config_from_json(nlohmann::json{{"mi_off", 0.5}}), DataError);
}

TEST(TraceJson, CsvIsLongFormatWithOneRowPerPoint) {
  TraceBundle traces;
  EntropyTrace h;
  h.entity_id = "block";
  h.axis = Axis::Y;
  h.values = {{0.5, 0.0}, {0.6, 1.25}};
  traces.entropy.push_back(h);
  MITrace mi;
  mi.first_id = "hand_r";
  mi.second_id = "block";
  mi.values = {{0.5, 2.5}};
  traces.mi.push_back(mi);

  std::ostringstream out;
  write_trace_csv(traces, out);
  std::istringstream lines(out.str());
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "kind,id,partner,axis,t,value");
  std::getline(lines, line);
  EXPECT_EQ(line, "entropy,block,,y,0.5,0");
  std::getline(lines, line);
  EXPECT_EQ(line, "entropy,block,,y,0.59999999999999998,1.25");
  std::getline(lines, line);
  EXPECT_EQ(line, "mi,hand_r,block,,0.5,2.5");
  EXPECT_FALSE(std::getline(lines, line));

  const json doc = to_json(traces);
  EXPECT_EQ(doc.at("entropy").at(0).at("points").size(), 2u);
  EXPECT_EQ(doc.at("mi").at(0).at("first"), "hand_r");
  EXPECT_EQ(doc.at("distance").size(), 0u);
}

TEST(TrialJson, LineDelimitedRoundTrip) {
  TrialRecord a;
  a.grasp_attempts = 3;
  a.grasp_successes = 2;
  a.place_attempts = 3;
  a.place_successes = 3;
  a.success = true;
  a.reused_policy = true;
  TrialRecord::PlacementError pe;
  pe.p_est = {0.41, 0.2, 0.05};
  pe.p_gt = {0.4, 0.2, 0.05};
  pe.theta_err = 0.1;
  a.placements.push_back(pe);
  TrialRecord b;
  b.grasp_attempts = 1;
  b.place_attempts = 1;

  std::stringstream stream;
  save_trials({a, b}, stream);
  const auto back = load_trials(stream);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].grasp_successes, 2);
  EXPECT_TRUE(back[0].success);
  EXPECT_TRUE(back[0].reused_policy);
  ASSERT_EQ(back[0].placements.size(), 1u);
  EXPECT_EQ(back[0].placements[0].p_est.x(), 0.41);
  EXPECT_EQ(back[0].placements[0].theta_err, 0.1);
  EXPECT_EQ(back[1].grasp_attempts, 1);
  EXPECT_FALSE(back[1].success);

  std::istringstream bad("{\"grasp_attempts\": 1}\n");
  EXPECT_THROW(load_trials(bad), DataError);
  std::istringstream garbled("not json\n");
  EXPECT_THROW(load_trials(garbled), DataError);
}

TEST(ScriptJson, RoundTripValidatesOnLoad) {
  const DemoScript script = letter_r_script();
  const json doc = to_json(script);
  const DemoScript back = script_from_json(doc);
  EXPECT_EQ(to_json(back).dump(), doc.dump());

  json bad = doc;
  bad["entities"] = nlohmann::json::array();  // loses every entity -> invalid script
  EXPECT_THROW(script_from_json(bad), DataError);
}

TEST(GroundTruthJson, RoundTripIsByteStable) {
  const auto [demo, gt] = generate(crossing_script());
  const json doc = to_json(gt);
  const GroundTruth back = ground_truth_from_json(doc);
  EXPECT_EQ(to_json(back).dump(), doc.dump());
  EXPECT_EQ(back.hand_choices.size(), gt.hand_choices.size());
  EXPECT_EQ(back.subtasks.size(), gt.subtasks.size());
}

TEST(ManifestJson, RoundTripKeepsReplayFields) {
  RunManifest m;
  m.tool = "itsg";
  m.version = "0.1.0";
  m.command = "analyze";
  m.seed = 99;
  m.config.mi_on = 0.15;
  m.config.entropy_scale = 0.35;
  m.input_digests["demo.jsonl"] = "00112233445566aa";
  m.created_utc = "2026-08-22T12:00:00Z";

  const json doc = to_json(m);
  const RunManifest back = manifest_from_json(doc);
  EXPECT_EQ(back.tool, m.tool);
  EXPECT_EQ(back.version, m.version);
  EXPECT_EQ(back.command, m.command);
  EXPECT_EQ(back.seed, m.seed);
  EXPECT_DOUBLE_EQ(back.config.mi_on, 0.15);
  EXPECT_EQ(back.input_digests, m.input_digests);
  EXPECT_EQ(back.created_utc, m.created_utc);
  EXPECT_EQ(to_json(back).dump(), doc.dump());
}

TEST(Digest, MatchesTheReferenceFoldAndFormatsFixedWidth) {
  EXPECT_EQ(content_digest(std::string{}), 0xcbf29ce484222325ULL);
  for (const std::string s :
       {std::string("a"), std::string("abc"), std::string("hello world"), std::string(1000, 'x')}) {
    EXPECT_EQ(content_digest(s), fnv1a(s));
    std::istringstream in(s);
    EXPECT_EQ(content_digest(in), fnv1a(s));
  }
  EXPECT_EQ(digest_hex(0xcbf29ce484222325ULL), "cbf29ce484222325");
  EXPECT_EQ(digest_hex(0x1ULL), "0000000000000001");
}

TEST(ParseJson, WrapsStreamFailuresAsDataErrors) {
  std::istringstream bad("{broken");
  EXPECT_THROW(parse_json(bad, "test document"), DataError);
  std::istringstream good("{\"x\": 1}");
  EXPECT_EQ(parse_json(good, "test document").at("x"), 1);
}
