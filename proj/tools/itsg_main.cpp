// Command-line front end over the analysis library: six subcommands that
// turn demonstration pose logs into events, traces, timelines, segments,
// plans, and evaluation reports.  Every run writes a manifest pinning tool
// version, settings, seed, and input digests, and any run can be repeated
// byte-for-byte from that manifest.
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "itsg/demonstration.hpp"
#include "itsg/infotheory.hpp"
#include "itsg/interaction.hpp"
#include "itsg/metrics.hpp"
#include "itsg/planner.hpp"
#include "itsg/scenegraph.hpp"
#include "itsg/segmentation.hpp"
#include "itsg/serialization.hpp"
#include "itsg/synthgen.hpp"

namespace fs = std::filesystem;
using itsg::json;

namespace {

constexpr const char* kToolName = "itsg";
constexpr const char* kVersion = "0.1.0";

std::string utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw itsg::DataError("cannot open " + path.string());
  return in;
}

std::string digest_of_file(const fs::path& path) {
  auto in = open_input(path);
  return itsg::digest_hex(itsg::content_digest(in));
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw itsg::DataError("cannot write " + path.string());
}

void write_doc(const fs::path& path, const json& doc) { write_text(path, doc.dump(2) + "\n"); }

// One CLI option per analysis setting.  Only options the user actually
// passed override the base loaded from a config file or manifest.
struct ConfigFlags {
  double window = 0.0;
  double bin_width = 0.0;
  double mi_on = 0.0;
  double mi_off = 0.0;
  double ho_dist = 0.0;
  double oo_dist = 0.0;
  int trend_n = 0;
  double entropy_scale = 0.0;
  bool planar = true;
  double pos_tol = 0.0;
  double tsa_tol = 0.0;

  CLI::Option* o_window = nullptr;
  CLI::Option* o_bin_width = nullptr;
  CLI::Option* o_mi_on = nullptr;
  CLI::Option* o_mi_off = nullptr;
  CLI::Option* o_ho_dist = nullptr;
  CLI::Option* o_oo_dist = nullptr;
  CLI::Option* o_trend_n = nullptr;
  CLI::Option* o_entropy_scale = nullptr;
  CLI::Option* o_planar = nullptr;
  CLI::Option* o_pos_tol = nullptr;
  CLI::Option* o_tsa_tol = nullptr;

  void attach(CLI::App& cmd) {
    o_window = cmd.add_option("--window", window, "Sliding window length in seconds");
    o_bin_width = cmd.add_option("--bin-width", bin_width, "Histogram bin width in metres");
    o_mi_on = cmd.add_option("--mi-on", mi_on, "Mutual information needed to open a coupling (nats)");
    o_mi_off = cmd.add_option("--mi-off", mi_off, "Mutual information needed to keep it open (nats)");
    o_ho_dist = cmd.add_option("--ho-dist", ho_dist, "Hand-object proximity gate in metres");
    o_oo_dist = cmd.add_option("--oo-dist", oo_dist, "Object-object proximity gate in metres");
    o_trend_n = cmd.add_option("--trend-n", trend_n, "Samples consulted by the entropy trend test");
    o_entropy_scale =
        cmd.add_option("--entropy-scale", entropy_scale, "Scale factor applied to entropy values");
    o_planar = cmd.add_flag("--planar,!--no-planar", planar, "Restrict signals to the x/y plane");
    o_pos_tol = cmd.add_option("--pos-tol", pos_tol, "Node position tolerance for graph equality (m)");
    o_tsa_tol = cmd.add_option("--tsa-tol", tsa_tol, "Boundary matching tolerance in seconds");
  }

  void apply(itsg::AnalysisConfig& cfg) const {
    if (o_window->count() > 0) cfg.window_s = window;
    if (o_bin_width->count() > 0) cfg.bin_width = bin_width;
    if (o_mi_on->count() > 0) cfg.mi_on = mi_on;
    if (o_mi_off->count() > 0) cfg.mi_off = mi_off;
    if (o_ho_dist->count() > 0) cfg.ho_dist = ho_dist;
    if (o_oo_dist->count() > 0) cfg.oo_dist = oo_dist;
    if (o_trend_n->count() > 0) cfg.trend_n = trend_n;
    if (o_entropy_scale->count() > 0) cfg.entropy_scale = entropy_scale;
    if (o_planar->count() > 0) cfg.planar = planar;
    if (o_pos_tol->count() > 0) cfg.pos_tol = pos_tol;
    if (o_tsa_tol->count() > 0) cfg.tsa_tol = tsa_tol;
  }
};

// Options shared by every subcommand: settings sources, output directory,
// and the seed.  Precedence is defaults < manifest or config file < flags.
struct RunOptions {
  std::string config_path;
  std::string manifest_path;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  ConfigFlags flags;
  CLI::Option* o_seed = nullptr;

  void attach(CLI::App& cmd) {
    auto* oc = cmd.add_option("--config", config_path, "JSON file of analysis settings");
    cmd.add_option("--from-manifest", manifest_path,
                   "Repeat a previous run: take settings and seed from its manifest and require "
                   "the inputs to be unchanged")
        ->excludes(oc);
    cmd.add_option("-o,--out", out_dir, "Directory receiving the output documents")
        ->capture_default_str();
    o_seed = cmd.add_option("--seed", seed, "Seed for every random draw in the run");
    flags.attach(cmd);
  }

  itsg::AnalysisConfig resolve(std::optional<itsg::RunManifest>* replay = nullptr) {
    itsg::AnalysisConfig cfg;
    if (!manifest_path.empty()) {
      auto in = open_input(manifest_path);
      const itsg::RunManifest m = itsg::manifest_from_json(itsg::parse_json(in, manifest_path));
      cfg = m.config;
      if (o_seed->count() == 0) seed = m.seed;
      if (replay != nullptr) *replay = m;
    } else if (!config_path.empty()) {
      auto in = open_input(config_path);
      cfg = itsg::config_from_json(itsg::parse_json(in, config_path));
    }
    flags.apply(cfg);
    try {
      cfg.validate();
    } catch (const std::invalid_argument& e) {
      throw itsg::DataError(e.what());
    }
    return cfg;
  }
};

void check_replay_inputs(const itsg::RunManifest& manifest,
                         const std::map<std::string, std::string>& digests) {
  for (const auto& [path, digest] : digests) {
    const auto it = manifest.input_digests.find(path);
    if (it == manifest.input_digests.end())
      throw itsg::DataError("input " + path + " is not recorded in the manifest");
    if (it->second != digest)
      throw itsg::DataError("input " + path + " changed since the manifest was written (now " +
                            digest + ", manifest has " + it->second + ")");
  }
}

itsg::RunManifest make_manifest(const std::string& command, const itsg::AnalysisConfig& cfg,
                                std::uint64_t seed,
                                std::map<std::string, std::string> digests) {
  itsg::RunManifest m;
  m.tool = kToolName;
  m.version = kVersion;
  m.command = command;
  m.seed = seed;
  m.config = cfg;
  m.input_digests = std::move(digests);
  m.created_utc = utc_now();
  return m;
}

struct Pipeline {
  itsg::Demonstration demo;
  std::vector<itsg::InteractionEvent> events;
  itsg::GraphTimeline timeline;
  std::vector<itsg::Segment> segments;
};

Pipeline run_pipeline(const fs::path& demo_path, const itsg::AnalysisConfig& cfg,
                      bool want_timeline, bool want_segments) {
  Pipeline p;
  auto in = open_input(demo_path);
  p.demo = itsg::load_demonstration(in);
  p.events = itsg::detect_events(p.demo, cfg);
  if (want_timeline || want_segments) p.timeline = itsg::build_timeline(p.demo, p.events);
  if (want_segments) p.segments = itsg::segment(p.timeline, p.events, p.demo, cfg);
  return p;
}

// Every per-axis entropy trace, hand-object coupling and distance trace, and
// object-object distance trace the demonstration supports.
itsg::TraceBundle build_traces(const itsg::Demonstration& demo, const itsg::AnalysisConfig& cfg) {
  itsg::TraceBundle tb;
  std::vector<itsg::Axis> axes{itsg::Axis::X, itsg::Axis::Y};
  if (!cfg.planar) axes.push_back(itsg::Axis::Z);
  for (const auto& track : demo.tracks)
    for (const auto axis : axes) tb.entropy.push_back(itsg::entropy_trace(track, axis, cfg));
  const auto hands = demo.hands();
  const auto objects = demo.objects();
  for (const auto* hand : hands)
    for (const auto* object : objects) {
      tb.mi.push_back(itsg::mi_trace(*hand, *object, cfg));
      tb.distance.push_back(itsg::distance_trace(*hand, *object, cfg));
    }
  for (std::size_t i = 0; i < objects.size(); ++i)
    for (std::size_t j = i + 1; j < objects.size(); ++j)
      tb.distance.push_back(itsg::distance_trace(*objects[i], *objects[j], cfg));
  return tb;
}

int cmd_analyze(RunOptions& run, const std::string& demo_path, bool csv) {
  std::optional<itsg::RunManifest> replay;
  const auto cfg = run.resolve(&replay);
  std::map<std::string, std::string> digests{{demo_path, digest_of_file(demo_path)}};
  if (replay) check_replay_inputs(*replay, digests);
  const auto p = run_pipeline(demo_path, cfg, false, false);
  const auto traces = build_traces(p.demo, cfg);
  const fs::path out(run.out_dir);
  write_doc(out / "events.json", itsg::to_json(p.events));
  write_doc(out / "traces.json", itsg::to_json(traces));
  if (csv) {
    std::ostringstream s;
    itsg::write_trace_csv(traces, s);
    write_text(out / "traces.csv", s.str());
  }
  write_doc(out / "manifest.json", itsg::to_json(make_manifest("analyze", cfg, run.seed, digests)));
  std::cout << "analyze: " << p.events.size() << " events over " << p.demo.frame_count()
            << " frames -> " << (out / "events.json").string() << "\n";
  return 0;
}

int cmd_graph(RunOptions& run, const std::string& demo_path) {
  std::optional<itsg::RunManifest> replay;
  const auto cfg = run.resolve(&replay);
  std::map<std::string, std::string> digests{{demo_path, digest_of_file(demo_path)}};
  if (replay) check_replay_inputs(*replay, digests);
  const auto p = run_pipeline(demo_path, cfg, true, false);
  const fs::path out(run.out_dir);
  write_doc(out / "timeline.json", itsg::to_json(p.timeline));
  write_doc(out / "manifest.json", itsg::to_json(make_manifest("graph", cfg, run.seed, digests)));
  std::cout << "graph: " << p.timeline.graphs.size() << " frames -> "
            << (out / "timeline.json").string() << "\n";
  return 0;
}

int cmd_segment(RunOptions& run, const std::string& demo_path) {
  std::optional<itsg::RunManifest> replay;
  const auto cfg = run.resolve(&replay);
  std::map<std::string, std::string> digests{{demo_path, digest_of_file(demo_path)}};
  if (replay) check_replay_inputs(*replay, digests);
  const auto p = run_pipeline(demo_path, cfg, true, true);
  const fs::path out(run.out_dir);
  write_doc(out / "segments.json", itsg::segments_to_json(p.segments, itsg::boundaries(p.segments)));
  write_doc(out / "manifest.json", itsg::to_json(make_manifest("segment", cfg, run.seed, digests)));
  std::cout << "segment: " << p.segments.size() << " segments -> "
            << (out / "segments.json").string() << "\n";
  return 0;
}

int cmd_plan(RunOptions& run, const std::string& demo_path) {
  std::optional<itsg::RunManifest> replay;
  const auto cfg = run.resolve(&replay);
  std::map<std::string, std::string> digests{{demo_path, digest_of_file(demo_path)}};
  if (replay) check_replay_inputs(*replay, digests);
  const auto p = run_pipeline(demo_path, cfg, true, true);
  const auto plan = itsg::emit_plan(p.timeline, p.segments, p.demo, cfg);
  const fs::path out(run.out_dir);
  write_doc(out / "plan.json", itsg::to_json(plan));
  write_doc(out / "manifest.json", itsg::to_json(make_manifest("plan", cfg, run.seed, digests)));
  std::cout << "plan: " << plan.task_planning.size() << " nodes -> " << (out / "plan.json").string()
            << "\n";
  return 0;
}

const std::map<std::string, itsg::DemoScript (*)()>& script_templates() {
  static const std::map<std::string, itsg::DemoScript (*)()> kTemplates = {
      {"single", itsg::single_pick_place_script},
      {"relocation", itsg::relocation_script},
      {"letter", itsg::letter_r_script},
      {"dual", itsg::dual_parallel_script},
      {"crossing", itsg::crossing_script},
      {"idle", itsg::idle_script},
      {"flyby-base", itsg::flyby_base_script},
  };
  return kTemplates;
}

int cmd_synth(RunOptions& run, const std::string& source, bool list_only) {
  if (list_only) {
    for (const auto& [name, _] : script_templates()) std::cout << name << "\n";
    std::cout << "flyby\n";  // flyby-base plus the bystander block
    return 0;
  }
  if (source.empty()) {
    std::cerr << kToolName << ": synth needs a script file or template name (see --list)\n";
    return 1;
  }
  std::optional<itsg::RunManifest> replay;
  const auto cfg = run.resolve(&replay);

  itsg::DemoScript script;
  std::map<std::string, std::string> digests;
  const auto& templates = script_templates();
  if (const auto it = templates.find(source); it != templates.end()) {
    script = it->second();
  } else if (source == "flyby") {
    script = itsg::with_flyby(itsg::flyby_base_script());
  } else if (fs::exists(source)) {
    auto in = open_input(source);
    script = itsg::script_from_json(itsg::parse_json(in, source));
    digests[source] = digest_of_file(source);
  } else {
    throw itsg::DataError("no script file or template named '" + source + "'");
  }
  if (run.o_seed->count() > 0)
    script.seed = run.seed;
  else if (replay)
    script.seed = replay->seed;
  if (digests.empty())
    digests["template:" + source] = itsg::digest_hex(itsg::content_digest(itsg::to_json(script).dump()));
  if (replay) check_replay_inputs(*replay, digests);

  const auto [demo, gt] = itsg::generate(script, cfg);
  const fs::path out(run.out_dir);
  write_doc(out / "script.json", itsg::to_json(script));
  std::ostringstream demo_stream;
  itsg::save_demonstration(demo, demo_stream);
  write_text(out / "demo.jsonl", demo_stream.str());
  write_doc(out / "ground_truth.json", itsg::to_json(gt));
  write_doc(out / "manifest.json",
            itsg::to_json(make_manifest("synth", cfg, script.seed, digests)));
  std::cout << "synth: " << demo.frame_count() << " frames, " << gt.events.size()
            << " reference events -> " << (out / "demo.jsonl").string() << "\n";
  return 0;
}

double mean_of(const std::vector<double>& xs) {
  double s = 0.0;
  for (const double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

int cmd_eval(RunOptions& run, const std::vector<std::string>& demo_paths,
             const std::vector<std::string>& gt_paths, const std::string& trials_path,
             bool do_assert, double min_graph, double min_boundary) {
  if (demo_paths.size() != gt_paths.size()) {
    std::cerr << kToolName << ": eval needs one --gt per --demo (" << demo_paths.size() << " vs "
              << gt_paths.size() << ")\n";
    return 1;
  }
  if (demo_paths.empty() && trials_path.empty()) {
    std::cerr << kToolName << ": eval needs --demo/--gt pairs or --trials\n";
    return 1;
  }
  const auto t0 = std::chrono::steady_clock::now();
  std::optional<itsg::RunManifest> replay;
  const auto cfg = run.resolve(&replay);

  std::map<std::string, std::string> digests;
  for (const auto& path : demo_paths) digests[path] = digest_of_file(path);
  for (const auto& path : gt_paths) digests[path] = digest_of_file(path);
  if (!trials_path.empty()) digests[trials_path] = digest_of_file(trials_path);
  if (replay) check_replay_inputs(*replay, digests);

  json report;
  std::vector<double> graph_scores, boundary_scores, coverage_scores, ordering_scores;
  json per_demo = json::array();
  for (std::size_t i = 0; i < demo_paths.size(); ++i) {
    const auto p = run_pipeline(demo_paths[i], cfg, true, true);
    const auto plan = itsg::emit_plan(p.timeline, p.segments, p.demo, cfg);
    const auto pred = itsg::subtasks_from_plan(plan);
    auto in = open_input(gt_paths[i]);
    const itsg::GroundTruth gt = itsg::ground_truth_from_json(itsg::parse_json(in, gt_paths[i]));

    const double g = itsg::gra(p.timeline, gt.timeline, cfg);
    const double b = itsg::tsa(itsg::boundaries(p.segments), gt.boundaries, cfg.tsa_tol);
    const double c = itsg::plan_coverage(gt.subtasks, pred);
    graph_scores.push_back(g);
    boundary_scores.push_back(b);
    coverage_scores.push_back(c);

    json row;
    row["demo"] = demo_paths[i];
    row["graph_agreement"] = g;
    row["boundary_agreement"] = b;
    row["plan_coverage"] = c;
    try {
      std::size_t shared = 0;
      const double o = itsg::ordering_accuracy(gt.subtasks, pred, &shared);
      ordering_scores.push_back(o);
      row["ordering_accuracy"] = o;
      row["shared_subtasks"] = shared;
    } catch (const itsg::DataError&) {
      // Fewer than two subtasks in common: ordering is undefined, not wrong.
      row["ordering_accuracy"] = nullptr;
    }
    row["events"] = itsg::detect_events(p.demo, cfg).size();
    row["planned_nodes"] = plan.task_planning.size();
    per_demo.push_back(std::move(row));
  }
  if (!per_demo.empty()) report["demos"] = std::move(per_demo);

  json aggregate;
  if (!graph_scores.empty()) {
    aggregate["graph_agreement"] = mean_of(graph_scores);
    aggregate["boundary_agreement"] = mean_of(boundary_scores);
    aggregate["plan_coverage"] = mean_of(coverage_scores);
    aggregate["ordering_accuracy"] =
        ordering_scores.empty() ? json(nullptr) : json(mean_of(ordering_scores));
    aggregate["demos"] = graph_scores.size();
    report["aggregate"] = aggregate;
  }

  if (!trials_path.empty()) {
    auto in = open_input(trials_path);
    const auto trials = itsg::load_trials(in);
    if (trials.empty()) throw itsg::DataError("no trial records in " + trials_path);
    long grasp_attempts = 0, grasp_successes = 0, place_attempts = 0, place_successes = 0;
    long succeeded = 0, reused = 0;
    std::vector<double> pos_errors, ang_errors, combined_errors;
    for (const auto& trial : trials) {
      grasp_attempts += trial.grasp_attempts;
      grasp_successes += trial.grasp_successes;
      place_attempts += trial.place_attempts;
      place_successes += trial.place_successes;
      succeeded += trial.success ? 1 : 0;
      reused += trial.reused_policy ? 1 : 0;
      for (const auto& pl : trial.placements) {
        const auto err = itsg::pose_error_6d(pl.p_est, pl.p_gt, pl.theta_err);
        pos_errors.push_back(err.pos);
        ang_errors.push_back(err.ang);
        combined_errors.push_back(err.combined);
      }
    }
    const long n = static_cast<long>(trials.size());
    json tj;
    tj["trials"] = n;
    tj["grasp_success_rate"] = grasp_attempts > 0
                                   ? json(itsg::success_rate(grasp_successes, grasp_attempts))
                                   : json(nullptr);
    tj["place_success_rate"] = place_attempts > 0
                                   ? json(itsg::success_rate(place_successes, place_attempts))
                                   : json(nullptr);
    tj["task_success_rate"] = itsg::success_rate(succeeded, n);
    tj["policy_reuse_rate"] = itsg::success_rate(reused, n);
    if (!pos_errors.empty()) {
      tj["placement_error"] = {{"position_m", mean_of(pos_errors)},
                               {"angle_rad", mean_of(ang_errors)},
                               {"combined", mean_of(combined_errors)}};
    }
    report["trials"] = std::move(tj);
  }

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report["seconds"] = seconds;

  const fs::path out(run.out_dir);
  write_doc(out / "report.json", report);
  write_doc(out / "manifest.json", itsg::to_json(make_manifest("eval", cfg, run.seed, digests)));

  if (!graph_scores.empty()) {
    std::printf("eval: graph agreement %.4f | boundary agreement %.4f | plan coverage %.4f\n",
                mean_of(graph_scores), mean_of(boundary_scores), mean_of(coverage_scores));
  }
  std::printf("eval: %zu demonstrations in %.3f s -> %s\n", demo_paths.size(), seconds,
              (out / "report.json").string().c_str());

  if (do_assert) {
    bool ok = true;
    if (graph_scores.empty()) {
      std::cerr << kToolName << ": --assert needs --demo/--gt pairs to check\n";
      ok = false;
    } else {
      if (mean_of(graph_scores) < min_graph) {
        std::cerr << kToolName << ": graph agreement " << mean_of(graph_scores) << " below "
                  << min_graph << "\n";
        ok = false;
      }
      if (mean_of(boundary_scores) < min_boundary) {
        std::cerr << kToolName << ": boundary agreement " << mean_of(boundary_scores) << " below "
                  << min_boundary << "\n";
        ok = false;
      }
    }
    if (!ok) return 3;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scene-graph timelines, subtask segments, and behavior-tree plans "
               "from demonstration pose logs"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  struct {
    RunOptions run;
    std::string demo;
    bool csv = false;
  } an;
  auto* c_analyze =
      app.add_subcommand("analyze", "Detect interaction events and write windowed signal traces");
  c_analyze->add_option("demo", an.demo, "Line-delimited demonstration log")->required();
  c_analyze->add_flag("--csv", an.csv, "Also write the traces as long-format CSV");
  an.run.attach(*c_analyze);

  struct {
    RunOptions run;
    std::string demo;
  } gr;
  auto* c_graph = app.add_subcommand("graph", "Build the frame-by-frame scene-graph timeline");
  c_graph->add_option("demo", gr.demo, "Line-delimited demonstration log")->required();
  gr.run.attach(*c_graph);

  struct {
    RunOptions run;
    std::string demo;
  } sg;
  auto* c_segment =
      app.add_subcommand("segment", "Split the demonstration into subtask segments");
  c_segment->add_option("demo", sg.demo, "Line-delimited demonstration log")->required();
  sg.run.attach(*c_segment);

  struct {
    RunOptions run;
    std::string demo;
  } pl;
  auto* c_plan = app.add_subcommand("plan", "Emit the behavior-tree plan document");
  c_plan->add_option("demo", pl.demo, "Line-delimited demonstration log")->required();
  pl.run.attach(*c_plan);

  struct {
    RunOptions run;
    std::vector<std::string> demos;
    std::vector<std::string> gts;
    std::string trials;
    bool do_assert = false;
    double min_graph = 0.95;
    double min_boundary = 0.90;
  } ev;
  auto* c_eval =
      app.add_subcommand("eval", "Score predictions against references and logged trials");
  c_eval->add_option("--demo", ev.demos, "Demonstration log (repeat per demo)");
  c_eval->add_option("--gt", ev.gts, "Reference document paired with the matching --demo");
  c_eval->add_option("--trials", ev.trials, "Line-delimited execution trial log");
  c_eval->add_flag("--assert", ev.do_assert, "Exit 3 when an aggregate falls below its floor");
  c_eval->add_option("--min-gra", ev.min_graph, "Graph agreement floor for --assert")
      ->capture_default_str();
  c_eval->add_option("--min-tsa", ev.min_boundary, "Boundary agreement floor for --assert")
      ->capture_default_str();
  ev.run.attach(*c_eval);

  struct {
    RunOptions run;
    std::string source;
    bool list = false;
  } sy;
  auto* c_synth =
      app.add_subcommand("synth", "Render a script or built-in template into a demonstration");
  c_synth->add_option("script", sy.source, "Script JSON file or template name");
  c_synth->add_flag("--list", sy.list, "List the built-in template names and exit");
  sy.run.attach(*c_synth);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;  // help and version exit 0; anything else is a usage error
  }

  try {
    if (app.got_subcommand(c_analyze)) return cmd_analyze(an.run, an.demo, an.csv);
    if (app.got_subcommand(c_graph)) return cmd_graph(gr.run, gr.demo);
    if (app.got_subcommand(c_segment)) return cmd_segment(sg.run, sg.demo);
    if (app.got_subcommand(c_plan)) return cmd_plan(pl.run, pl.demo);
    if (app.got_subcommand(c_eval))
      return cmd_eval(ev.run, ev.demos, ev.gts, ev.trials, ev.do_assert, ev.min_graph,
                      ev.min_boundary);
    if (app.got_subcommand(c_synth)) return cmd_synth(sy.run, sy.source, sy.list);
  } catch (const itsg::DataError& e) {
    std::cerr << kToolName << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << kToolName << ": " << e.what() << "\n";
    return 2;
  }
  return 0;
}
