#include "itsg/demonstration.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <istream>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>

#include "itsg/analysis_config.hpp"

namespace itsg {

using json = nlohmann::ordered_json;

const char* to_string(EntityKind kind) {
  switch (kind) {
    case EntityKind::HandLeft: return "hand_left";
    case EntityKind::HandRight: return "hand_right";
    case EntityKind::Object: return "object";
  }
  return "object";
}

EntityKind entity_kind_from_string(const std::string& s) {
  if (s == "hand_left") return EntityKind::HandLeft;
  if (s == "hand_right") return EntityKind::HandRight;
  if (s == "object") return EntityKind::Object;
  throw DataError("unknown entity kind '" + s + "'");
}

bool operator==(const PoseSample& a, const PoseSample& b) {
  return a.t == b.t && a.p == b.p && a.theta == b.theta;
}

bool operator==(const EntityTrack& a, const EntityTrack& b) {
  return a.id == b.id && a.kind == b.kind && a.label == b.label && a.samples == b.samples;
}

bool operator==(const Demonstration& a, const Demonstration& b) {
  return a.rate == b.rate && a.meta == b.meta && a.tracks == b.tracks;
}

double EntityTrack::median_dt() const {
  if (samples.size() < 2)
    throw DataError("track '" + id + "' needs at least two samples");
  std::vector<double> dts;
  dts.reserve(samples.size() - 1);
  for (std::size_t i = 1; i < samples.size(); ++i)
    dts.push_back(samples[i].t - samples[i - 1].t);
  std::nth_element(dts.begin(), dts.begin() + dts.size() / 2, dts.end());
  return dts[dts.size() / 2];
}

const EntityTrack* Demonstration::find(const std::string& id) const {
  for (const auto& tr : tracks)
    if (tr.id == id) return &tr;
  return nullptr;
}

std::vector<const EntityTrack*> Demonstration::hands() const {
  std::vector<const EntityTrack*> out;
  for (const auto& tr : tracks)
    if (tr.is_hand()) out.push_back(&tr);
  return out;
}

std::vector<const EntityTrack*> Demonstration::objects() const {
  std::vector<const EntityTrack*> out;
  for (const auto& tr : tracks)
    if (!tr.is_hand()) out.push_back(&tr);
  return out;
}

std::size_t Demonstration::frame_count() const {
  if (tracks.empty()) return 0;
  const std::size_t n = tracks.front().samples.size();
  for (const auto& tr : tracks)
    if (tr.samples.size() != n)
      throw DataError("tracks do not share a common frame grid");
  return n;
}

namespace {

[[noreturn]] void fail_line(std::size_t line_no, const std::string& what) {
  std::ostringstream os;
  os << "line " << line_no << ": " << what;
  throw DataError(os.str());
}

Eigen::Vector3d read_vec3(const json& j, const char* field, std::size_t line_no) {
  if (!j.contains(field) || !j[field].is_array() || j[field].size() != 3)
    fail_line(line_no, std::string("field '") + field + "' must be an array of 3 numbers");
  Eigen::Vector3d v;
  for (int i = 0; i < 3; ++i) {
    if (!j[field][i].is_number())
      fail_line(line_no, std::string("field '") + field + "' must be an array of 3 numbers");
    v[i] = j[field][i].get<double>();
  }
  return v;
}

}  // namespace

Demonstration load_demonstration(std::istream& in) {
  Demonstration demo;
  std::map<std::string, std::size_t> index;
  bool saw_header = false;
  bool saw_record = false;
  bool header_rate = false;
  std::string line;
  std::size_t line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;

    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      fail_line(line_no, std::string("invalid JSON (") + e.what() + ")");
    }
    if (!j.is_object()) fail_line(line_no, "expected a JSON object");

    if (!j.contains("t")) {
      // Header line: only legal before any record, at most once.
      if (saw_record || saw_header)
        fail_line(line_no, "unexpected header object");
      saw_header = true;
      if (j.contains("rate")) {
        if (!j["rate"].is_number() || j["rate"].get<double>() <= 0.0)
          fail_line(line_no, "header 'rate' must be a positive number");
        demo.rate = j["rate"].get<double>();
        header_rate = true;
      }
      if (j.contains("meta")) {
        if (!j["meta"].is_object()) fail_line(line_no, "header 'meta' must be an object");
        for (const auto& [k, v] : j["meta"].items())
          demo.meta[k] = v.is_string() ? v.get<std::string>() : v.dump();
      }
      continue;
    }

    for (const char* field : {"id", "kind", "label"})
      if (!j.contains(field) || !j[field].is_string())
        fail_line(line_no, std::string("missing or non-string field '") + field + "'");
    if (!j["t"].is_number()) fail_line(line_no, "field 't' must be a number");

    PoseSample s;
    s.t = j["t"].get<double>();
    s.p = read_vec3(j, "p", line_no);
    s.theta = read_vec3(j, "theta", line_no);

    const std::string id = j["id"].get<std::string>();
    EntityKind kind;
    try {
      kind = entity_kind_from_string(j["kind"].get<std::string>());
    } catch (const DataError& e) {
      fail_line(line_no, e.what());
    }
    const std::string label = j["label"].get<std::string>();

    auto it = index.find(id);
    if (it == index.end()) {
      index.emplace(id, demo.tracks.size());
      demo.tracks.push_back(EntityTrack{id, kind, label, {}});
      it = index.find(id);
    }
    EntityTrack& track = demo.tracks[it->second];
    if (track.kind != kind) fail_line(line_no, "entity '" + id + "' changes kind");
    if (track.label != label) fail_line(line_no, "entity '" + id + "' changes label");
    track.samples.push_back(s);
    saw_record = true;
  }

  if (!saw_record) throw DataError("stream contains no records");

  // Records may arrive in any order; tracks are sorted, duplicates rejected.
  for (auto& track : demo.tracks) {
    std::stable_sort(track.samples.begin(), track.samples.end(),
                     [](const PoseSample& a, const PoseSample& b) { return a.t < b.t; });
    for (std::size_t i = 1; i < track.samples.size(); ++i)
      if (track.samples[i].t == track.samples[i - 1].t) {
        std::ostringstream os;
        os << "duplicate timestamp " << track.samples[i].t << " for entity '" << track.id << "'";
        throw DataError(os.str());
      }
  }

  if (!header_rate) {
    std::vector<double> dts;
    for (const auto& tr : demo.tracks)
      for (std::size_t i = 1; i < tr.samples.size(); ++i)
        dts.push_back(tr.samples[i].t - tr.samples[i - 1].t);
    if (dts.empty())
      throw DataError("cannot infer rate: no track has two samples and no header rate given");
    std::nth_element(dts.begin(), dts.begin() + dts.size() / 2, dts.end());
    demo.rate = 1.0 / dts[dts.size() / 2];
  }
  return demo;
}

void save_demonstration(const Demonstration& demo, std::ostream& out) {
  json header;
  header["rate"] = demo.rate;
  header["meta"] = json::object();
  for (const auto& [k, v] : demo.meta) header["meta"][k] = v;
  out << header.dump() << '\n';

  // Merge records across tracks in time order; ties keep track order so a
  // save/load round trip preserves the track sequence.
  struct Ref {
    double t;
    std::size_t track, sample;
  };
  std::vector<Ref> refs;
  for (std::size_t ti = 0; ti < demo.tracks.size(); ++ti)
    for (std::size_t si = 0; si < demo.tracks[ti].samples.size(); ++si)
      refs.push_back({demo.tracks[ti].samples[si].t, ti, si});
  std::stable_sort(refs.begin(), refs.end(),
                   [](const Ref& a, const Ref& b) { return a.t < b.t; });

  for (const Ref& r : refs) {
    const EntityTrack& tr = demo.tracks[r.track];
    const PoseSample& s = tr.samples[r.sample];
    json j;
    j["t"] = s.t;
    j["id"] = tr.id;
    j["kind"] = to_string(tr.kind);
    j["label"] = tr.label;
    j["p"] = {s.p.x(), s.p.y(), s.p.z()};
    j["theta"] = {s.theta.x(), s.theta.y(), s.theta.z()};
    out << j.dump() << '\n';
  }
}

namespace {

// Linear interpolation inside a track; exact hits reproduce the stored
// sample bit-for-bit.
PoseSample interp(const EntityTrack& track, double t) {
  const auto& s = track.samples;
  auto it = std::upper_bound(s.begin(), s.end(), t,
                             [](double v, const PoseSample& ps) { return v < ps.t; });
  std::size_t hi = static_cast<std::size_t>(it - s.begin());
  if (hi == 0) hi = 1;
  if (hi == s.size()) hi = s.size() - 1;
  const std::size_t lo = hi - 1;
  if (t == s[lo].t) return s[lo];
  if (t == s[hi].t) return s[hi];
  double u = (t - s[lo].t) / (s[hi].t - s[lo].t);
  u = std::clamp(u, 0.0, 1.0);
  PoseSample out;
  out.t = t;
  out.p = (1.0 - u) * s[lo].p + u * s[hi].p;
  out.theta = (1.0 - u) * s[lo].theta + u * s[hi].theta;
  return out;
}

}  // namespace

Demonstration resample_uniform(const Demonstration& demo, double rate) {
  if (rate <= 0.0) throw std::invalid_argument("resample_uniform: rate must be positive");
  if (demo.tracks.empty()) throw DataError("resample_uniform: demonstration has no tracks");

  double t0 = -std::numeric_limits<double>::infinity();
  double t1 = std::numeric_limits<double>::infinity();
  for (const auto& tr : demo.tracks) {
    if (tr.samples.size() < 2)
      throw DataError("resample_uniform: track '" + tr.id + "' needs at least two samples");
    t0 = std::max(t0, tr.samples.front().t);
    t1 = std::min(t1, tr.samples.back().t);
  }
  if (!(t1 > t0))
    throw DataError("resample_uniform: tracks share no common time range");

  const auto n = static_cast<std::size_t>(std::floor((t1 - t0) * rate + 1e-9)) + 1;

  Demonstration out;
  out.rate = rate;
  out.meta = demo.meta;
  out.tracks.reserve(demo.tracks.size());
  for (const auto& tr : demo.tracks) {
    EntityTrack rt{tr.id, tr.kind, tr.label, {}};
    rt.samples.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double t = t0 + static_cast<double>(k) / rate;
      rt.samples.push_back(interp(tr, t));
    }
    out.tracks.push_back(std::move(rt));
  }
  return out;
}

double planar_norm(const Eigen::Vector3d& d, bool planar) {
  return planar ? std::hypot(d.x(), d.y()) : d.norm();
}

long nearest_index(const EntityTrack& track, double t) {
  const auto& s = track.samples;
  if (s.empty()) throw DataError("nearest_index: track '" + track.id + "' is empty");
  auto it = std::lower_bound(s.begin(), s.end(), t,
                             [](const PoseSample& ps, double v) { return ps.t < v; });
  if (it == s.end()) return static_cast<long>(s.size()) - 1;
  long idx = it - s.begin();
  if (idx > 0 && t - s[idx - 1].t <= s[idx].t - t) --idx;
  return idx;
}

double mean_distance(const EntityTrack& a, const EntityTrack& b, double t,
                     const AnalysisConfig& cfg) {
  cfg.validate();
  const double dt = a.median_dt();
  const int n = window_samples(cfg, 1.0 / dt);
  const int half = n / 2;

  const long ca = nearest_index(a, t);
  const long cb = nearest_index(b, t);
  if (ca - half < 0 || cb - half < 0 ||
      ca + half >= static_cast<long>(a.samples.size()) ||
      cb + half >= static_cast<long>(b.samples.size()))
    throw DataError("mean_distance: window extends beyond track range");

  double sum = 0.0;
  for (int j = -half; j <= half; ++j)
    sum += planar_norm(a.samples[ca + j].p - b.samples[cb + j].p, cfg.planar);
  return sum / n;
}

}  // namespace itsg
