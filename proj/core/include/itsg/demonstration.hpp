// Timestamped pose recordings: the input side of the pipeline.  A
// demonstration is a set of per-entity tracks (two hands plus any number of
// objects) sampled at a nominal rate, loaded from and saved to a
// line-delimited JSON stream.
#pragma once

#include <Eigen/Core>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace itsg {

/// Malformed or inconsistent input data (bad record, broken time grid, ...).
/// The command-line tool maps this to its data-error exit code.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class EntityKind { HandLeft, HandRight, Object };

const char* to_string(EntityKind kind);
EntityKind entity_kind_from_string(const std::string& s);

/// One 6-DoF sample: position in metres, orientation as Euler angles in
/// radians, taken at time t (seconds).
struct PoseSample {
  double t = 0.0;
  Eigen::Vector3d p = Eigen::Vector3d::Zero();
  Eigen::Vector3d theta = Eigen::Vector3d::Zero();
};

bool operator==(const PoseSample& a, const PoseSample& b);
inline bool operator!=(const PoseSample& a, const PoseSample& b) { return !(a == b); }

/// The pose history of a single entity, strictly increasing in t.
struct EntityTrack {
  std::string id;
  EntityKind kind = EntityKind::Object;
  std::string label;
  std::vector<PoseSample> samples;

  bool is_hand() const { return kind != EntityKind::Object; }
  /// Median inter-sample spacing in seconds; throws DataError on < 2 samples.
  double median_dt() const;
};

bool operator==(const EntityTrack& a, const EntityTrack& b);
inline bool operator!=(const EntityTrack& a, const EntityTrack& b) { return !(a == b); }

struct Demonstration {
  std::vector<EntityTrack> tracks;
  double rate = 0.0;  // nominal frames per second
  std::map<std::string, std::string> meta;

  const EntityTrack* find(const std::string& id) const;
  std::vector<const EntityTrack*> hands() const;
  std::vector<const EntityTrack*> objects() const;
  /// Frame count of the shared grid; throws DataError unless all tracks have
  /// the same sample count.
  std::size_t frame_count() const;
};

bool operator==(const Demonstration& a, const Demonstration& b);
inline bool operator!=(const Demonstration& a, const Demonstration& b) { return !(a == b); }

/// Reads a line-delimited JSON stream.  An optional leading header object
/// carries {"rate", "meta"}; every other line is a record
/// {"t", "id", "kind", "label", "p": [x,y,z], "theta": [a,b,g]}.
/// When the header is absent the rate is inferred from the median
/// inter-sample spacing.  Throws DataError (with the offending line number)
/// on malformed records, duplicate or non-monotonic timestamps, or an empty
/// stream.
Demonstration load_demonstration(std::istream& in);

/// Inverse of load_demonstration: header line first, then records merged
/// across tracks in time order (ties keep track order).  Values round-trip
/// bit-exactly for finite doubles.
void save_demonstration(const Demonstration& demo, std::ostream& out);

/// Linearly resamples every track onto a shared uniform grid at `rate` Hz
/// covering the intersection of all track time ranges.  Grid points that
/// coincide with an original sample reproduce it exactly, so resampling an
/// already-uniform demonstration at its own rate is the identity.
/// Throws DataError when the intersection is empty or a track has < 2
/// samples; std::invalid_argument when rate <= 0.
Demonstration resample_uniform(const Demonstration& demo, double rate);

struct AnalysisConfig;  // analysis_config.hpp

/// Mean per-frame distance between two entities over the window
/// [t - window/2, t + window/2]; planar (x, y) by default.  The window must
/// lie fully inside both tracks, otherwise DataError is thrown.
double mean_distance(const EntityTrack& a, const EntityTrack& b, double t,
                     const AnalysisConfig& cfg);

/// Euclidean norm of a displacement, restricted to (x, y) when planar.
double planar_norm(const Eigen::Vector3d& d, bool planar);

/// Index of the sample closest in time to t (ties towards the earlier one).
long nearest_index(const EntityTrack& track, double t);

}  // namespace itsg
