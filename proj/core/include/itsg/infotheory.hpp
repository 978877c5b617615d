// Sliding-window information measures over quantized pose signals: scalar
// entropy, joint entropy, mutual information, per-axis traces, and the
// majority-vote trend test used by the interaction state machines.
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "itsg/analysis_config.hpp"
#include "itsg/demonstration.hpp"

namespace itsg {

/// Count histogram over quantized values; bin index = floor(v / bin_width),
/// so the bin origin is fixed at zero and quantization is shift-consistent.
struct Histogram {
  double bin_width = 0.0;
  std::unordered_map<std::int64_t, std::int64_t> counts;
  std::int64_t total = 0;
};

std::int64_t bin_index(double v, double bin_width);

/// Throws std::invalid_argument on an empty input or non-positive bin width.
Histogram quantize(std::span<const double> values, double bin_width);

/// Shannon entropy of the bin distribution in nats, scaled by `scale`:
/// H = -scale * sum p ln p.  Bins are accumulated in sorted-count order so
/// the result is independent of hash iteration order.
double entropy(const Histogram& h, double scale);

/// Entropy of one window of raw values under cfg (bin_width, entropy_scale).
double entropy(std::span<const double> window, const AnalysisConfig& cfg);

/// Joint entropy over the 2D histogram of paired bin indices.  Both windows
/// must have equal, nonzero length.
double joint_entropy(std::span<const double> x, std::span<const double> y,
                     const AnalysisConfig& cfg);

/// Mutual information H(X) + H(Y) - H(X,Y) in nats (>= 0 up to numerical
/// tolerance).  Bit-for-bit symmetric in its arguments.
double mutual_information(std::span<const double> x, std::span<const double> y,
                          const AnalysisConfig& cfg);

/// Sum of per-axis mutual information between two entities over the window
/// centred at time t; axes {x, y} when cfg.planar, else {x, y, z}.
double mi_3d(const EntityTrack& a, const EntityTrack& b, double t,
             const AnalysisConfig& cfg);

enum class Axis { X, Y, Z };
const char* to_string(Axis axis);

struct TracePoint {
  double t = 0.0;
  double value = 0.0;
};

/// Windowed entropy of one position axis of one entity.  Values start and
/// end half a window inside the track, so every point is computed from a
/// complete window.
struct EntropyTrace {
  std::string entity_id;
  Axis axis = Axis::X;
  std::vector<TracePoint> values;
};

/// Windowed per-axis-summed mutual information between two entities.
struct MITrace {
  std::string first_id, second_id;
  std::vector<TracePoint> values;
};

/// Windowed mean distance between two entities.
struct DistanceTrace {
  std::string first_id, second_id;
  std::vector<TracePoint> values;
};

EntropyTrace entropy_trace(const EntityTrack& track, Axis axis, const AnalysisConfig& cfg);
MITrace mi_trace(const EntityTrack& a, const EntityTrack& b, const AnalysisConfig& cfg);
DistanceTrace distance_trace(const EntityTrack& a, const EntityTrack& b,
                             const AnalysisConfig& cfg);

enum class Trend { Decreasing, NotDecreasing };

/// Majority vote over the last n samples of a series: Decreasing iff the
/// strictly negative consecutive differences outnumber the non-negative
/// ones among the last n-1 differences.  Throws std::invalid_argument when
/// the series holds fewer than n samples or n < 2.
Trend trend(std::span<const double> series, int n);

}  // namespace itsg
