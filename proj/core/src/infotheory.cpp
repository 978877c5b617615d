#include "itsg/infotheory.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

namespace itsg {

std::int64_t bin_index(double v, double bin_width) {
  return static_cast<std::int64_t>(std::floor(v / bin_width));
}

Histogram quantize(std::span<const double> values, double bin_width) {
  if (values.empty()) throw std::invalid_argument("quantize: empty input");
  if (bin_width <= 0.0) throw std::invalid_argument("quantize: bin_width must be positive");
  Histogram h;
  h.bin_width = bin_width;
  for (double v : values) ++h.counts[bin_index(v, bin_width)];
  h.total = static_cast<std::int64_t>(values.size());
  return h;
}

namespace {

// Sums -scale * p ln p over a count multiset.  Counts are sorted first so
// the floating-point result does not depend on container iteration order;
// this is what makes mutual information exactly symmetric.
double entropy_from_counts(std::vector<std::int64_t> counts, std::int64_t total,
                           double scale) {
  std::sort(counts.begin(), counts.end());
  const double n = static_cast<double>(total);
  double acc = 0.0;
  for (std::int64_t c : counts) {
    const double p = static_cast<double>(c) / n;
    acc += p * std::log(p);
  }
  return -scale * acc;
}

}  // namespace

double entropy(const Histogram& h, double scale) {
  if (h.total <= 0) throw std::invalid_argument("entropy: empty histogram");
  std::vector<std::int64_t> counts;
  counts.reserve(h.counts.size());
  for (const auto& [bin, c] : h.counts) counts.push_back(c);
  return entropy_from_counts(std::move(counts), h.total, scale);
}

double entropy(std::span<const double> window, const AnalysisConfig& cfg) {
  return entropy(quantize(window, cfg.bin_width), cfg.entropy_scale);
}

double joint_entropy(std::span<const double> x, std::span<const double> y,
                     const AnalysisConfig& cfg) {
  if (x.empty() || x.size() != y.size())
    throw std::invalid_argument("joint_entropy: windows must have equal nonzero length");
  if (cfg.bin_width <= 0.0) throw std::invalid_argument("joint_entropy: bin_width must be positive");
  std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> cells;
  for (std::size_t i = 0; i < x.size(); ++i)
    ++cells[{bin_index(x[i], cfg.bin_width), bin_index(y[i], cfg.bin_width)}];
  std::vector<std::int64_t> counts;
  counts.reserve(cells.size());
  for (const auto& [cell, c] : cells) counts.push_back(c);
  return entropy_from_counts(std::move(counts), static_cast<std::int64_t>(x.size()),
                             cfg.entropy_scale);
}

double mutual_information(std::span<const double> x, std::span<const double> y,
                          const AnalysisConfig& cfg) {
  return entropy(x, cfg) + entropy(y, cfg) - joint_entropy(x, y, cfg);
}

const char* to_string(Axis axis) {
  switch (axis) {
    case Axis::X: return "x";
    case Axis::Y: return "y";
    case Axis::Z: return "z";
  }
  return "x";
}

namespace {

std::vector<double> axis_window(const EntityTrack& tr, int axis, long centre, int half) {
  std::vector<double> w;
  w.reserve(2 * half + 1);
  for (long j = centre - half; j <= centre + half; ++j)
    w.push_back(tr.samples[j].p[axis]);
  return w;
}

struct WindowLayout {
  int n = 0;
  int half = 0;
  long first = 0;  // first valid centre index
  long last = 0;   // last valid centre index (inclusive)
};

WindowLayout layout(const EntityTrack& tr, const AnalysisConfig& cfg) {
  WindowLayout wl;
  wl.n = window_samples(cfg, 1.0 / tr.median_dt());
  wl.half = wl.n / 2;
  wl.first = wl.half;
  wl.last = static_cast<long>(tr.samples.size()) - 1 - wl.half;
  return wl;
}

}  // namespace

double mi_3d(const EntityTrack& a, const EntityTrack& b, double t,
             const AnalysisConfig& cfg) {
  const WindowLayout wl = layout(a, cfg);
  const long ca = nearest_index(a, t);
  const long cb = nearest_index(b, t);
  if (ca < wl.first || ca > wl.last || cb - wl.half < 0 ||
      cb + wl.half >= static_cast<long>(b.samples.size()))
    throw DataError("mi_3d: window extends beyond track range");
  const int axes = cfg.planar ? 2 : 3;
  double sum = 0.0;
  for (int axis = 0; axis < axes; ++axis)
    sum += mutual_information(axis_window(a, axis, ca, wl.half),
                              axis_window(b, axis, cb, wl.half), cfg);
  return sum;
}

EntropyTrace entropy_trace(const EntityTrack& track, Axis axis, const AnalysisConfig& cfg) {
  cfg.validate();
  const WindowLayout wl = layout(track, cfg);
  EntropyTrace trace{track.id, axis, {}};
  const int ax = static_cast<int>(axis);
  for (long c = wl.first; c <= wl.last; ++c)
    trace.values.push_back({track.samples[c].t,
                            entropy(axis_window(track, ax, c, wl.half), cfg)});
  return trace;
}

MITrace mi_trace(const EntityTrack& a, const EntityTrack& b, const AnalysisConfig& cfg) {
  cfg.validate();
  if (a.samples.size() != b.samples.size())
    throw DataError("mi_trace: tracks do not share a common frame grid");
  const WindowLayout wl = layout(a, cfg);
  MITrace trace{a.id, b.id, {}};
  const int axes = cfg.planar ? 2 : 3;
  for (long c = wl.first; c <= wl.last; ++c) {
    double sum = 0.0;
    for (int axis = 0; axis < axes; ++axis)
      sum += mutual_information(axis_window(a, axis, c, wl.half),
                                axis_window(b, axis, c, wl.half), cfg);
    trace.values.push_back({a.samples[c].t, sum});
  }
  return trace;
}

DistanceTrace distance_trace(const EntityTrack& a, const EntityTrack& b,
                             const AnalysisConfig& cfg) {
  cfg.validate();
  if (a.samples.size() != b.samples.size())
    throw DataError("distance_trace: tracks do not share a common frame grid");
  const WindowLayout wl = layout(a, cfg);
  DistanceTrace trace{a.id, b.id, {}};
  if (wl.last < wl.first) return trace;

  // Sliding sum over per-frame distances.
  double sum = 0.0;
  for (long j = 0; j < wl.n; ++j)
    sum += planar_norm(a.samples[j].p - b.samples[j].p, cfg.planar);
  trace.values.push_back({a.samples[wl.first].t, sum / wl.n});
  for (long c = wl.first + 1; c <= wl.last; ++c) {
    sum -= planar_norm(a.samples[c - wl.half - 1].p - b.samples[c - wl.half - 1].p, cfg.planar);
    sum += planar_norm(a.samples[c + wl.half].p - b.samples[c + wl.half].p, cfg.planar);
    trace.values.push_back({a.samples[c].t, sum / wl.n});
  }
  return trace;
}

Trend trend(std::span<const double> series, int n) {
  if (n < 2) throw std::invalid_argument("trend: n must be at least 2");
  if (static_cast<int>(series.size()) < n)
    throw std::invalid_argument("trend: series shorter than n");
  const std::size_t start = series.size() - static_cast<std::size_t>(n);
  int negative = 0, non_negative = 0;
  for (std::size_t i = start + 1; i < series.size(); ++i)
    (series[i] - series[i - 1] < 0.0 ? negative : non_negative)++;
  return negative > non_negative ? Trend::Decreasing : Trend::NotDecreasing;
}

}  // namespace itsg
