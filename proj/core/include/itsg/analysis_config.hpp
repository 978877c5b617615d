// Tunable parameters shared by every analysis stage.  One struct travels
// through the whole pipeline so that a run is reproducible from a single
// config snapshot.
#pragma once

namespace itsg {

struct AnalysisConfig {
  double window_s = 1.0;       // sliding-window length in seconds
  double bin_width = 0.01;     // histogram quantization step in metres
  double mi_on = 0.05;         // mutual-information activation threshold (nats)
  double mi_off = 0.05;        // mutual-information deactivation threshold (nats)
  double ho_dist = 0.15;       // hand-object proximity gate in metres
  double oo_dist = 0.20;       // object-object proximity gate in metres
  int trend_n = 20;            // samples consulted by the trend test
  double entropy_scale = 1.0;  // scale factor applied to entropy values
  bool planar = true;          // restrict geometry to the table plane (x, y)
  double pos_tol = 0.02;       // node position tolerance for graph equality (m)
  double tsa_tol = 0.5;        // boundary matching tolerance in seconds

  /// Throws std::invalid_argument on nonsensical values (non-positive
  /// lengths/thresholds, trend_n < 2, mi_off > mi_on).
  void validate() const;
};

/// Number of samples a window of cfg.window_s covers at `rate` Hz, rounded
/// and then forced odd (upwards) so windows sit symmetrically around their
/// centre frame.  Throws std::invalid_argument when rate <= 0.
int window_samples(const AnalysisConfig& cfg, double rate);

}  // namespace itsg
