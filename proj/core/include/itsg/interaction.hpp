// Frame-by-frame hand-object and object-object interaction classification.
// A hand engages an object as CoupledMotion (joint movement) or Docked
// (static contact after coupled motion); the manipulated object relates to a
// background object through an essential contact (a stable placement
// relation, kept) or a transient one (incidental passing, filtered later).
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "itsg/analysis_config.hpp"
#include "itsg/demonstration.hpp"
#include "itsg/infotheory.hpp"

namespace itsg {

enum class HOKind { None, CoupledMotion, Docked };
enum class OOKind { None, EssentialContact, TransientContact };

/// Event/edge relation labels shared by events, scene graphs, and plans.
enum class InteractionKind { CoupledMotion, Docked, EssentialContact, TransientContact };

const char* to_string(InteractionKind kind);
InteractionKind interaction_kind_from_string(const std::string& s);

struct HOState {
  HOKind kind = HOKind::None;
  std::string object_id;  // present iff kind != None
  double mi = 0.0;        // pair mutual information at the classified frame
};

struct OOState {
  OOKind kind = OOKind::None;
  std::string manipulated_id;  // present iff kind != None
  std::string background_id;
};

/// A maximal run of one constant interaction state, as a half-open time
/// interval [start_t, end_t).  subject is the hand for HO kinds and the
/// manipulated object for OO kinds; mean_mi is filled for CoupledMotion.
struct InteractionEvent {
  InteractionKind kind = InteractionKind::CoupledMotion;
  std::string subject_id;
  std::string object_id;
  double start_t = 0.0;
  double end_t = 0.0;
  std::optional<double> mean_mi;
};

/// Precomputed windowed signals for one demonstration on its shared grid:
/// pairwise mutual information, windowed mean distances, and the entropy of
/// the distance series.  Series are indexed by frame; frames whose window is
/// incomplete hold NaN.  Pairs are computed lazily and cached.
class SignalCache {
 public:
  SignalCache(const Demonstration& demo, const AnalysisConfig& cfg);

  long frames() const { return frames_; }
  int half() const { return half_; }  // window half-width in frames
  double time_at(long k) const;
  double dt() const { return dt_; }

  /// Per-axis-summed MI between two entities (symmetric).
  const std::vector<double>& mi(const std::string& a, const std::string& b);
  /// Windowed mean distance between two entities (symmetric).
  const std::vector<double>& distance(const std::string& a, const std::string& b);
  /// Windowed entropy of the windowed mean-distance series (symmetric).
  const std::vector<double>& distance_entropy(const std::string& a, const std::string& b);

  /// Trend over series values ending at frame k; NotDecreasing when fewer
  /// than n valid samples are available.
  Trend trend_at(const std::vector<double>& series, long k, int n) const;

 private:
  const EntityTrack& track(const std::string& id) const;

  const Demonstration& demo_;
  AnalysisConfig cfg_;
  long frames_ = 0;
  int half_ = 0;
  double dt_ = 0.0;
  std::map<std::pair<std::string, std::string>, std::vector<double>> mi_, dist_, dist_ent_;
};

/// One classification step for a hand at frame k.  Candidate objects are
/// tried in increasing windowed-distance order (ties by id) and the first
/// positive detection wins:
///   - inside the proximity gate with MI above mi_on -> CoupledMotion;
///   - inside the gate with low MI -> Docked, but only as a continuation of
///     frame k-1's engagement with the same object (a docked contact never
///     begins from idle, which is what keeps a hand merely resting near an
///     object classified as None);
///   - otherwise the next candidate is tried.
/// Any active state ends once the distance leaves the gate.
HOState classify_ho(long k, const EntityTrack& hand,
                    const std::vector<const EntityTrack*>& objects,
                    const HOState& prev, const AnalysisConfig& cfg, SignalCache& cache);

/// One object-object step, evaluated only while the hand engagement `ho` is
/// active, for its manipulated object against stationary background
/// candidates in increasing distance order.  An existing essential contact
/// is sticky: it persists until the pair separates beyond oo_dist, and is
/// checked before any new detection.  A new in-gate candidate becomes
/// essential when the engagement is Docked, or when it is CoupledMotion
/// with the distance-entropy trend decreasing (the settling signature);
/// otherwise the contact is transient.
OOState classify_oo(long k, const HOState& ho, const EntityTrack& manipulated,
                    const std::vector<const EntityTrack*>& background,
                    const OOState& prev, const AnalysisConfig& cfg, SignalCache& cache);

/// Full sweep over all frames whose analysis window is complete.  Hands are
/// classified independently; contiguous equal states merge into events,
/// sorted by start time.  Established essential contacts are remembered per
/// object pair until the pair actually separates, so a release and re-grasp
/// resumes the essential relation instead of downgrading it to a transient
/// pass.  The demonstration must be on a shared uniform grid and contain at
/// least one hand.
std::vector<InteractionEvent> detect_events(const Demonstration& demo,
                                            const AnalysisConfig& cfg);

}  // namespace itsg
