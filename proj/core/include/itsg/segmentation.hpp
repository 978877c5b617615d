// Subtask segmentation: per-hand interaction episodes carved into motion
// primitives.  Transient contacts are filtered out here — they never create
// or split a segment — which is what keeps incidental fly-bys out of plans.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "itsg/analysis_config.hpp"
#include "itsg/demonstration.hpp"
#include "itsg/interaction.hpp"
#include "itsg/scenegraph.hpp"

namespace itsg {

enum class Primitive { Reach, Transport, Place, Retreat, Idle };

const char* to_string(Primitive p);
Primitive primitive_from_string(const std::string& s);

struct Segment {
  double start_t = 0.0;
  double end_t = 0.0;
  std::string hand_id;
  Primitive primitive = Primitive::Idle;
  std::optional<std::string> object_id;
  bool essential = false;  // true only for placements confirmed by an essential contact
};

/// Carve each hand's time line into primitives:
///   - a contiguous same-object engagement is Transport, switching to Place
///     at the placement evidence: the engagement's trailing docked run, or
///     the essential contact still open at release, whichever starts first;
///   - a gap leading into another engagement is Reach, the trailing gap is
///     Retreat, and a hand with no engagements at all is Idle throughout;
///   - transient contacts are ignored entirely.
/// Segments tile [first frame time, last frame time) per hand and are
/// returned sorted by (start_t, hand_id).  The timeline must belong to the
/// same demonstration as the events.
std::vector<Segment> segment(const GraphTimeline& timeline,
                             const std::vector<InteractionEvent>& events,
                             const Demonstration& demo, const AnalysisConfig& cfg);

/// The interior boundary instants: every distinct segment start/end except
/// the demonstration's own start and end. Sorted, duplicate-free.
std::vector<double> boundaries(const std::vector<Segment>& segments);

}  // namespace itsg
