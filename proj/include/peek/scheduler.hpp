#pragma once

#include <functional>
#include <optional>

#include "peek/renderer.hpp"
#include "peek/types.hpp"

namespace peek {

// Closed-loop hold state: one provider call per period, the returned bundle
// applied unchanged to every frame until the next query.
struct ScheduleState {
  int period = 25;
  RenderSpec spec{};
  int stream_start = -1;      // index of the first frame seen
  int last_query_frame = -1;  // frame of the most recent provider call
  int provider_calls = 0;
  bool stale = false;  // last query failed, previous bundle held over
  std::optional<AnnotationBundle> active_bundle;
};

using AnnotationProvider = std::function<AnnotationBundle(const Frame&)>;

// Advances the stream by one frame. The provider runs iff
// (frame.index - stream_start) mod period == 0; its failure re-uses the
// previous bundle and sets stale, except on the first query where it is a
// hard error. Returns compose(frame, active_bundle).
Frame schedule_step(ScheduleState& state, const Frame& frame,
                    const AnnotationProvider& provider);

}  // namespace peek
