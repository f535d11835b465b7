#include "peek/scheduler.hpp"

#include <string>

namespace peek {

Frame schedule_step(ScheduleState& state, const Frame& frame,
                    const AnnotationProvider& provider) {
  if (state.period < 1) {
    throw ConfigError("schedule period must be >= 1, got " +
                      std::to_string(state.period));
  }
  if (state.stream_start < 0) state.stream_start = frame.index;

  if ((frame.index - state.stream_start) % state.period == 0) {
    try {
      state.active_bundle = provider(frame);
      state.last_query_frame = frame.index;
      state.provider_calls += 1;
      state.stale = false;
    } catch (const std::exception& e) {
      if (!state.active_bundle) {
        throw Error(std::string("annotation provider failed on the first "
                                "query: ") +
                    e.what());
      }
      state.stale = true;
    }
  }
  return compose(frame, *state.active_bundle, state.spec);
}

}  // namespace peek
