#pragma once

#include <vector>

#include "peek/types.hpp"

namespace peek {

// Tracks that survived the movement filter. Kept-major storage aligned to all
// frames: positions[k * num_frames + t] is kept track k at frame t.
struct TaskPointSet {
  std::vector<int> kept_ids;  // indices into the original TrackSet
  int num_frames = 0;
  std::vector<NormPoint> positions;

  int size() const { return static_cast<int>(kept_ids.size()); }

  const NormPoint& at(int kept_index, int frame) const {
    return positions[static_cast<std::size_t>(kept_index) * num_frames + frame];
  }

  std::vector<NormPoint> at_frame(int frame) const;
  std::vector<NormPoint> final_positions() const;
};

// Keeps tracks whose max pairwise Euclidean displacement across frames
// exceeds threshold. Throws SkipTrajectory when nothing passes.
TaskPointSet filter_moving(const TrackSet& tracks, double threshold);

}  // namespace peek
