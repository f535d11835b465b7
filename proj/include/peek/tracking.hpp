#pragma once

#include <vector>

#include "peek/types.hpp"

namespace peek {

struct GridSpec {
  int side = 15;
  int origin_frame = 0;  // frame the grid is initialized at
};

// side^2 points at cell centers ((i+0.5)/side, (j+0.5)/side), x varying
// fastest. Minimum pairwise spacing is 1/side.
std::vector<NormPoint> init_grid(const GridSpec& spec);

// Detector preprocessing: each frame blacked out except squares around that
// frame's task points. empty_frames flags frames that had no task points and
// came out fully black.
struct MaskedFrames {
  std::vector<Frame> frames;
  std::vector<bool> empty_frames;
};

MaskedFrames masked_frames_for_detector(
    const Trajectory& trajectory,
    const std::vector<std::vector<NormPoint>>& task_points, double edge_frac);

// Per-frame end-effector point: box center where a detection is present,
// otherwise the midpoint of the nearest detections before and after (the
// single nearest one at sequence ends). Throws SkipTrajectory when no frame
// has a detection.
GripperPath gripper_path_from_boxes(const std::vector<GripperBox>& boxes,
                                    int num_frames);

}  // namespace peek
