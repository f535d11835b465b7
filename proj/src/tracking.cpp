#include "peek/tracking.hpp"

#include <string>

#include "peek/renderer.hpp"

namespace peek {

std::vector<NormPoint> init_grid(const GridSpec& spec) {
  if (spec.side < 1) {
    throw ConfigError("grid side must be >= 1, got " +
                      std::to_string(spec.side));
  }
  std::vector<NormPoint> points;
  points.reserve(static_cast<std::size_t>(spec.side) * spec.side);
  for (int j = 0; j < spec.side; ++j) {
    for (int i = 0; i < spec.side; ++i) {
      points.emplace_back((i + 0.5) / spec.side, (j + 0.5) / spec.side);
    }
  }
  return points;
}

MaskedFrames masked_frames_for_detector(
    const Trajectory& trajectory,
    const std::vector<std::vector<NormPoint>>& task_points, double edge_frac) {
  if (task_points.size() != trajectory.frames.size()) {
    throw DataError("task points not aligned to frames: " +
                    std::to_string(task_points.size()) + " point sets for " +
                    std::to_string(trajectory.frames.size()) + " frames");
  }
  RenderSpec spec;
  spec.mask_edge_frac = edge_frac;
  MaskedFrames out;
  out.frames.reserve(trajectory.frames.size());
  out.empty_frames.reserve(trajectory.frames.size());
  for (std::size_t t = 0; t < trajectory.frames.size(); ++t) {
    out.frames.push_back(apply_mask(trajectory.frames[t], task_points[t], spec));
    out.empty_frames.push_back(task_points[t].empty());
  }
  return out;
}

GripperPath gripper_path_from_boxes(const std::vector<GripperBox>& boxes,
                                    int num_frames) {
  if (static_cast<int>(boxes.size()) != num_frames) {
    throw DataError("gripper boxes not aligned to frames: " +
                    std::to_string(boxes.size()) + " boxes for " +
                    std::to_string(num_frames) + " frames");
  }
  // prev_present[t]: index of the nearest present detection at or before t.
  std::vector<int> prev_present(num_frames, -1);
  std::vector<int> next_present(num_frames, -1);
  int last = -1;
  for (int t = 0; t < num_frames; ++t) {
    if (boxes[t].present) last = t;
    prev_present[t] = last;
  }
  last = -1;
  for (int t = num_frames - 1; t >= 0; --t) {
    if (boxes[t].present) last = t;
    next_present[t] = last;
  }
  if (prev_present[num_frames - 1] == -1) {
    throw SkipTrajectory("no gripper detections in any frame");
  }

  GripperPath path;
  path.points.reserve(num_frames);
  path.interpolated.reserve(num_frames);
  for (int t = 0; t < num_frames; ++t) {
    if (boxes[t].present) {
      path.points.push_back(boxes[t].center());
      path.interpolated.push_back(false);
      continue;
    }
    const int p = prev_present[t];
    const int n = next_present[t];
    NormPoint filled;
    if (p >= 0 && n >= 0) {
      const NormPoint a = boxes[p].center();
      const NormPoint b = boxes[n].center();
      filled = NormPoint((a.x + b.x) / 2.0, (a.y + b.y) / 2.0);
    } else if (p >= 0) {
      filled = boxes[p].center();
    } else {
      filled = boxes[n].center();
    }
    path.points.push_back(filled);
    path.interpolated.push_back(true);
  }
  return path;
}

}  // namespace peek
