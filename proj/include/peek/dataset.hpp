#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "peek/types.hpp"

namespace peek {

// One trajectory directory: frames, instruction, point tracks and gripper
// detections, all aligned to frame indices 0..T-1.
struct TrajectoryRecord {
  std::string id;
  Trajectory trajectory;
  TrackSet tracks;
  std::vector<GripperBox> boxes;

  int length() const { return trajectory.length(); }
};

// Layout under a dataset root:
//   <root>/<traj_id>/frames/%06d.png
//   <root>/<traj_id>/instruction.txt
//   <root>/<traj_id>/tracks.jsonl    one line per frame: [[x,y], ...]
//   <root>/<traj_id>/gripper.jsonl   one line per frame: {present,x0,y0,x1,y1,conf}
//   <root>/<traj_id>/annotations.jsonl   output, one line per query frame

std::vector<std::string> list_trajectory_dirs(
    const std::filesystem::path& root);

TrajectoryRecord load_trajectory_dir(const std::filesystem::path& dir);

// Loads every trajectory directory under root, sorted by id. Empty root
// yields an empty list; malformed trajectories throw DataError naming the
// trajectory and file.
std::vector<TrajectoryRecord> load_dataset(const std::filesystem::path& root);

void write_trajectory(const std::filesystem::path& root,
                      const TrajectoryRecord& record);

void write_annotations(const std::filesystem::path& traj_dir,
                       const std::vector<AnnotationBundle>& bundles);

std::vector<AnnotationBundle> read_annotations(
    const std::filesystem::path& file);

}  // namespace peek
