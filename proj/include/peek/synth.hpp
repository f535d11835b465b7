#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "peek/dataset.hpp"
#include "peek/types.hpp"

namespace peek {

struct ObjectSpec {
  NormPoint rest;    // position until the carry begins
  NormPoint target;  // position from the release frame on
  double radius = 0.045;
};

// One manipulation: the gripper dwells at the object's rest position over
// frames [start, end] (the grasp interval, inclusive), then carries the
// object along its own path until `release`, where the object stays at its
// target. Scripts should place gripper waypoints so the gripper sits at
// `rest` through the dwell and reaches `target` at `release`; the factory
// below guarantees this.
struct GraspEvent {
  int start = 0;
  int end = 0;
  int release = 0;
  int object_id = 0;
};

struct SceneScript {
  int num_frames = 0;
  std::vector<std::pair<int, NormPoint>> waypoints;  // (frame, position)
  std::vector<GraspEvent> grasps;
  std::vector<ObjectSpec> objects;
  int width = 128;
  int height = 128;
  int grid_side = 15;
  double gripper_radius = 0.07;
  int on_gripper_points = 16;  // extra tracks attached to the gripper blob
  int on_object_points = 6;    // extra tracks attached to each object blob
  int distractor_count = 12;
  // Total drift of each distractor across the trajectory. Keep it below the
  // movement threshold: drifting distractors exist as sub-threshold lures
  // and the ground truth labels them as non-movers.
  double distractor_drift = 0.0;
  double noise_sigma = 0.0;  // iid Gaussian track jitter, normalized units
  std::uint64_t seed = 0;
  std::string instruction = "pick up the object and move it to the goal";
  bool render_frames = true;
};

struct GroundTruth {
  std::vector<int> mover_track_ids;  // tracks scripted to move
  std::vector<int> split_frames;     // floor((start+end)/2) per grasp
  std::vector<std::pair<int, int>> dwell_intervals;
  std::vector<NormPoint> gripper;  // exact per-frame gripper position
};

struct SceneData {
  Trajectory trajectory;
  TrackSet tracks;
  std::vector<GripperBox> boxes;
  GroundTruth truth;
};

// Exact scripted gripper and object positions at frame t.
NormPoint gripper_at(const SceneScript& script, int t);
NormPoint object_at(const SceneScript& script, int object_id, int t);

// Renders the scene: grid tracks classified by blob membership at the grid
// origin frame (gripper first, then objects by id), extra on-blob tracks,
// static and drifting distractors, per-frame gripper boxes, blob frames and
// full ground truth. Deterministic for a fixed script.
SceneData generate(const SceneScript& script);

// Ground-truth bundles from the script alone: the noiseless scene pushed
// through the same per-trajectory pass the pipeline runs, so at sigma = 0
// the two agree exactly. `seed` must match the pipeline's per-trajectory
// augmentation seed.
std::vector<AnnotationBundle> oracle_annotations(const SceneScript& script,
                                                 const PipelineConfig& config,
                                                 std::uint64_t seed);

// Randomized pick-and-place scene: travel legs at per-frame speeds well
// above the stationarity epsilon, dwells of 12..20 frames, one object per
// grasp. The trajectory length follows from the sampled geometry.
SceneScript make_pick_place_script(std::uint64_t seed, int num_grasps = 1,
                                   int num_distractors = 12,
                                   double noise_sigma = 0.0,
                                   double distractor_drift = 0.0);

TrajectoryRecord to_record(const std::string& id, SceneData scene);

void write_ground_truth(const std::filesystem::path& traj_dir,
                        const GroundTruth& truth);

}  // namespace peek
