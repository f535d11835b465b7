#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "peek/dataset.hpp"
#include "peek/types.hpp"

namespace peek {

std::uint64_t fnv1a64(std::string_view s);

// Per-trajectory augmentation seed: stable under dataset growth and across
// worker orderings.
inline std::uint64_t trajectory_seed(std::string_view id,
                                     std::uint64_t global_seed) {
  return fnv1a64(id) ^ global_seed;
}

// Full per-trajectory pass: gripper path, relevance filter, segmentation,
// span augmentation, then one simplified serialized bundle per query frame
// (span starts plus every h_label frames within the span). Bundles come back
// sorted by query frame. Throws SkipTrajectory for unusable trajectories.
std::vector<AnnotationBundle> annotate_core(const TrackSet& tracks,
                                            const std::vector<GripperBox>& boxes,
                                            const PipelineConfig& config,
                                            std::uint64_t seed);

std::vector<AnnotationBundle> annotate_trajectory(const TrajectoryRecord& record,
                                                  const PipelineConfig& config,
                                                  std::uint64_t seed);

struct TrajectoryStatus {
  std::string id;
  std::string status;  // "ok", "skipped" or "failed"
  std::string reason;  // empty for ok
};

struct RunManifest {
  PipelineConfig config;
  std::uint64_t seed = 0;
  std::string tool_version = kToolVersion;
  std::vector<TrajectoryStatus> trajectories;
  int jobs = 1;
  double wall_ms = 0.0;
  std::string timestamp;

  bool any_failed() const;
};

// Annotates every trajectory under root with a pool of `jobs` workers and
// writes annotations.jsonl per trajectory plus run_manifest.json at the
// root. One bad trajectory never aborts the batch; its status says why.
// Outputs are byte-identical for identical inputs, config and seed,
// regardless of jobs.
RunManifest annotate_dataset(const std::filesystem::path& root,
                             const PipelineConfig& config,
                             std::uint64_t global_seed, int jobs);

// Manifest JSON with volatile data (wall time, timestamp, jobs) confined to
// a "timing" object so determinism checks can drop it.
void write_manifest(const std::filesystem::path& file, const RunManifest& m);

}  // namespace peek
