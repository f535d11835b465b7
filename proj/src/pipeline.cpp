#include "peek/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <ctime>
#include <fstream>
#include <optional>
#include <thread>

#include "json.hpp"
#include "peek/annotator.hpp"
#include "peek/relevance.hpp"
#include "peek/segmenter.hpp"
#include "peek/tracking.hpp"

using nlohmann::json;

namespace peek {

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::vector<AnnotationBundle> annotate_core(const TrackSet& tracks,
                                            const std::vector<GripperBox>& boxes,
                                            const PipelineConfig& config,
                                            std::uint64_t seed) {
  config.validate();
  const int T = tracks.num_frames;
  if (T < 2) throw DataError("trajectory has fewer than 2 frames");

  const GripperPath grip = gripper_path_from_boxes(boxes, T);
  const TaskPointSet task = filter_moving(tracks, config.movement_threshold);

  std::vector<SubtrajectorySpan> spans;
  if (T <= config.stop_window) {
    spans.push_back({0, T, std::nullopt});
  } else {
    spans = kmeans2_split(
        stop_counts(task, config.stop_window, config.still_eps));
  }
  spans = augment_spans(spans, T, config.trim_frac, config.resample_count,
                        seed);
  if (spans.empty()) {
    throw SkipTrajectory("no span survived trimming");
  }

  std::vector<AnnotationBundle> bundles;
  for (const SubtrajectorySpan& span : spans) {
    for (int t = span.start; t < span.end; t += config.h_label) {
      const RawAnnotation raw = build_annotation(span, grip, task, t);
      AnnotationBundle bundle;
      bundle.query_frame = t;
      for (const NormPoint& p : rdp_simplify(raw.path, config.rdp_eps_path))
        bundle.path.push_back(quantize2(p));
      for (const NormPoint& p : simplify_mask(raw.mask, config.rdp_eps_mask))
        bundle.mask.push_back(quantize2(p));
      bundle.ans = serialize_annotation(bundle.path, bundle.mask);
      bundles.push_back(std::move(bundle));
    }
  }
  std::stable_sort(bundles.begin(), bundles.end(),
                   [](const AnnotationBundle& a, const AnnotationBundle& b) {
                     return a.query_frame < b.query_frame;
                   });
  return bundles;
}

std::vector<AnnotationBundle> annotate_trajectory(const TrajectoryRecord& record,
                                                  const PipelineConfig& config,
                                                  std::uint64_t seed) {
  return annotate_core(record.tracks, record.boxes, config, seed);
}

bool RunManifest::any_failed() const {
  return std::any_of(trajectories.begin(), trajectories.end(),
                     [](const TrajectoryStatus& s) {
                       return s.status == "failed";
                     });
}

namespace {

std::string utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json config_json(const PipelineConfig& c) {
  return json{{"movement_threshold", c.movement_threshold},
              {"stop_window", c.stop_window},
              {"still_eps", c.still_eps},
              {"grid_side", c.grid_side},
              {"rdp_eps_path", c.rdp_eps_path},
              {"rdp_eps_mask", c.rdp_eps_mask},
              {"mask_edge_frac", c.mask_edge_frac},
              {"h_label", c.h_label},
              {"h_rollout", c.h_rollout},
              {"trim_frac", c.trim_frac},
              {"resample_count", c.resample_count},
              {"raster_size", c.raster_size}};
}

}  // namespace

RunManifest annotate_dataset(const std::filesystem::path& root,
                             const PipelineConfig& config,
                             std::uint64_t global_seed, int jobs) {
  config.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<std::string> ids = list_trajectory_dirs(root);

  RunManifest manifest;
  manifest.config = config;
  manifest.seed = global_seed;
  manifest.jobs = std::clamp(jobs, 1, 256);
  manifest.timestamp = utc_now();
  manifest.trajectories.resize(ids.size());

  std::vector<std::optional<std::vector<AnnotationBundle>>> results(ids.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= ids.size()) return;
      TrajectoryStatus& status = manifest.trajectories[i];
      status.id = ids[i];
      try {
        const TrajectoryRecord record = load_trajectory_dir(root / ids[i]);
        results[i] = annotate_trajectory(record, config,
                                         trajectory_seed(ids[i], global_seed));
        status.status = "ok";
      } catch (const SkipTrajectory& e) {
        status.status = "skipped";
        status.reason = e.what();
      } catch (const std::exception& e) {
        status.status = "failed";
        status.reason = e.what();
      }
    }
  };

  const std::size_t pool = std::min(static_cast<std::size_t>(manifest.jobs),
                                    std::max<std::size_t>(ids.size(), 1));
  std::vector<std::thread> threads;
  threads.reserve(pool);
  for (std::size_t i = 0; i < pool; ++i) threads.emplace_back(worker);
  for (std::thread& t : threads) t.join();

  // Single-writer output keeps bytes independent of worker interleaving.
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (results[i]) write_annotations(root / ids[i], *results[i]);
  }

  manifest.wall_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
  write_manifest(root / "run_manifest.json", manifest);
  return manifest;
}

void write_manifest(const std::filesystem::path& file, const RunManifest& m) {
  json doc;
  doc["tool_version"] = m.tool_version;
  doc["seed"] = m.seed;
  doc["config"] = config_json(m.config);
  json trajs = json::array();
  for (const TrajectoryStatus& s : m.trajectories) {
    json row = {{"id", s.id}, {"status", s.status}};
    if (!s.reason.empty()) row["reason"] = s.reason;
    trajs.push_back(row);
  }
  doc["trajectories"] = trajs;
  doc["timing"] = {{"timestamp", m.timestamp},
                   {"wall_ms", m.wall_ms},
                   {"jobs", m.jobs}};
  std::ofstream out(file);
  if (!out) throw DataError("cannot write " + file.string());
  out << doc.dump(2) << "\n";
}

}  // namespace peek
