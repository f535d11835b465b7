#include "peek/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>

#include "json.hpp"
#include "peek/pipeline.hpp"
#include "peek/renderer.hpp"

using nlohmann::json;

namespace peek {

namespace {

constexpr double kTau = 6.283185307179586;

void validate(const SceneScript& s) {
  if (s.num_frames < 2) {
    throw ConfigError("scene needs at least 2 frames, got " +
                      std::to_string(s.num_frames));
  }
  if (s.waypoints.empty()) throw ConfigError("scene has no gripper waypoints");
  for (std::size_t i = 0; i < s.waypoints.size(); ++i) {
    const int f = s.waypoints[i].first;
    if (f < 0 || f >= s.num_frames) {
      throw ConfigError("waypoint frame " + std::to_string(f) +
                        " outside [0, " + std::to_string(s.num_frames) + ")");
    }
    if (i > 0 && f <= s.waypoints[i - 1].first) {
      throw ConfigError("waypoint frames must be strictly increasing");
    }
  }
  std::vector<std::pair<int, int>> occupied;
  std::vector<int> grasped;
  for (const GraspEvent& g : s.grasps) {
    if (g.object_id < 0 || g.object_id >= static_cast<int>(s.objects.size())) {
      throw ConfigError("grasp references missing object " +
                        std::to_string(g.object_id));
    }
    if (g.start > g.end || g.end > g.release || g.release >= s.num_frames ||
        g.start < 0) {
      throw ConfigError("grasp interval out of order");
    }
    if (std::count(grasped.begin(), grasped.end(), g.object_id) > 0) {
      throw ConfigError("object " + std::to_string(g.object_id) +
                        " grasped twice; re-grasping is not modeled");
    }
    grasped.push_back(g.object_id);
    occupied.emplace_back(g.start, g.release);
  }
  std::sort(occupied.begin(), occupied.end());
  for (std::size_t i = 1; i < occupied.size(); ++i) {
    if (occupied[i].first <= occupied[i - 1].second) {
      throw ConfigError("overlapping grasp intervals");
    }
  }
  if (s.grid_side < 1) throw ConfigError("grid side must be >= 1");
  if (s.noise_sigma < 0) throw ConfigError("noise sigma must be >= 0");
}

struct TrackDef {
  enum Kind { kStatic, kGripper, kObject, kDrifter } kind = kStatic;
  int object_id = -1;
  NormPoint base;               // static position or drift start
  double off_x = 0, off_y = 0;  // rigid offset from the parent blob
  double drift_x = 0, drift_y = 0;
};

NormPoint track_pos(const SceneScript& s, const TrackDef& d, int t) {
  switch (d.kind) {
    case TrackDef::kGripper: {
      const NormPoint g = gripper_at(s, t);
      return NormPoint(g.x + d.off_x, g.y + d.off_y);
    }
    case TrackDef::kObject: {
      const NormPoint o = object_at(s, d.object_id, t);
      return NormPoint(o.x + d.off_x, o.y + d.off_y);
    }
    case TrackDef::kDrifter: {
      const double u = static_cast<double>(t) / (s.num_frames - 1);
      return NormPoint(d.base.x + u * d.drift_x, d.base.y + u * d.drift_y);
    }
    case TrackDef::kStatic:
    default:
      return d.base;
  }
}

// Fixed two-ring pattern of offsets inside a blob of the given radius.
void ring_offsets(int count, double radius, std::vector<TrackDef>& defs,
                  TrackDef::Kind kind, int object_id) {
  for (int j = 0; j < count; ++j) {
    const double angle = kTau * j / std::max(1, count);
    const double rr = radius * (j % 2 == 0 ? 0.45 : 0.8);
    TrackDef d;
    d.kind = kind;
    d.object_id = object_id;
    d.off_x = rr * std::cos(angle);
    d.off_y = rr * std::sin(angle);
    defs.push_back(d);
  }
}

std::vector<TrackDef> layout_tracks(const SceneScript& s, int origin_frame,
                                    std::mt19937_64& rng) {
  std::vector<TrackDef> defs;
  const NormPoint grip_origin = gripper_at(s, origin_frame);

  for (int j = 0; j < s.grid_side; ++j) {
    for (int i = 0; i < s.grid_side; ++i) {
      const NormPoint cell((i + 0.5) / s.grid_side, (j + 0.5) / s.grid_side);
      TrackDef d;
      if (distance(cell, grip_origin) <= s.gripper_radius) {
        d.kind = TrackDef::kGripper;
        d.off_x = cell.x - grip_origin.x;
        d.off_y = cell.y - grip_origin.y;
      } else {
        d.kind = TrackDef::kStatic;
        d.base = cell;
        for (int k = 0; k < static_cast<int>(s.objects.size()); ++k) {
          const NormPoint o = object_at(s, k, origin_frame);
          if (distance(cell, o) <= s.objects[k].radius) {
            d.kind = TrackDef::kObject;
            d.object_id = k;
            d.off_x = cell.x - o.x;
            d.off_y = cell.y - o.y;
            break;
          }
        }
      }
      defs.push_back(d);
    }
  }

  ring_offsets(s.on_gripper_points, s.gripper_radius, defs, TrackDef::kGripper,
               -1);
  for (int k = 0; k < static_cast<int>(s.objects.size()); ++k) {
    ring_offsets(s.on_object_points, s.objects[k].radius, defs,
                 TrackDef::kObject, k);
  }

  auto uniform = [&rng](double lo, double hi) {
    const double u = (rng() >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
  };
  for (int i = 0; i < s.distractor_count; ++i) {
    TrackDef d;
    if (s.distractor_drift > 0.0) {
      // Endpoints symmetric around a center keep the displacement exact.
      const NormPoint center(uniform(0.15, 0.85), uniform(0.15, 0.85));
      const double angle = uniform(0.0, kTau);
      d.kind = TrackDef::kDrifter;
      d.drift_x = s.distractor_drift * std::cos(angle);
      d.drift_y = s.distractor_drift * std::sin(angle);
      d.base = NormPoint(center.x - d.drift_x / 2, center.y - d.drift_y / 2);
    } else {
      d.kind = TrackDef::kStatic;
      d.base = NormPoint(uniform(0.05, 0.95), uniform(0.05, 0.95));
    }
    defs.push_back(d);
  }
  return defs;
}

void fill_disc(Frame& f, const NormPoint& center, double radius_frac,
               std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  const int pr = static_cast<int>(
      std::lround(radius_frac * std::min(f.width, f.height)));
  const int cx = to_pixel(center.x, f.width);
  const int cy = to_pixel(center.y, f.height);
  for (int dy = -pr; dy <= pr; ++dy) {
    for (int dx = -pr; dx <= pr; ++dx) {
      if (dx * dx + dy * dy > pr * pr) continue;
      const int x = cx + dx, y = cy + dy;
      if (x < 0 || y < 0 || x >= f.width || y >= f.height) continue;
      std::uint8_t* px = f.at(x, y);
      px[0] = r;
      px[1] = g;
      px[2] = b;
    }
  }
}

constexpr std::uint8_t kPalette[][3] = {
    {60, 120, 216}, {220, 170, 50}, {90, 180, 90}, {170, 90, 200}};

}  // namespace

NormPoint gripper_at(const SceneScript& script, int t) {
  const auto& wp = script.waypoints;
  if (t <= wp.front().first) return wp.front().second;
  if (t >= wp.back().first) return wp.back().second;
  std::size_t hi = 1;
  while (wp[hi].first < t) ++hi;
  if (wp[hi].first == t) return wp[hi].second;  // exact at waypoint frames
  const auto& [f0, p0] = wp[hi - 1];
  const auto& [f1, p1] = wp[hi];
  const double u = static_cast<double>(t - f0) / (f1 - f0);
  return NormPoint(p0.x + u * (p1.x - p0.x), p0.y + u * (p1.y - p0.y));
}

NormPoint object_at(const SceneScript& script, int object_id, int t) {
  const ObjectSpec& obj = script.objects.at(object_id);
  for (const GraspEvent& g : script.grasps) {
    if (g.object_id != object_id) continue;
    if (t <= g.end) return obj.rest;
    if (t >= g.release) return obj.target;
    return gripper_at(script, t);  // carried
  }
  return obj.rest;
}

SceneData generate(const SceneScript& script) {
  validate(script);
  const int T = script.num_frames;
  const int origin = T / 2;
  std::mt19937_64 rng(script.seed ^ 0x517cc1b727220a95ULL);
  const std::vector<TrackDef> defs = layout_tracks(script, origin, rng);

  SceneData scene;
  scene.tracks.num_points = static_cast<int>(defs.size());
  scene.tracks.num_frames = T;
  scene.tracks.origin_frame = origin;
  scene.tracks.positions.resize(defs.size() * static_cast<std::size_t>(T));

  // Box-Muller keeps the jitter stream independent of library internals.
  auto gauss = [&rng]() {
    const double u1 = 1.0 - (rng() >> 11) * 0x1.0p-53;
    const double u2 = (rng() >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTau * u2);
  };
  for (std::size_t i = 0; i < defs.size(); ++i) {
    for (int t = 0; t < T; ++t) {
      NormPoint p = track_pos(script, defs[i], t);
      if (script.noise_sigma > 0.0) {
        p = NormPoint(p.x + script.noise_sigma * gauss(),
                      p.y + script.noise_sigma * gauss());
      }
      scene.tracks.at(static_cast<int>(i), t) = p;
    }
  }

  scene.boxes.reserve(T);
  for (int t = 0; t < T; ++t) {
    const NormPoint g = gripper_at(script, t);
    GripperBox box;
    box.frame = t;
    box.lo = NormPoint(g.x - script.gripper_radius, g.y - script.gripper_radius);
    box.hi = NormPoint(g.x + script.gripper_radius, g.y + script.gripper_radius);
    box.present = true;
    box.confidence = 1.0;
    scene.boxes.push_back(box);
  }

  scene.trajectory.instruction = script.instruction;
  if (script.render_frames) {
    scene.trajectory.frames.reserve(T);
    for (int t = 0; t < T; ++t) {
      Frame f = Frame::filled(t, script.width, script.height, 96, 96, 104);
      for (int k = 0; k < static_cast<int>(script.objects.size()); ++k) {
        const auto& c = kPalette[k % 4];
        fill_disc(f, object_at(script, k, t), script.objects[k].radius, c[0],
                  c[1], c[2]);
      }
      fill_disc(f, gripper_at(script, t), script.gripper_radius, 225, 60, 50);
      scene.trajectory.frames.push_back(std::move(f));
    }
  }

  for (std::size_t i = 0; i < defs.size(); ++i) {
    const TrackDef& d = defs[i];
    const bool moves =
        d.kind == TrackDef::kGripper ||
        (d.kind == TrackDef::kObject &&
         std::any_of(script.grasps.begin(), script.grasps.end(),
                     [&](const GraspEvent& g) {
                       return g.object_id == d.object_id;
                     }));
    if (moves) scene.truth.mover_track_ids.push_back(static_cast<int>(i));
  }
  for (const GraspEvent& g : script.grasps) {
    scene.truth.split_frames.push_back((g.start + g.end) / 2);
    scene.truth.dwell_intervals.emplace_back(g.start, g.end);
  }
  scene.truth.gripper.reserve(T);
  for (int t = 0; t < T; ++t) scene.truth.gripper.push_back(gripper_at(script, t));
  return scene;
}

std::vector<AnnotationBundle> oracle_annotations(const SceneScript& script,
                                                 const PipelineConfig& config,
                                                 std::uint64_t seed) {
  SceneScript clean = script;
  clean.noise_sigma = 0.0;
  clean.render_frames = false;
  const SceneData scene = generate(clean);
  return annotate_core(scene.tracks, scene.boxes, config, seed);
}

SceneScript make_pick_place_script(std::uint64_t seed, int num_grasps,
                                   int num_distractors, double noise_sigma,
                                   double distractor_drift) {
  if (num_grasps < 0 || num_grasps > 4) {
    throw ConfigError("factory supports 0 to 4 grasps");
  }
  std::mt19937_64 rng(seed);
  auto uniform = [&rng](double lo, double hi) {
    const double u = (rng() >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
  };

  // Consecutive path nodes at least 0.16 apart so every travel leg clears
  // the stationarity epsilon at cruise speed.
  std::vector<NormPoint> nodes;
  const int needed = 2 * num_grasps + 2;  // start, rest/target pairs, retreat
  while (static_cast<int>(nodes.size()) < needed) {
    const NormPoint candidate(uniform(0.18, 0.82), uniform(0.18, 0.82));
    bool ok = true;
    for (const NormPoint& n : nodes) {
      if (distance(candidate, n) < 0.16) {
        ok = false;
        break;
      }
    }
    if (ok) nodes.push_back(candidate);
  }

  SceneScript script;
  script.seed = seed;
  script.distractor_count = num_distractors;
  script.distractor_drift = distractor_drift;
  script.noise_sigma = noise_sigma;

  const NormPoint start = nodes[0];
  const NormPoint retreat = nodes[needed - 1];
  script.waypoints.emplace_back(0, start);
  NormPoint cur = start;
  int t = 0;
  for (int k = 0; k < num_grasps; ++k) {
    const NormPoint rest = nodes[1 + 2 * k];
    const NormPoint target = nodes[2 + 2 * k];
    const double v_in = uniform(0.018, 0.03);
    const double v_carry = uniform(0.018, 0.03);
    const int dwell = 12 + static_cast<int>(rng() % 9);

    const int arrive = t + std::max(8, static_cast<int>(std::ceil(
                                           distance(cur, rest) / v_in)));
    const int dwell_end = arrive + dwell;
    const int release =
        dwell_end + std::max(8, static_cast<int>(std::ceil(
                                    distance(rest, target) / v_carry)));
    script.waypoints.emplace_back(arrive, rest);
    script.waypoints.emplace_back(dwell_end, rest);
    script.waypoints.emplace_back(release, target);
    script.grasps.push_back({arrive, dwell_end, release, k});
    script.objects.push_back({rest, target, 0.045});
    cur = target;
    t = release;
  }
  const double v_out = uniform(0.018, 0.03);
  const int out_end = t + std::max(10, static_cast<int>(std::ceil(
                                           distance(cur, retreat) / v_out)));
  script.waypoints.emplace_back(out_end, retreat);
  script.num_frames = out_end + 1;
  return script;
}

TrajectoryRecord to_record(const std::string& id, SceneData scene) {
  TrajectoryRecord record;
  record.id = id;
  record.trajectory = std::move(scene.trajectory);
  record.tracks = std::move(scene.tracks);
  record.boxes = std::move(scene.boxes);
  return record;
}

void write_ground_truth(const std::filesystem::path& traj_dir,
                        const GroundTruth& truth) {
  json doc;
  doc["mover_track_ids"] = truth.mover_track_ids;
  doc["split_frames"] = truth.split_frames;
  json dwells = json::array();
  for (const auto& [a, b] : truth.dwell_intervals)
    dwells.push_back(json::array({a, b}));
  doc["dwell_intervals"] = dwells;
  json grip = json::array();
  for (const NormPoint& p : truth.gripper)
    grip.push_back(json::array({p.x, p.y}));
  doc["gripper"] = grip;
  std::ofstream out(traj_dir / "ground_truth.json");
  if (!out) {
    throw DataError("cannot write " + (traj_dir / "ground_truth.json").string());
  }
  out << doc.dump(2) << "\n";
}

}  // namespace peek
