#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "peek/annotator.hpp"
#include "peek/dataset.hpp"
#include "peek/metrics.hpp"
#include "peek/pipeline.hpp"
#include "peek/png_io.hpp"
#include "peek/relevance.hpp"
#include "peek/renderer.hpp"
#include "peek/scheduler.hpp"
#include "peek/segmenter.hpp"
#include "peek/synth.hpp"
#include "peek/tracking.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Flat key=value config file mirroring the pipeline field names; '#' starts
// a comment. Flags override file values.
void load_config_file(const fs::path& file, peek::PipelineConfig& config) {
  std::ifstream in(file);
  if (!in) throw peek::ConfigError("cannot read config file " + file.string());
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r") != std::string::npos) {
        throw peek::ConfigError("config line " + std::to_string(lineno) +
                                " is not key=value");
      }
      continue;
    }
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }

  auto take_double = [&](const char* key, double& field) {
    auto it = kv.find(key);
    if (it == kv.end()) return;
    field = std::stod(it->second);
    kv.erase(it);
  };
  auto take_int = [&](const char* key, int& field) {
    auto it = kv.find(key);
    if (it == kv.end()) return;
    field = std::stoi(it->second);
    kv.erase(it);
  };
  take_double("movement_threshold", config.movement_threshold);
  take_int("stop_window", config.stop_window);
  take_double("still_eps", config.still_eps);
  take_int("grid_side", config.grid_side);
  take_double("rdp_eps_path", config.rdp_eps_path);
  take_double("rdp_eps_mask", config.rdp_eps_mask);
  take_double("mask_edge_frac", config.mask_edge_frac);
  take_int("h_label", config.h_label);
  take_int("h_rollout", config.h_rollout);
  take_double("trim_frac", config.trim_frac);
  take_int("resample_count", config.resample_count);
  take_int("raster_size", config.raster_size);
  if (!kv.empty()) {
    throw peek::ConfigError("unknown config key '" + kv.begin()->first + "'");
  }
}

int default_jobs() {
  if (const char* env = std::getenv("PEEK_JOBS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

std::string frame_name(int index, const char* suffix) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%06d%s.png", index, suffix);
  return buf;
}

peek::AnnotationCorpus load_corpus(const fs::path& path) {
  peek::AnnotationCorpus corpus;
  if (fs::is_directory(path)) {
    for (const std::string& id : peek::list_trajectory_dirs(path)) {
      const fs::path file = path / id / "annotations.jsonl";
      if (fs::exists(file)) corpus[id] = peek::read_annotations(file);
    }
    if (corpus.empty()) {
      throw peek::DataError("no annotations.jsonl under " + path.string());
    }
  } else {
    corpus[""] = peek::read_annotations(path);
  }
  return corpus;
}

int run_synth(const fs::path& out, int scenes, int grasps, int distractors,
              double noise, double drift, std::uint64_t seed, int grid_side) {
  fs::create_directories(out);
  for (int i = 0; i < scenes; ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "scene_%04d", i);
    peek::SceneScript script = peek::make_pick_place_script(
        peek::trajectory_seed(name, seed), grasps, distractors, noise, drift);
    script.grid_side = grid_side;
    peek::SceneData scene = peek::generate(script);
    const peek::GroundTruth truth = scene.truth;
    const int tracks = scene.tracks.num_points;
    peek::write_trajectory(out, peek::to_record(name, std::move(scene)));
    peek::write_ground_truth(out / name, truth);
    std::fprintf(stderr, "synth %s: %d frames, %d tracks\n", name,
                 script.num_frames, tracks);
  }
  std::fprintf(stderr, "wrote %d scenes to %s\n", scenes, out.c_str());
  return 0;
}

int run_annotate(const fs::path& root, const peek::PipelineConfig& config,
                 std::uint64_t seed, int jobs, bool keep_going) {
  const peek::RunManifest manifest =
      peek::annotate_dataset(root, config, seed, jobs);
  int ok = 0, skipped = 0, failed = 0;
  for (const peek::TrajectoryStatus& s : manifest.trajectories) {
    if (s.status == "ok") {
      ++ok;
    } else if (s.status == "skipped") {
      ++skipped;
      std::fprintf(stderr, "skipped %s: %s\n", s.id.c_str(), s.reason.c_str());
    } else {
      ++failed;
      std::fprintf(stderr, "failed %s: %s\n", s.id.c_str(), s.reason.c_str());
    }
  }
  std::fprintf(stderr, "annotate: %d ok, %d skipped, %d failed (%.0f ms)\n",
               ok, skipped, failed, manifest.wall_ms);
  return (failed > 0 && !keep_going) ? 1 : 0;
}

int run_segment(const fs::path& root, const peek::PipelineConfig& config,
                const std::string& out_file) {
  json out = json::array();
  for (const std::string& id : peek::list_trajectory_dirs(root)) {
    const peek::TrajectoryRecord record = peek::load_trajectory_dir(root / id);
    json entry;
    entry["traj"] = id;
    entry["window"] = config.stop_window;
    try {
      const peek::TaskPointSet task =
          peek::filter_moving(record.tracks, config.movement_threshold);
      std::vector<peek::SubtrajectorySpan> spans;
      json counts = json::array();
      if (record.length() <= config.stop_window) {
        spans.push_back({0, record.length(), std::nullopt});
      } else {
        const peek::StopSeries series =
            peek::stop_counts(task, config.stop_window, config.still_eps);
        counts = series.counts;
        spans = peek::kmeans2_split(series);
      }
      entry["counts"] = counts;
      json jspans = json::array();
      for (const peek::SubtrajectorySpan& s : spans) {
        json js = {{"start", s.start}, {"end", s.end}};
        js["section"] = s.source_section
                            ? json::array({s.source_section->first,
                                           s.source_section->second})
                            : json();
        jspans.push_back(js);
      }
      entry["spans"] = jspans;
    } catch (const peek::SkipTrajectory& e) {
      entry["skipped"] = e.what();
    }
    out.push_back(entry);
  }
  if (out_file.empty()) {
    std::cout << out.dump(2) << "\n";
  } else {
    std::ofstream f(out_file);
    if (!f) throw peek::DataError("cannot write " + out_file);
    f << out.dump(2) << "\n";
  }
  return 0;
}

int run_render(const fs::path& root, const peek::RenderSpec& spec,
               bool closed_loop, int h_rollout) {
  int rendered = 0;
  for (const std::string& id : peek::list_trajectory_dirs(root)) {
    const fs::path ann_file = root / id / "annotations.jsonl";
    if (!fs::exists(ann_file)) continue;
    const std::vector<peek::AnnotationBundle> bundles =
        peek::read_annotations(ann_file);
    if (bundles.empty()) continue;
    const peek::TrajectoryRecord record = peek::load_trajectory_dir(root / id);

    if (closed_loop) {
      // Replay: the provider serves the latest annotation at or before the
      // current frame, re-queried every h_rollout frames.
      peek::ScheduleState state;
      state.period = h_rollout;
      state.spec = spec;
      const fs::path out_dir = root / id / "annotated_closedloop";
      fs::create_directories(out_dir);
      auto provider = [&bundles](const peek::Frame& f) {
        const peek::AnnotationBundle* best = nullptr;
        for (const peek::AnnotationBundle& b : bundles) {
          if (b.query_frame <= f.index) best = &b;
        }
        if (!best) throw peek::DataError("no annotation at or before frame " +
                                         std::to_string(f.index));
        return *best;
      };
      for (int t = bundles.front().query_frame; t < record.length(); ++t) {
        const peek::Frame annotated =
            peek::schedule_step(state, record.trajectory.frames[t], provider);
        peek::write_png(out_dir / frame_name(t, "_annotated"), annotated);
        ++rendered;
      }
    } else {
      const fs::path out_dir = root / id / "annotated";
      fs::create_directories(out_dir);
      for (const peek::AnnotationBundle& b : bundles) {
        if (b.query_frame < 0 || b.query_frame >= record.length()) {
          throw peek::DataError("annotation at frame " +
                                std::to_string(b.query_frame) +
                                " outside trajectory " + id);
        }
        const peek::Frame annotated = peek::compose(
            record.trajectory.frames[b.query_frame], b, spec);
        peek::write_png(out_dir / frame_name(b.query_frame, "_annotated"),
                        annotated);
        ++rendered;
      }
    }
  }
  std::fprintf(stderr, "rendered %d frames\n", rendered);
  return 0;
}

int run_eval(const fs::path& pred, const fs::path& gt,
             const std::string& report_file, double edge_frac, int raster) {
  const peek::MetricsReport report = peek::evaluate_corpus(
      load_corpus(pred), load_corpus(gt), edge_frac, raster);
  json doc = {{"dtw", report.dtw},
              {"first_l2", report.first_l2},
              {"last_l2", report.last_l2},
              {"iou", report.iou},
              {"n_samples", report.n_samples},
              {"unmatched_pred", report.unmatched_pred},
              {"unmatched_gt", report.unmatched_gt}};
  if (!report_file.empty()) {
    std::ofstream f(report_file);
    if (!f) throw peek::DataError("cannot write " + report_file);
    f << doc.dump(2) << "\n";
  }
  std::cout << doc.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robot trajectory annotation pipeline"};
  app.require_subcommand(1);

  peek::PipelineConfig config;
  std::string config_file;
  std::uint64_t seed = 0;
  int jobs = default_jobs();
  bool keep_going = false;

  // synth
  auto* synth = app.add_subcommand("synth", "Generate a synthetic dataset");
  std::string synth_out;
  int scenes = 10, grasps = 1, distractors = 12, grid_side = 15;
  double noise = 0.0, drift = 0.0;
  synth->add_option("--out", synth_out, "Output dataset root")->required();
  synth->add_option("--scenes", scenes, "Number of trajectories");
  synth->add_option("--grasps", grasps, "Manipulations per trajectory");
  synth->add_option("--distractors", distractors, "Distractor tracks");
  synth->add_option("--noise", noise, "Track jitter sigma");
  synth->add_option("--drift", drift, "Total distractor drift");
  synth->add_option("--grid-side", grid_side, "Tracker grid dimension");
  synth->add_option("--seed", seed, "Scene seed");

  // annotate
  auto* annotate = app.add_subcommand("annotate", "Annotate a dataset");
  std::string ann_root;
  annotate->add_option("--root", ann_root, "Dataset root")->required();
  annotate->add_option("--config", config_file, "key=value config file");
  annotate->add_option("--h-label", config.h_label, "Label query period");
  annotate->add_option("--rdp-path", config.rdp_eps_path, "Path RDP epsilon");
  annotate->add_option("--rdp-mask", config.rdp_eps_mask, "Mask thinning epsilon");
  annotate->add_option("--trim", config.trim_frac, "Trim fraction");
  annotate->add_option("--resamples", config.resample_count,
                       "Jittered copies per span");
  annotate->add_option("--seed", seed, "Augmentation seed");
  annotate->add_option("--threshold", config.movement_threshold,
                       "Movement threshold");
  annotate->add_option("--window", config.stop_window, "Stop-count window");
  annotate->add_option("--jobs", jobs, "Worker threads (or PEEK_JOBS)");
  annotate->add_flag("--keep-going", keep_going,
                     "Exit 0 even if trajectories failed");

  // segment
  auto* segment = app.add_subcommand("segment", "Dump stop counts and spans");
  std::string seg_root, seg_out;
  segment->add_option("--root", seg_root, "Dataset root")->required();
  segment->add_option("--out", seg_out, "Output JSON file (default stdout)");
  segment->add_option("--config", config_file, "key=value config file");
  segment->add_option("--threshold", config.movement_threshold,
                      "Movement threshold");
  segment->add_option("--window", config.stop_window, "Stop-count window");

  // render
  auto* render = app.add_subcommand("render", "Draw annotations onto frames");
  std::string render_root;
  peek::RenderSpec spec;
  bool closed_loop = false;
  render->add_option("--root", render_root, "Dataset root")->required();
  render->add_option("--line-width", spec.line_width, "Path line width");
  render->add_option("--mask-edge", spec.mask_edge_frac, "Mask square edge");
  render->add_option("--h-rollout", config.h_rollout, "Closed-loop period");
  render->add_flag("--closed-loop", closed_loop,
                   "Stream frames through the scheduler");

  // eval
  auto* eval = app.add_subcommand("eval", "Score predictions against truth");
  std::string pred_path, gt_path, report_file;
  eval->add_option("--pred", pred_path, "Predicted annotations (file or root)")
      ->required();
  eval->add_option("--gt", gt_path, "Reference annotations (file or root)")
      ->required();
  eval->add_option("--report", report_file, "Report JSON file");
  eval->add_option("--mask-edge", config.mask_edge_frac, "Mask square edge");
  eval->add_option("--raster", config.raster_size, "IoU raster size");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage errors exit 2, --help exits 0
  }

  try {
    if (!config_file.empty()) {
      // File values go in first, then a re-parse lets explicit flags win.
      peek::PipelineConfig from_file;
      load_config_file(config_file, from_file);
      config = from_file;
      try {
        app.clear();
        app.parse(argc, argv);
      } catch (const CLI::ParseError&) {
        return 2;
      }
    }
    config.validate();

    if (synth->parsed()) {
      return run_synth(synth_out, scenes, grasps, distractors, noise, drift,
                       seed, grid_side);
    }
    if (annotate->parsed()) {
      return run_annotate(ann_root, config, seed, jobs, keep_going);
    }
    if (segment->parsed()) {
      return run_segment(seg_root, config, seg_out);
    }
    if (render->parsed()) {
      return run_render(render_root, spec, closed_loop, config.h_rollout);
    }
    if (eval->parsed()) {
      return run_eval(pred_path, gt_path, report_file, config.mask_edge_frac,
                      config.raster_size);
    }
  } catch (const peek::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
