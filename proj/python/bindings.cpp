#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "peek/annotator.hpp"
#include "peek/dataset.hpp"
#include "peek/metrics.hpp"
#include "peek/pipeline.hpp"
#include "peek/segmenter.hpp"
#include "peek/synth.hpp"
#include "peek/tracking.hpp"
#include "peek/types.hpp"

namespace py = pybind11;
using namespace peek;

namespace {

using PyPoints = std::vector<std::pair<double, double>>;

std::vector<NormPoint> to_points(const PyPoints& in) {
  std::vector<NormPoint> out;
  out.reserve(in.size());
  for (const auto& [x, y] : in) out.emplace_back(x, y);
  return out;
}

PyPoints from_points(const std::vector<NormPoint>& in) {
  PyPoints out;
  out.reserve(in.size());
  for (const NormPoint& p : in) out.emplace_back(p.x, p.y);
  return out;
}

PipelineConfig config_from_kwargs(double movement_threshold, int stop_window,
                                  double trim_frac, int resample_count,
                                  int h_label) {
  PipelineConfig config;
  config.movement_threshold = movement_threshold;
  config.stop_window = stop_window;
  config.trim_frac = trim_frac;
  config.resample_count = resample_count;
  config.h_label = h_label;
  config.validate();
  return config;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Native core of the trajectory annotation pipeline";
  m.attr("__version__") = kToolVersion;

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DataError>(m, "DataError", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "AnnotationParseError",
                                     PyExc_ValueError);

  m.def(
      "init_grid",
      [](int side) { return from_points(init_grid(GridSpec{side})); },
      py::arg("side") = 15,
      "Normalized cell-center seed points of a side x side tracker grid.");

  m.def(
      "rdp_simplify",
      [](const PyPoints& points, double eps) {
        return from_points(rdp_simplify(to_points(points), eps));
      },
      py::arg("points"), py::arg("eps"),
      "Polyline simplification; every removed point stays within eps.");

  m.def(
      "simplify_mask",
      [](const PyPoints& points, double eps) {
        return from_points(simplify_mask(to_points(points), eps));
      },
      py::arg("points"), py::arg("eps"),
      "Greedy eps-packing of mask points, deterministic order.");

  m.def(
      "serialize_annotation",
      [](const PyPoints& path, const PyPoints& mask) {
        return serialize_annotation(to_points(path), to_points(mask));
      },
      py::arg("path"), py::arg("mask"),
      "TRAJECTORY/MASK text form, coordinates at two decimals.");

  m.def(
      "parse_annotation",
      [](const std::string& text) {
        const ParsedAnnotation parsed = parse_annotation(text);
        py::dict out;
        out["path"] = from_points(parsed.path);
        out["mask"] = from_points(parsed.mask);
        return out;
      },
      py::arg("text"), "Inverse of serialize_annotation.");

  m.def(
      "two_means",
      [](const std::vector<int>& values) {
        const TwoMeans result = two_means(values);
        py::dict out;
        out["threshold"] = result.threshold;
        out["sse"] = result.sse;
        out["degenerate"] = result.degenerate;
        return out;
      },
      py::arg("values"), "Optimal 1-D 2-means of a count series.");

  m.def(
      "split_counts",
      [](const std::vector<int>& counts, int window, int num_frames) {
        StopSeries series{counts, window, num_frames};
        std::vector<std::pair<int, int>> spans;
        for (const SubtrajectorySpan& s : kmeans2_split(series)) {
          spans.emplace_back(s.start, s.end);
        }
        return spans;
      },
      py::arg("counts"), py::arg("window"), py::arg("num_frames"),
      "Subtrajectory spans [start, end) from a stop-count series.");

  m.def(
      "dtw_distance",
      [](const PyPoints& a, const PyPoints& b) {
        return dtw_distance(to_points(a), to_points(b));
      },
      py::arg("a"), py::arg("b"),
      "Alignment-length-normalized dynamic time warping distance.");

  m.def(
      "endpoint_l2",
      [](const PyPoints& a, const PyPoints& b) {
        return endpoint_l2(to_points(a), to_points(b));
      },
      py::arg("a"), py::arg("b"),
      "(first-point distance, last-point distance).");

  m.def(
      "mask_iou",
      [](const PyPoints& a, const PyPoints& b, double edge_frac, int raster) {
        return mask_iou(to_points(a), to_points(b), edge_frac, raster);
      },
      py::arg("a"), py::arg("b"), py::arg("edge_frac") = 0.08,
      py::arg("raster") = 256, "Rasterized IoU of two mask point sets.");

  m.def(
      "synth_dataset",
      [](const std::filesystem::path& root, int scenes, int grasps,
         int distractors, double noise, double drift, std::uint64_t seed,
         int width, int height) {
        py::gil_scoped_release release;
        std::vector<std::string> ids;
        std::filesystem::create_directories(root);
        for (int i = 0; i < scenes; ++i) {
          char name[32];
          std::snprintf(name, sizeof(name), "scene_%04d", i);
          SceneScript script = make_pick_place_script(
              trajectory_seed(name, seed), grasps, distractors, noise, drift);
          script.width = width;
          script.height = height;
          SceneData scene = generate(script);
          const GroundTruth truth = scene.truth;
          write_trajectory(root, to_record(name, std::move(scene)));
          write_ground_truth(root / name, truth);
          ids.emplace_back(name);
        }
        return ids;
      },
      py::arg("root"), py::arg("scenes"), py::arg("grasps") = 1,
      py::arg("distractors") = 12, py::arg("noise") = 0.0,
      py::arg("drift") = 0.0, py::arg("seed") = 0, py::arg("width") = 128,
      py::arg("height") = 128,
      "Writes synthetic pick-and-place trajectories under root.");

  m.def(
      "annotate_dataset",
      [](const std::filesystem::path& root, std::uint64_t seed, int jobs,
         double movement_threshold, int stop_window, double trim_frac,
         int resample_count, int h_label) {
        const PipelineConfig config =
            config_from_kwargs(movement_threshold, stop_window, trim_frac,
                               resample_count, h_label);
        RunManifest manifest;
        {
          py::gil_scoped_release release;
          manifest = annotate_dataset(root, config, seed, jobs);
        }
        py::dict statuses;
        for (const TrajectoryStatus& s : manifest.trajectories) {
          py::dict entry;
          entry["status"] = s.status;
          entry["reason"] = s.reason;
          statuses[py::str(s.id)] = entry;
        }
        return statuses;
      },
      py::arg("root"), py::arg("seed") = 0, py::arg("jobs") = 1,
      py::arg("movement_threshold") = 0.05, py::arg("stop_window") = 5,
      py::arg("trim_frac") = 0.2, py::arg("resample_count") = 5,
      py::arg("h_label") = 30,
      "Annotates every trajectory under root; returns per-id statuses.");

  m.def(
      "evaluate",
      [](const std::filesystem::path& pred_root,
         const std::filesystem::path& gt_root, double edge_frac, int raster) {
        auto load = [](const std::filesystem::path& root) {
          AnnotationCorpus corpus;
          for (const std::string& id : list_trajectory_dirs(root)) {
            const std::filesystem::path file = root / id / "annotations.jsonl";
            if (std::filesystem::exists(file)) {
              corpus[id] = read_annotations(file);
            }
          }
          return corpus;
        };
        MetricsReport report;
        {
          py::gil_scoped_release release;
          report = evaluate_corpus(load(pred_root), load(gt_root), edge_frac,
                                   raster);
        }
        py::dict out;
        out["dtw"] = report.dtw;
        out["first_l2"] = report.first_l2;
        out["last_l2"] = report.last_l2;
        out["iou"] = report.iou;
        out["n_samples"] = report.n_samples;
        out["unmatched_pred"] = report.unmatched_pred;
        out["unmatched_gt"] = report.unmatched_gt;
        return out;
      },
      py::arg("pred_root"), py::arg("gt_root"), py::arg("edge_frac") = 0.08,
      py::arg("raster") = 256,
      "Scores annotations under pred_root against gt_root.");
}
