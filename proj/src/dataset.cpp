#include "peek/dataset.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "peek/png_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace peek {

namespace {

std::string frame_name(int index) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%06d.png", index);
  return buf;
}

json parse_line(const std::string& line, const fs::path& file, int lineno) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded()) {
    throw DataError("malformed JSON in " + file.string() + " line " +
                    std::to_string(lineno + 1));
  }
  return j;
}

std::vector<std::string> read_lines(const fs::path& file) {
  std::ifstream in(file);
  if (!in) {
    throw DataError("missing file " + file.string());
  }
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

TrackSet load_tracks(const fs::path& file, const std::string& id,
                     int num_frames) {
  const auto lines = read_lines(file);
  if (static_cast<int>(lines.size()) != num_frames) {
    throw DataError("track/frame length mismatch in trajectory " + id + ": " +
                    file.string() + " has " + std::to_string(lines.size()) +
                    " rows for " + std::to_string(num_frames) + " frames");
  }
  TrackSet tracks;
  tracks.num_frames = num_frames;
  tracks.origin_frame = num_frames / 2;
  for (int t = 0; t < num_frames; ++t) {
    json row = parse_line(lines[t], file, t);
    if (!row.is_array()) {
      throw DataError("malformed track row in " + file.string() + " line " +
                      std::to_string(t + 1));
    }
    if (t == 0) {
      tracks.num_points = static_cast<int>(row.size());
      if (tracks.num_points == 0) {
        throw DataError("empty track row in " + file.string());
      }
      tracks.positions.resize(static_cast<std::size_t>(tracks.num_points) *
                              num_frames);
    } else if (static_cast<int>(row.size()) != tracks.num_points) {
      throw DataError("inconsistent point count in " + file.string() +
                      " line " + std::to_string(t + 1));
    }
    for (int i = 0; i < tracks.num_points; ++i) {
      const json& p = row[i];
      if (!p.is_array() || p.size() != 2) {
        throw DataError("malformed point in " + file.string() + " line " +
                        std::to_string(t + 1));
      }
      tracks.at(i, t) = NormPoint(p[0].get<double>(), p[1].get<double>());
    }
  }
  return tracks;
}

std::vector<GripperBox> load_gripper(const fs::path& file,
                                     const std::string& id, int num_frames) {
  const auto lines = read_lines(file);
  if (static_cast<int>(lines.size()) != num_frames) {
    throw DataError("gripper/frame length mismatch in trajectory " + id +
                    ": " + file.string() + " has " +
                    std::to_string(lines.size()) + " rows for " +
                    std::to_string(num_frames) + " frames");
  }
  std::vector<GripperBox> boxes(num_frames);
  for (int t = 0; t < num_frames; ++t) {
    json row = parse_line(lines[t], file, t);
    GripperBox& b = boxes[t];
    b.frame = t;
    try {
      b.present = row.at("present").get<bool>();
      b.confidence = row.at("conf").get<double>();
      if (b.present) {
        b.lo = NormPoint(row.at("x0").get<double>(), row.at("y0").get<double>());
        b.hi = NormPoint(row.at("x1").get<double>(), row.at("y1").get<double>());
        if (b.lo.x > b.hi.x || b.lo.y > b.hi.y) {
          throw DataError("unordered box corners");
        }
      }
    } catch (const json::exception& e) {
      throw DataError("malformed gripper row in " + file.string() + " line " +
                      std::to_string(t + 1) + ": " + e.what());
    }
  }
  return boxes;
}

}  // namespace

std::vector<std::string> list_trajectory_dirs(const fs::path& root) {
  if (!fs::exists(root)) {
    throw DataError("dataset root does not exist: " + root.string());
  }
  std::vector<std::string> ids;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_directory()) {
      ids.push_back(entry.path().filename().string());
    }
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

TrajectoryRecord load_trajectory_dir(const fs::path& dir) {
  TrajectoryRecord record;
  record.id = dir.filename().string();

  const fs::path frames_dir = dir / "frames";
  if (!fs::is_directory(frames_dir)) {
    throw DataError("trajectory " + record.id + " has no frames directory: " +
                    frames_dir.string());
  }
  int num_frames = 0;
  for (const auto& entry : fs::directory_iterator(frames_dir)) {
    if (entry.path().extension() == ".png") ++num_frames;
  }
  if (num_frames < 2) {
    throw DataError("trajectory " + record.id + " has " +
                    std::to_string(num_frames) + " frames, need at least 2");
  }
  record.trajectory.frames.reserve(num_frames);
  for (int t = 0; t < num_frames; ++t) {
    const fs::path p = frames_dir / frame_name(t);
    if (!fs::exists(p)) {
      throw DataError("trajectory " + record.id + " is missing frame " +
                      p.string());
    }
    record.trajectory.frames.push_back(read_png(p, t));
  }

  std::ifstream instr(dir / "instruction.txt");
  if (!instr) {
    throw DataError("trajectory " + record.id + " is missing " +
                    (dir / "instruction.txt").string());
  }
  std::getline(instr, record.trajectory.instruction);

  record.tracks = load_tracks(dir / "tracks.jsonl", record.id, num_frames);
  record.boxes = load_gripper(dir / "gripper.jsonl", record.id, num_frames);
  return record;
}

std::vector<TrajectoryRecord> load_dataset(const fs::path& root) {
  std::vector<TrajectoryRecord> records;
  for (const auto& id : list_trajectory_dirs(root)) {
    records.push_back(load_trajectory_dir(root / id));
  }
  return records;
}

void write_trajectory(const fs::path& root, const TrajectoryRecord& record) {
  const fs::path dir = root / record.id;
  fs::create_directories(dir / "frames");

  const int T = record.length();
  for (int t = 0; t < T; ++t) {
    write_png(dir / "frames" / frame_name(t), record.trajectory.frames[t]);
  }

  std::ofstream instr(dir / "instruction.txt");
  instr << record.trajectory.instruction << "\n";

  std::ofstream tracks(dir / "tracks.jsonl");
  for (int t = 0; t < T; ++t) {
    json row = json::array();
    for (int i = 0; i < record.tracks.num_points; ++i) {
      const NormPoint& p = record.tracks.at(i, t);
      row.push_back(json::array({p.x, p.y}));
    }
    tracks << row.dump() << "\n";
  }

  std::ofstream grip(dir / "gripper.jsonl");
  for (int t = 0; t < T; ++t) {
    const GripperBox& b = record.boxes[t];
    json row = {{"present", b.present}, {"x0", b.lo.x},   {"y0", b.lo.y},
                {"x1", b.hi.x},         {"y1", b.hi.y},   {"conf", b.confidence}};
    grip << row.dump() << "\n";
  }
}

void write_annotations(const fs::path& traj_dir,
                       const std::vector<AnnotationBundle>& bundles) {
  std::ofstream out(traj_dir / "annotations.jsonl");
  if (!out) {
    throw DataError("cannot write " + (traj_dir / "annotations.jsonl").string());
  }
  for (const auto& b : bundles) {
    json path = json::array();
    for (const auto& p : b.path) path.push_back(json::array({p.x, p.y}));
    json mask = json::array();
    for (const auto& p : b.mask) mask.push_back(json::array({p.x, p.y}));
    json row = {{"t", b.query_frame}, {"path", path}, {"mask", mask},
                {"ans", b.ans}};
    out << row.dump() << "\n";
  }
}

std::vector<AnnotationBundle> read_annotations(const fs::path& file) {
  const auto lines = read_lines(file);
  std::vector<AnnotationBundle> bundles;
  bundles.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    json row = parse_line(lines[i], file, static_cast<int>(i));
    AnnotationBundle b;
    try {
      b.query_frame = row.at("t").get<int>();
      for (const auto& p : row.at("path")) {
        b.path.emplace_back(p[0].get<double>(), p[1].get<double>());
      }
      for (const auto& p : row.at("mask")) {
        b.mask.emplace_back(p[0].get<double>(), p[1].get<double>());
      }
      b.ans = row.at("ans").get<std::string>();
    } catch (const json::exception& e) {
      throw DataError("malformed annotation in " + file.string() + " line " +
                      std::to_string(i + 1) + ": " + e.what());
    }
    bundles.push_back(std::move(b));
  }
  return bundles;
}

}  // namespace peek
