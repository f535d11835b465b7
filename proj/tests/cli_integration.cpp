// End-to-end checks against the installed CLI binary (path in argv[1]).

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "test_util.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int g_checks = 0;
fs::path g_log;

#define CHECK_OR_DIE(cond)                                                  \
  do {                                                                      \
    if (!(cond)) {                                                          \
      std::fprintf(stderr, "FAILED at line %d: %s\n", __LINE__, #cond);     \
      dump_log();                                                           \
      return 1;                                                             \
    }                                                                       \
    ++g_checks;                                                             \
  } while (0)

void dump_log() {
  std::ifstream in(g_log);
  std::string line;
  while (std::getline(in, line)) std::fprintf(stderr, "  | %s\n", line.c_str());
}

// Runs a shell command, returns its exit status (-1 if it did not exit).
int run(const std::string& cmd) {
  const std::string full = cmd + " >'" + g_log.string() + "' 2>&1";
  const int rc = std::system(full.c_str());
  if (rc == -1 || !WIFEXITED(rc)) return -1;
  return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

int count_files_with_suffix(const fs::path& dir, const std::string& suffix) {
  if (!fs::is_directory(dir)) return 0;
  int n = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.size() >= suffix.size() &&
        name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0) {
      ++n;
    }
  }
  return n;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <peek-binary>\n", argv[0]);
    return 2;
  }
  const std::string bin = std::string("'") + argv[1] + "'";
  TempDir tmp;
  g_log = tmp.path / "cli.log";
  const std::string root = "'" + (tmp.path / "data").string() + "'";
  const fs::path data = tmp.path / "data";

  // --help exits 0, missing/unknown subcommands and flags exit 2.
  CHECK_OR_DIE(run(bin + " --help") == 0);
  CHECK_OR_DIE(run(bin) == 2);
  CHECK_OR_DIE(run(bin + " frobnicate") == 2);
  CHECK_OR_DIE(run(bin + " annotate --root /nowhere --no-such-flag") == 2);

  // synth writes complete trajectory directories.
  CHECK_OR_DIE(run(bin + " synth --out " + root +
                   " --scenes 4 --grasps 2 --seed 11") == 0);
  std::vector<std::string> ids;
  for (int i = 0; i < 4; ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "scene_%04d", i);
    ids.push_back(name);
    const fs::path dir = data / name;
    CHECK_OR_DIE(fs::exists(dir / "frames" / "000000.png"));
    CHECK_OR_DIE(fs::exists(dir / "instruction.txt"));
    CHECK_OR_DIE(fs::exists(dir / "tracks.jsonl"));
    CHECK_OR_DIE(fs::exists(dir / "gripper.jsonl"));
    CHECK_OR_DIE(fs::exists(dir / "ground_truth.json"));
  }

  // annotate succeeds and records every trajectory as ok.
  const std::string annotate_cmd =
      bin + " annotate --root " + root + " --seed 3 --jobs 4";
  CHECK_OR_DIE(run(annotate_cmd) == 0);
  std::vector<std::string> snapshot;
  for (const std::string& id : ids) {
    snapshot.push_back(slurp(data / id / "annotations.jsonl"));
    CHECK_OR_DIE(!snapshot.back().empty());
  }
  {
    const json manifest = json::parse(slurp(data / "run_manifest.json"));
    CHECK_OR_DIE(manifest.at("seed") == 3);
    CHECK_OR_DIE(manifest.at("trajectories").size() == 4);
    for (const json& t : manifest.at("trajectories")) {
      CHECK_OR_DIE(t.at("status") == "ok");
    }
  }

  // A second identical run reproduces the annotation bytes.
  CHECK_OR_DIE(run(annotate_cmd) == 0);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    CHECK_OR_DIE(slurp(data / ids[i] / "annotations.jsonl") == snapshot[i]);
  }

  // Out-of-range config values are usage errors.
  CHECK_OR_DIE(run(bin + " annotate --root " + root + " --threshold 1.5") == 2);

  // Config file: values load, flags still override, unknown keys are errors.
  {
    const fs::path cfg = tmp.path / "pipeline.cfg";
    std::ofstream(cfg) << "h_label = 40  # query period\ntrim_frac = 0.25\n";
    CHECK_OR_DIE(run(bin + " annotate --root " + root + " --config '" +
                     cfg.string() + "' --seed 3 --trim 0.2") == 0);
    const fs::path bad = tmp.path / "bad.cfg";
    std::ofstream(bad) << "no_such_knob = 7\n";
    CHECK_OR_DIE(run(bin + " annotate --root " + root + " --config '" +
                     bad.string() + "'") == 2);
    // Restore the canonical annotations for the checks below.
    CHECK_OR_DIE(run(annotate_cmd) == 0);
  }

  // segment dumps parseable spans for every trajectory.
  {
    const fs::path seg = tmp.path / "segments.json";
    CHECK_OR_DIE(run(bin + " segment --root " + root + " --out '" +
                     seg.string() + "'") == 0);
    const json doc = json::parse(slurp(seg));
    CHECK_OR_DIE(doc.is_array() && doc.size() == 4);
    for (const json& entry : doc) {
      CHECK_OR_DIE(entry.contains("traj"));
      CHECK_OR_DIE(entry.at("spans").size() >= 1);
      CHECK_OR_DIE(entry.at("spans").at(0).at("start") == 0);
    }
  }

  // render writes one overlay per annotation, closed-loop one per frame.
  CHECK_OR_DIE(run(bin + " render --root " + root) == 0);
  for (const std::string& id : ids) {
    CHECK_OR_DIE(count_files_with_suffix(data / id / "annotated",
                                         "_annotated.png") > 0);
  }
  CHECK_OR_DIE(run(bin + " render --root " + root +
                   " --closed-loop --h-rollout 40") == 0);
  CHECK_OR_DIE(count_files_with_suffix(data / ids[0] / "annotated_closedloop",
                                       "_annotated.png") > 0);

  // eval of a corpus against itself is a perfect score.
  {
    const fs::path rep = tmp.path / "report.json";
    CHECK_OR_DIE(run(bin + " eval --pred " + root + " --gt " + root +
                     " --report '" + rep.string() + "'") == 0);
    const json doc = json::parse(slurp(rep));
    CHECK_OR_DIE(doc.at("dtw") == 0.0);
    CHECK_OR_DIE(doc.at("iou") == 1.0);
    CHECK_OR_DIE(doc.at("n_samples").get<int>() > 0);
    CHECK_OR_DIE(doc.at("unmatched_pred") == 0);
    CHECK_OR_DIE(doc.at("unmatched_gt") == 0);
  }

  // A corrupt trajectory fails the run unless --keep-going is given, and the
  // manifest names it either way.
  {
    std::ofstream(data / ids[3] / "tracks.jsonl", std::ios::trunc)
        << "[[0.5, 0.5]]\n";
    CHECK_OR_DIE(run(annotate_cmd) == 1);
    CHECK_OR_DIE(run(annotate_cmd + " --keep-going") == 0);
    const json manifest = json::parse(slurp(data / "run_manifest.json"));
    int failed = 0;
    for (const json& t : manifest.at("trajectories")) {
      if (t.at("status") == "failed") {
        ++failed;
        CHECK_OR_DIE(t.at("id") == ids[3]);
        CHECK_OR_DIE(!t.at("reason").get<std::string>().empty());
      } else {
        CHECK_OR_DIE(t.at("status") == "ok");
      }
    }
    CHECK_OR_DIE(failed == 1);
  }

  std::printf("cli integration: %d checks passed\n", g_checks);
  return 0;
}
