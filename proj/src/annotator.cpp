#include "peek/annotator.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <random>
#include <set>
#include <utility>

namespace peek {

namespace {

double point_segment_distance(const NormPoint& p, const NormPoint& a,
                              const NormPoint& b) {
  const double abx = b.x - a.x;
  const double aby = b.y - a.y;
  const double len_sq = abx * abx + aby * aby;
  if (len_sq == 0.0) return distance(p, a);
  double t = ((p.x - a.x) * abx + (p.y - a.y) * aby) / len_sq;
  t = std::clamp(t, 0.0, 1.0);
  const double dx = p.x - (a.x + t * abx);
  const double dy = p.y - (a.y + t * aby);
  return std::hypot(dx, dy);
}

void rdp_recurse(const std::vector<NormPoint>& pts, int lo, int hi, double eps,
                 std::vector<bool>& keep) {
  double max_d = -1.0;
  int max_i = -1;
  for (int i = lo + 1; i < hi; ++i) {
    const double d = point_segment_distance(pts[i], pts[lo], pts[hi]);
    if (d > max_d) {
      max_d = d;
      max_i = i;
    }
  }
  if (max_i < 0 || max_d <= eps) return;
  keep[max_i] = true;
  rdp_recurse(pts, lo, max_i, eps, keep);
  rdp_recurse(pts, max_i, hi, eps, keep);
}

void append_points(std::string& out, const std::vector<NormPoint>& pts) {
  out += '[';
  char buf[32];
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i > 0) out += ", ";
    std::snprintf(buf, sizeof(buf), "(%.2f, %.2f)", quantize2(pts[i].x),
                  quantize2(pts[i].y));
    out += buf;
  }
  out += ']';
}

class Scanner {
 public:
  explicit Scanner(const std::string& text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c) {
      throw ParseError(std::string("expected '") + c + "'", pos_);
    }
    ++pos_;
  }

  void expect_word(const char* word) {
    skip_ws();
    const std::size_t len = std::strlen(word);
    if (text_.compare(pos_, len, word) != 0) {
      throw ParseError(std::string("expected '") + word + "'", pos_);
    }
    pos_ += len;
  }

  bool peek_is(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  double number() {
    skip_ws();
    const char* start = text_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(start, &end);
    if (end == start) throw ParseError("expected a number", pos_);
    pos_ += static_cast<std::size_t>(end - start);
    return v;
  }

  std::vector<NormPoint> point_list() {
    expect('[');
    std::vector<NormPoint> pts;
    if (peek_is(']')) {
      ++pos_;
      return pts;
    }
    for (;;) {
      expect('(');
      const double x = number();
      expect(',');
      const double y = number();
      expect(')');
      pts.emplace_back(x, y);
      skip_ws();
      if (pos_ >= text_.size()) throw ParseError("expected ',' or ']'", pos_);
      if (text_[pos_] == ',') {
        ++pos_;
        continue;
      }
      if (text_[pos_] == ']') {
        ++pos_;
        return pts;
      }
      throw ParseError("expected ',' or ']'", pos_);
    }
  }

  void expect_end() {
    skip_ws();
    if (pos_ < text_.size()) {
      throw ParseError("unexpected trailing text", pos_);
    }
  }

 private:
  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

RawAnnotation build_annotation(const SubtrajectorySpan& span,
                               const GripperPath& grip,
                               const TaskPointSet& task, int query_frame) {
  if (query_frame < span.start || query_frame >= span.end) {
    throw DataError("query frame " + std::to_string(query_frame) +
                    " outside span [" + std::to_string(span.start) + ", " +
                    std::to_string(span.end) + ")");
  }
  const int last = span.end - 1;
  if (last >= grip.length() || last >= task.num_frames) {
    throw DataError("span end " + std::to_string(span.end) +
                    " extends past the trajectory");
  }

  RawAnnotation ann;
  ann.query_frame = query_frame;
  for (int t = query_frame; t <= last; ++t) ann.path.push_back(grip.points[t]);

  std::set<std::pair<long, long>> seen;
  auto add = [&](const NormPoint& p) {
    const auto key = std::make_pair(std::lround(p.x * 100.0),
                                    std::lround(p.y * 100.0));
    if (seen.insert(key).second) ann.mask.push_back(p);
  };
  for (const NormPoint& p : task.at_frame(query_frame)) add(p);
  for (const NormPoint& p : task.at_frame(last)) add(p);
  return ann;
}

std::vector<NormPoint> rdp_simplify(const std::vector<NormPoint>& points,
                                    double eps) {
  if (points.size() <= 2) return points;
  std::vector<bool> keep(points.size(), false);
  keep.front() = keep.back() = true;
  rdp_recurse(points, 0, static_cast<int>(points.size()) - 1, eps, keep);
  std::vector<NormPoint> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (keep[i]) out.push_back(points[i]);
  }
  return out;
}

std::vector<NormPoint> simplify_mask(const std::vector<NormPoint>& mask,
                                     double eps) {
  std::vector<NormPoint> sorted = mask;
  std::sort(sorted.begin(), sorted.end(),
            [](const NormPoint& a, const NormPoint& b) {
              return a.y != b.y ? a.y < b.y : a.x < b.x;
            });
  // Slack keeps points exactly eps apart (up to float error) in the packing.
  const double eps_sq = eps * eps * (1.0 - 1e-9);
  std::vector<NormPoint> kept;
  for (const NormPoint& p : sorted) {
    bool close = false;
    for (const NormPoint& k : kept) {
      if (squared_distance(p, k) < eps_sq) {
        close = true;
        break;
      }
    }
    if (!close) kept.push_back(p);
  }
  return kept;
}

std::string serialize_annotation(const std::vector<NormPoint>& path,
                                 const std::vector<NormPoint>& mask) {
  std::string out = "TRAJECTORY: ";
  append_points(out, path);
  out += " MASK: ";
  append_points(out, mask);
  return out;
}

ParsedAnnotation parse_annotation(const std::string& text) {
  Scanner scan(text);
  ParsedAnnotation parsed;
  scan.expect_word("TRAJECTORY");
  scan.expect(':');
  parsed.path = scan.point_list();
  scan.expect_word("MASK");
  scan.expect(':');
  parsed.mask = scan.point_list();
  scan.expect_end();
  return parsed;
}

std::vector<SubtrajectorySpan> augment_spans(
    const std::vector<SubtrajectorySpan>& spans, int num_frames,
    double trim_frac, int resample_count, std::uint64_t seed) {
  if (trim_frac < 0.0 || trim_frac >= 1.0) {
    throw ConfigError("trim fraction must be in [0,1), got " +
                      std::to_string(trim_frac));
  }
  const int cut = static_cast<int>(std::floor(trim_frac * num_frames));
  std::mt19937_64 rng(seed);
  auto draw = [&rng](int bound) {  // uniform in [0, bound]
    return static_cast<int>(rng() % static_cast<std::uint64_t>(bound + 1));
  };

  std::vector<SubtrajectorySpan> out;
  for (const SubtrajectorySpan& span : spans) {
    const int start = std::max(span.start, cut);
    const int end = span.end;
    if (end - start < 2) continue;  // fully inside the trimmed prefix
    out.push_back({start, end, span.source_section});
    const int jitter = static_cast<int>(std::floor(trim_frac * (end - start)));
    for (int r = 0; r < resample_count; ++r) {
      int a = start + draw(jitter);
      int b = end - draw(jitter);
      if (b > end) b = end;
      if (b - a < 2) a = std::max(start, b - 2);
      if (b - a < 2) b = a + 2;
      out.push_back({a, b, span.source_section});
    }
  }
  return out;
}

}  // namespace peek
