#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "peek/annotator.hpp"
#include "peek/metrics.hpp"
#include "peek/types.hpp"

using namespace peek;

namespace {

// Exhaustive DTW reference: walk every monotone alignment, keep the minimum
// cost, break cost ties toward the longest alignment.
struct DtwOracle {
  const std::vector<NormPoint>& a;
  const std::vector<NormPoint>& b;
  double best_cost = -1.0;
  int best_len = 0;

  void walk(std::size_t i, std::size_t j, double cost, int len) {
    cost += distance(a[i], b[j]);
    len += 1;
    if (i == a.size() - 1 && j == b.size() - 1) {
      if (best_cost < 0.0 || cost < best_cost) {
        best_cost = cost;
        best_len = len;
      } else if (cost == best_cost && len > best_len) {
        best_len = len;
      }
      return;
    }
    if (i + 1 < a.size()) walk(i + 1, j, cost, len);
    if (j + 1 < b.size()) walk(i, j + 1, cost, len);
    if (i + 1 < a.size() && j + 1 < b.size()) walk(i + 1, j + 1, cost, len);
  }

  double run() {
    walk(0, 0, 0.0, 0);
    return best_cost / best_len;
  }
};

std::vector<NormPoint> random_path(std::mt19937_64& rng, int n) {
  auto uni = [&] { return (rng() >> 11) * 0x1.0p-53; };
  std::vector<NormPoint> pts;
  for (int i = 0; i < n; ++i) pts.emplace_back(uni(), uni());
  return pts;
}

AnnotationBundle bundle_at(int frame, std::vector<NormPoint> path,
                           std::vector<NormPoint> mask) {
  AnnotationBundle b;
  b.query_frame = frame;
  b.path = std::move(path);
  b.mask = std::move(mask);
  b.ans = serialize_annotation(b.path, b.mask);
  return b;
}

}  // namespace

TEST_CASE("dtw hand-checked values") {
  std::vector<NormPoint> origin{NormPoint(0.0, 0.0)};
  std::vector<NormPoint> offset{NormPoint(0.3, 0.4)};
  CHECK(dtw_distance(origin, offset) == doctest::Approx(0.5).epsilon(1e-12));

  // both of a's points align to b's single point: (0 + 0.5) / 2
  std::vector<NormPoint> two{NormPoint(0.0, 0.0), NormPoint(0.3, 0.4)};
  CHECK(dtw_distance(two, origin) == doctest::Approx(0.25).epsilon(1e-12));

  CHECK_THROWS_AS(dtw_distance({}, origin), DataError);
}

TEST_CASE("dtw is zero on identical paths and symmetric") {
  std::mt19937_64 rng(808);
  for (int iter = 0; iter < 50; ++iter) {
    auto a = random_path(rng, 1 + static_cast<int>(rng() % 8));
    auto b = random_path(rng, 1 + static_cast<int>(rng() % 8));
    CHECK(dtw_distance(a, a) == 0.0);
    CHECK(dtw_distance(a, b) == dtw_distance(b, a));
  }
}

TEST_CASE("dtw matches the exhaustive oracle on short paths") {
  std::mt19937_64 rng(515);
  for (int iter = 0; iter < 500; ++iter) {
    auto a = random_path(rng, 1 + static_cast<int>(rng() % 6));
    auto b = random_path(rng, 1 + static_cast<int>(rng() % 6));
    DtwOracle oracle{a, b};
    const double expected = oracle.run();
    const double got = dtw_distance(a, b);
    CHECK(std::abs(got - expected) <= 1e-9);
  }
}

TEST_CASE("endpoint distances read the first and last points") {
  std::vector<NormPoint> a{NormPoint(0.1, 0.1), NormPoint(0.5, 0.5),
                           NormPoint(0.9, 0.1)};
  std::vector<NormPoint> b{NormPoint(0.1, 0.2), NormPoint(0.9, 0.5)};
  auto [first, last] = endpoint_l2(a, b);
  CHECK(first == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(last == doctest::Approx(0.4).epsilon(1e-12));
  CHECK_THROWS_AS(endpoint_l2(a, {}), DataError);
}

TEST_CASE("endpoint error under gaussian noise matches the rayleigh mean") {
  std::mt19937_64 rng(17);
  auto uni = [&] { return (rng() >> 11) * 0x1.0p-53; };
  auto gauss = [&] {
    double u1 = 0.0;
    do {
      u1 = uni();
    } while (u1 <= 0.0);
    const double u2 = uni();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  };
  const double sigma = 0.02;
  double sum = 0.0;
  const int n = 2000;
  for (int i = 0; i < n; ++i) {
    NormPoint p(0.3 + 0.4 * uni(), 0.3 + 0.4 * uni());
    NormPoint q(p.x + sigma * gauss(), p.y + sigma * gauss());
    auto [first, last] = endpoint_l2({p}, {q});
    sum += first;
  }
  const double mean = sum / n;
  const double expected = sigma * std::sqrt(3.141592653589793 / 2.0);
  CHECK(mean > 0.8 * expected);
  CHECK(mean < 1.2 * expected);
}

TEST_CASE("raster occupancy of a centered square") {
  auto grid = rasterize_mask({NormPoint(0.5, 0.5)}, 0.08, 256);
  int ones = 0;
  for (auto v : grid) ones += v;
  CHECK(ones == 400);
  CHECK(grid[118 * 256 + 118] == 1);
  CHECK(grid[137 * 256 + 137] == 1);
  CHECK(grid[117 * 256 + 118] == 0);
  CHECK(grid[118 * 256 + 138] == 0);

  CHECK_THROWS_AS(rasterize_mask({}, 0.08, 0), ConfigError);
}

TEST_CASE("iou golden values") {
  std::vector<NormPoint> a{NormPoint(0.5, 0.5)};
  CHECK(mask_iou(a, a, 0.08, 256) == 1.0);

  std::vector<NormPoint> far{NormPoint(0.1, 0.1)};
  CHECK(mask_iou(a, far, 0.08, 256) == 0.0);

  // offset by half the square edge (10 of 256): overlap 200, union 600
  std::vector<NormPoint> half{NormPoint(0.5 + 10.0 / 256.0, 0.5)};
  CHECK(mask_iou(a, half, 0.08, 256) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  // both empty: vacuous agreement
  CHECK(mask_iou({}, {}, 0.08, 256) == 1.0);
  CHECK(mask_iou(a, {}, 0.08, 256) == 0.0);
}

TEST_CASE("adding a shared point splices both rasters identically") {
  std::mt19937_64 rng(33);
  auto uni = [&] { return (rng() >> 11) * 0x1.0p-53; };
  for (int iter = 0; iter < 30; ++iter) {
    std::vector<NormPoint> a, b;
    for (int i = 0; i < 3; ++i) a.emplace_back(uni(), uni());
    for (int i = 0; i < 3; ++i) b.emplace_back(uni(), uni());
    const NormPoint p(uni(), uni());

    const double before = mask_iou(a, b, 0.08, 128);
    auto ap = a;
    ap.push_back(p);
    auto bp = b;
    bp.push_back(p);

    const auto ra = rasterize_mask(a, 0.08, 128);
    const auto rp = rasterize_mask({p}, 0.08, 128);
    const auto rap = rasterize_mask(ap, 0.08, 128);
    const auto rb = rasterize_mask(b, 0.08, 128);
    const auto rbp = rasterize_mask(bp, 0.08, 128);
    for (std::size_t i = 0; i < ra.size(); ++i) {
      CHECK(rap[i] == (ra[i] | rp[i]));
      CHECK(rbp[i] == (rb[i] | rp[i]));
    }
    CHECK(mask_iou(ap, bp, 0.08, 128) >= before - 1e-12);
  }
}

TEST_CASE("corpus evaluation matches by id and query frame") {
  AnnotationCorpus pred, gt;
  std::vector<NormPoint> path1{NormPoint(0.1, 0.1), NormPoint(0.5, 0.5)};
  std::vector<NormPoint> path2{NormPoint(0.2, 0.8), NormPoint(0.9, 0.3)};
  std::vector<NormPoint> mask1{NormPoint(0.3, 0.3)};

  pred["t0"] = {bundle_at(0, path1, mask1), bundle_at(30, path2, mask1)};
  gt["t0"] = {bundle_at(30, path2, mask1), bundle_at(0, path1, mask1)};
  pred["t1"] = {bundle_at(5, path2, {})};
  gt["t1"] = {bundle_at(5, path2, {})};

  auto report = evaluate_corpus(pred, gt);
  CHECK(report.n_samples == 3);
  CHECK(report.dtw == 0.0);
  CHECK(report.first_l2 == 0.0);
  CHECK(report.last_l2 == 0.0);
  CHECK(report.iou == 1.0);
  CHECK(report.unmatched_pred == 0);
  CHECK(report.unmatched_gt == 0);
}

TEST_CASE("unmatched samples are counted on both sides") {
  AnnotationCorpus pred, gt;
  std::vector<NormPoint> path{NormPoint(0.1, 0.1), NormPoint(0.5, 0.5)};

  pred["t0"] = {bundle_at(0, path, {}), bundle_at(99, path, {})};
  gt["t0"] = {bundle_at(0, path, {}), bundle_at(50, path, {})};
  pred["only_pred"] = {bundle_at(0, path, {})};
  gt["only_gt"] = {bundle_at(0, path, {}), bundle_at(10, path, {})};

  auto report = evaluate_corpus(pred, gt);
  CHECK(report.n_samples == 1);
  CHECK(report.unmatched_pred == 2);  // frame 99 and the lone-id prediction
  CHECK(report.unmatched_gt == 3);    // frame 50 and both lone-id samples
}

TEST_CASE("repeated query frames pair in serialized order") {
  AnnotationCorpus pred, gt;
  std::vector<NormPoint> pa{NormPoint(0.1, 0.1), NormPoint(0.2, 0.2)};
  std::vector<NormPoint> pb{NormPoint(0.8, 0.8), NormPoint(0.9, 0.9)};

  pred["t0"] = {bundle_at(7, pb, {}), bundle_at(7, pa, {})};
  gt["t0"] = {bundle_at(7, pa, {}), bundle_at(7, pb, {})};
  auto report = evaluate_corpus(pred, gt);
  CHECK(report.n_samples == 2);
  CHECK(report.dtw == 0.0);
}

TEST_CASE("corpus evaluation failure modes") {
  AnnotationCorpus pred, gt;
  std::vector<NormPoint> path{NormPoint(0.1, 0.1)};
  pred["t0"] = {bundle_at(0, path, {})};
  gt["t0"] = {bundle_at(25, path, {})};
  CHECK_THROWS_AS(evaluate_corpus(pred, gt), DataError);

  AnnotationCorpus pred2, gt2;
  pred2["t0"] = {bundle_at(0, {}, {})};
  gt2["t0"] = {bundle_at(0, path, {})};
  CHECK_THROWS_AS(evaluate_corpus(pred2, gt2), DataError);
}
