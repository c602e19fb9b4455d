#pragma once

// Stroke features and the three-layer similarity matrix.
//
// stroke_similarity blends a border-class term (weight 0.5: full match 1.0,
// one border matching 0.5, none 0.0) with a shape term (weight 0.5: the
// mean of the duration ratio, arc-length ratio, and the cosine of the net
// displacement vectors mapped from [-1, 1] onto [0, 1]). Scores live in
// [0, 1] and equal 1 on identical features.
//
// Layer 1 scores stroke i of the reference against stroke j of the test
// signature. Layer 2 scores reference i against the merge of test strokes
// j and j+1; layer 3 the merge of reference i and i+1 against test j. A
// merge exists only for strokes adjacent inside one pen-down run, so layer
// cells for non-mergeable pairs stay absent.

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sigmap/segmentation.hpp"

namespace sigmap {

struct StrokeFeatures {
  std::size_t duration = 1;  // samples covered, borders included
  double arc_length = 0;
  double net_dx = 0;
  double net_dy = 0;
  int border_class_start = 0;
  int border_class_end = 0;
  std::vector<int> interior_class_bag;  // sorted class ids
};

inline StrokeFeatures stroke_features(const Stroke& s, const Trajectory& traj) {
  if (s.end_index >= traj.size()) throw std::out_of_range("stroke outside trajectory");
  StrokeFeatures f;
  f.duration = s.sample_count();
  for (std::size_t i = s.start_index; i < s.end_index; ++i) {
    const double dx = static_cast<double>(traj.points[i + 1].x - traj.points[i].x);
    const double dy = static_cast<double>(traj.points[i + 1].y - traj.points[i].y);
    f.arc_length += std::sqrt(dx * dx + dy * dy);
  }
  f.net_dx = static_cast<double>(traj.points[s.end_index].x - traj.points[s.start_index].x);
  f.net_dy = static_cast<double>(traj.points[s.end_index].y - traj.points[s.start_index].y);
  f.border_class_start = s.border_start.class_id;
  f.border_class_end = s.border_end.class_id;
  for (const Extreme& e : s.interior_extremes) f.interior_class_bag.push_back(e.class_id);
  std::sort(f.interior_class_bag.begin(), f.interior_class_bag.end());
  return f;
}

inline double stroke_similarity(const StrokeFeatures& a, const StrokeFeatures& b) {
  const int matches = (a.border_class_start == b.border_class_start ? 1 : 0) +
                      (a.border_class_end == b.border_class_end ? 1 : 0);
  const double class_term = matches * 0.5;

  auto ratio = [](double p, double q) {
    if (p == 0 && q == 0) return 1.0;
    return std::min(p, q) / std::max(p, q);
  };
  const double dur = ratio(static_cast<double>(a.duration), static_cast<double>(b.duration));
  const double arc = ratio(a.arc_length, b.arc_length);

  const double na = std::hypot(a.net_dx, a.net_dy);
  const double nb = std::hypot(b.net_dx, b.net_dy);
  double direction;
  if (na == 0 && nb == 0)
    direction = 1.0;  // two closed strokes point nowhere equally
  else if (na == 0 || nb == 0)
    direction = 0.5;  // neutral against a closed stroke
  else {
    double c = (a.net_dx * b.net_dx + a.net_dy * b.net_dy) / (na * nb);
    c = std::clamp(c, -1.0, 1.0);
    direction = (c + 1.0) / 2.0;
  }

  return 0.5 * class_term + 0.5 * (dur + arc + direction) / 3.0;
}

// Merge of two strokes sharing a border sample; the shared border becomes
// an interior extreme of the result. Strokes in different pen-down runs
// can never share a sample, so adjacency alone decides.
inline std::optional<Stroke> merge_adjacent(const Stroke& a, const Stroke& b,
                                            const Trajectory& traj) {
  (void)traj;
  if (a.traj_ref != b.traj_ref || a.end_index != b.start_index) return std::nullopt;
  Stroke m;
  m.traj_ref = a.traj_ref;
  m.start_index = a.start_index;
  m.end_index = b.end_index;
  m.border_start = a.border_start;
  m.border_end = b.border_end;
  m.interior_extremes = a.interior_extremes;
  m.interior_extremes.push_back(a.border_end);
  m.interior_extremes.insert(m.interior_extremes.end(), b.interior_extremes.begin(),
                             b.interior_extremes.end());
  return m;
}

class ScoreGrid {
 public:
  ScoreGrid() = default;
  ScoreGrid(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), cells_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return cells_.empty(); }
  bool in_bounds(std::size_t i, std::size_t j) const { return i < rows_ && j < cols_; }

  std::optional<double>& at(std::size_t i, std::size_t j) { return cells_[i * cols_ + j]; }
  const std::optional<double>& at(std::size_t i, std::size_t j) const {
    return cells_[i * cols_ + j];
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::optional<double>> cells_;
};

struct LayeredMatrix {
  ScoreGrid layer1;  // R x T, fully populated
  ScoreGrid layer2;  // R x (T-1), reference stroke vs merged test pair
  ScoreGrid layer3;  // (R-1) x T, merged reference pair vs test stroke

  ScoreGrid& layer(int n) { return n == 1 ? layer1 : n == 2 ? layer2 : layer3; }
  const ScoreGrid& layer(int n) const { return n == 1 ? layer1 : n == 2 ? layer2 : layer3; }

  static LayeredMatrix single(ScoreGrid l1) {
    LayeredMatrix m;
    const std::size_t r = l1.rows(), c = l1.cols();
    m.layer1 = std::move(l1);
    m.layer2 = ScoreGrid(r, c > 0 ? c - 1 : 0);
    m.layer3 = ScoreGrid(r > 0 ? r - 1 : 0, c);
    return m;
  }
};

inline LayeredMatrix build_similarity_layers(const std::vector<Stroke>& ref_strokes,
                                             const std::vector<Stroke>& test_strokes,
                                             const Trajectory& ref_traj,
                                             const Trajectory& test_traj) {
  const std::size_t r = ref_strokes.size();
  const std::size_t t = test_strokes.size();
  if (r == 0 || t == 0) throw std::invalid_argument("both signatures need at least one stroke");

  std::vector<StrokeFeatures> ref_feats, test_feats;
  ref_feats.reserve(r);
  test_feats.reserve(t);
  for (const Stroke& s : ref_strokes) ref_feats.push_back(stroke_features(s, ref_traj));
  for (const Stroke& s : test_strokes) test_feats.push_back(stroke_features(s, test_traj));

  auto merged_feats = [](const std::vector<Stroke>& strokes, const Trajectory& traj,
                         std::size_t first) -> std::optional<StrokeFeatures> {
    std::optional<Stroke> m = merge_adjacent(strokes[first], strokes[first + 1], traj);
    if (!m) return std::nullopt;
    return stroke_features(*m, traj);
  };

  LayeredMatrix m;
  m.layer1 = ScoreGrid(r, t);
  m.layer2 = ScoreGrid(r, t - 1);
  m.layer3 = ScoreGrid(r > 0 ? r - 1 : 0, t);

  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < t; ++j)
      m.layer1.at(i, j) = stroke_similarity(ref_feats[i], test_feats[j]);

  for (std::size_t j = 0; j + 1 < t; ++j) {
    std::optional<StrokeFeatures> tm = merged_feats(test_strokes, test_traj, j);
    if (!tm) continue;
    for (std::size_t i = 0; i < r; ++i) m.layer2.at(i, j) = stroke_similarity(ref_feats[i], *tm);
  }

  for (std::size_t i = 0; i + 1 < r; ++i) {
    std::optional<StrokeFeatures> rm = merged_feats(ref_strokes, ref_traj, i);
    if (!rm) continue;
    for (std::size_t j = 0; j < t; ++j) m.layer3.at(i, j) = stroke_similarity(*rm, test_feats[j]);
  }

  return m;
}

}  // namespace sigmap
