#pragma once

// Similarity-maximization path search over a LayeredMatrix, with optional
// lost-box recovery.
//
// The path starts on the layer-1 cell (0, 0) and greedily hops to the
// highest-scoring reachable cell. From position (i, j) the reachable cells
// are (i, j+1), (i+1, j) and (i+1, j+1) in every layer; ties prefer the
// lower layer, then the smaller i, then the smaller j. Accepting a layer-2
// cell consumes two test strokes, so the position advances an extra column;
// a layer-3 cell consumes two reference strokes and advances an extra row.
// The search ends when no candidate cell remains.
//
// Lost-box recovery guards each hop. Advancing to (k, l) forfeits two
// bands of cells which the monotone path can never visit afterwards:
//   region a: columns j..l, every row from i down,
//   region b: rows i..k, every column from j right.
// V is the candidate's score minus the best score in those bands (over all
// three layers, skipping the candidate itself, cells already on the path,
// absent cells, and cells zeroed by earlier rejections). A negative V
// means the hop would abandon a better match: the candidate's cell is
// zeroed in a working copy, disqualified for the rest of the search, and
// the position stays put for re-selection.

#include <optional>
#include <set>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "sigmap/similarity.hpp"

namespace sigmap {

struct PathNode {
  int layer = 1;
  std::size_t i = 0;
  std::size_t j = 0;
  double score = 0;
  bool operator==(const PathNode&) const = default;
};

struct DtwPath {
  std::vector<PathNode> nodes;
  double total = 0;
};

struct GridPos {
  int layer = 1;
  std::size_t i = 0;
  std::size_t j = 0;
  auto operator<=>(const GridPos&) const = default;
};

using CellSet = std::set<GridPos>;

inline GridPos cell_of(const PathNode& n) { return GridPos{n.layer, n.i, n.j}; }

// Position the search occupies after accepting a node: layer-2 nodes have
// consumed test column j+1 as well, layer-3 nodes reference row i+1.
inline std::pair<std::size_t, std::size_t> consumed_position(const PathNode& n) {
  return {n.i + (n.layer == 3 ? 1 : 0), n.j + (n.layer == 2 ? 1 : 0)};
}

// Highest-scoring reachable cell, or nothing when the path must end.
// `excluded` holds both disqualified cells and cells already on the path.
inline std::optional<PathNode> simmax_next(const PathNode& current, const LayeredMatrix& layers,
                                           const CellSet& excluded) {
  const auto [pi, pj] = consumed_position(current);
  std::optional<PathNode> best;
  const std::pair<std::size_t, std::size_t> steps[3] = {{0, 1}, {1, 0}, {1, 1}};
  for (int layer = 1; layer <= 3; ++layer) {
    const ScoreGrid& grid = layers.layer(layer);
    for (const auto& [di, dj] : steps) {
      const std::size_t ci = pi + di, cj = pj + dj;
      if (!grid.in_bounds(ci, cj)) continue;
      const std::optional<double>& cell = grid.at(ci, cj);
      if (!cell || excluded.count(GridPos{layer, ci, cj})) continue;
      if (!best || *cell > best->score) best = PathNode{layer, ci, cj, *cell};
    }
  }
  return best;
}

// V of a prospective hop: candidate score minus the best forfeited score.
inline double lost_box_value(const PathNode& current, const PathNode& candidate,
                             const LayeredMatrix& layers, const CellSet& excluded) {
  const auto [i, j] = consumed_position(current);
  const std::size_t k = candidate.i, l = candidate.j;
  double lost = 0;  // empty regions forfeit nothing

  for (int layer = 1; layer <= 3; ++layer) {
    const ScoreGrid& grid = layers.layer(layer);
    if (grid.empty()) continue;
    auto scan = [&](std::size_t row_lo, std::size_t row_hi, std::size_t col_lo,
                    std::size_t col_hi) {
      row_hi = std::min(row_hi, grid.rows() - 1);
      col_hi = std::min(col_hi, grid.cols() - 1);
      for (std::size_t y = row_lo; y <= row_hi; ++y) {
        for (std::size_t x = col_lo; x <= col_hi; ++x) {
          if (layer == candidate.layer && y == k && x == l) continue;
          const std::optional<double>& cell = grid.at(y, x);
          if (!cell || excluded.count(GridPos{layer, y, x})) continue;
          lost = std::max(lost, *cell);
        }
      }
    };
    if (i < grid.rows() && j < grid.cols()) {
      scan(i, grid.rows() - 1, j, l);  // region a: swept columns, all rows below
      scan(i, k, j, grid.cols() - 1);  // region b: swept rows, all columns right
    }
  }
  return candidate.score - lost;
}

struct LbrStep {
  bool accepted = false;
};

// V >= 0 accepts the hop; V < 0 zeroes and disqualifies the candidate's
// cell so the stalled position re-selects without it.
inline LbrStep apply_lbr(const PathNode& current, const PathNode& candidate, double v,
                         LayeredMatrix& working, CellSet& disqualified) {
  (void)current;
  if (v >= 0) return LbrStep{true};
  working.layer(candidate.layer).at(candidate.i, candidate.j) = 0.0;
  disqualified.insert(cell_of(candidate));
  return LbrStep{false};
}

struct RejectionRecord {
  std::size_t decision = 0;  // nodes accepted before this rejection
  PathNode candidate;
  double v = 0;
};

struct MapResult {
  DtwPath path;
  std::vector<RejectionRecord> rejections;
  std::size_t selections = 0;
};

inline MapResult map_strokes(const LayeredMatrix& layers, bool lbr = true) {
  if (layers.layer1.empty() || !layers.layer1.at(0, 0))
    throw std::invalid_argument("layer 1 must be populated");

  LayeredMatrix working = layers;
  CellSet excluded;
  MapResult out;

  PathNode current{1, 0, 0, *layers.layer1.at(0, 0)};
  out.path.nodes.push_back(current);
  excluded.insert(cell_of(current));

  while (true) {
    std::optional<PathNode> candidate = simmax_next(current, working, excluded);
    if (!candidate) break;
    ++out.selections;
    if (lbr) {
      const double v = lost_box_value(current, *candidate, working, excluded);
      if (!apply_lbr(current, *candidate, v, working, excluded).accepted) {
        out.rejections.push_back(RejectionRecord{out.path.nodes.size(), *candidate, v});
        continue;
      }
    }
    out.path.nodes.push_back(*candidate);
    excluded.insert(cell_of(*candidate));
    current = *candidate;
  }

  for (const PathNode& n : out.path.nodes) out.path.total += n.score;
  return out;
}

// Exhaustive single-layer oracle. Every maximal path from (0, 0) that
// steps to some cell of column j+1 (row >= i) or of row i+1 (column >= j)
// is enumerated; the best total wins and ties go to the lexicographically
// smallest node sequence. Desk-scale only.
inline DtwPath brute_force_path(const ScoreGrid& layer1) {
  const std::size_t rows = layer1.rows(), cols = layer1.cols();
  if (rows == 0 || cols == 0) throw std::invalid_argument("empty grid");
  if (rows > 7 || cols > 7) throw std::invalid_argument("grid too large for exhaustive search");

  std::vector<std::pair<std::size_t, std::size_t>> path{{0, 0}}, best_path;
  double best_total = -1;

  auto value = [&](std::size_t i, std::size_t j) { return layer1.at(i, j).value_or(0.0); };

  auto consider = [&](double total) {
    if (total > best_total ||
        (total == best_total && (best_path.empty() || path < best_path))) {
      best_total = total;
      best_path = path;
    }
  };

  auto dfs = [&](auto&& self, std::size_t i, std::size_t j, double total) -> void {
    std::vector<std::pair<std::size_t, std::size_t>> next;
    if (j + 1 < cols)
      for (std::size_t k = i; k < rows; ++k) next.emplace_back(k, j + 1);
    if (i + 1 < rows)
      for (std::size_t l = j; l < cols; ++l) next.emplace_back(i + 1, l);
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());

    if (next.empty()) {
      consider(total);
      return;
    }
    for (const auto& [ni, nj] : next) {
      path.emplace_back(ni, nj);
      self(self, ni, nj, total + value(ni, nj));
      path.pop_back();
    }
  };
  dfs(dfs, 0, 0, value(0, 0));

  DtwPath out;
  for (const auto& [i, j] : best_path) {
    out.nodes.push_back(PathNode{1, i, j, value(i, j)});
    out.total += value(i, j);
  }
  return out;
}

}  // namespace sigmap
