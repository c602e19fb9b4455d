#pragma once

// Text presentation of mapping runs plus a plain-text score-matrix reader
// used by the CLI's matrix diagnostic mode.

#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sigmap/dtw.hpp"
#include "sigmap/svc.hpp"

namespace sigmap {

// One row per accepted node: ordinal, layer, i, j, score. Rejections are
// interleaved where they happened as '#' lines, then a summary line.
inline std::string format_map_output(const MapResult& r) {
  std::string out;
  char buf[160];
  std::size_t next = 0;
  auto rejections_at = [&](std::size_t decision) {
    while (next < r.rejections.size() && r.rejections[next].decision == decision) {
      const RejectionRecord& rej = r.rejections[next++];
      std::snprintf(buf, sizeof buf, "# reject layer=%d i=%zu j=%zu score=%.6f V=%.6f\n",
                    rej.candidate.layer, rej.candidate.i, rej.candidate.j, rej.candidate.score,
                    rej.v);
      out += buf;
    }
  };
  for (std::size_t k = 0; k < r.path.nodes.size(); ++k) {
    rejections_at(k);
    const PathNode& n = r.path.nodes[k];
    std::snprintf(buf, sizeof buf, "%zu %d %zu %zu %.6f\n", k, n.layer, n.i, n.j, n.score);
    out += buf;
  }
  rejections_at(r.path.nodes.size());
  std::snprintf(buf, sizeof buf, "total=%.6f rejections=%zu nodes=%zu\n", r.path.total,
                r.rejections.size(), r.path.nodes.size());
  out += buf;
  return out;
}

// Grid dump with '-' for absent cells.
inline std::string format_layers(const LayeredMatrix& m) {
  std::string out;
  char buf[64];
  for (int n = 1; n <= 3; ++n) {
    const ScoreGrid& g = m.layer(n);
    std::snprintf(buf, sizeof buf, "layer %d (%zux%zu)\n", n, g.rows(), g.cols());
    out += buf;
    for (std::size_t i = 0; i < g.rows(); ++i) {
      for (std::size_t j = 0; j < g.cols(); ++j) {
        if (j) out += ' ';
        if (g.at(i, j)) {
          std::snprintf(buf, sizeof buf, "%.6f", *g.at(i, j));
          out += buf;
        } else {
          out += '-';
        }
      }
      out += '\n';
    }
  }
  return out;
}

// Whitespace-separated rows of scores; '-' marks an absent cell, '#' lines
// and blank lines are skipped. All rows must have the same width.
inline ScoreGrid parse_score_matrix(std::string_view text) {
  std::vector<std::vector<std::optional<double>>> rows;
  const std::vector<std::string_view> lines = detail::split_lines(text);
  for (std::size_t li = 0; li < lines.size(); ++li) {
    std::string_view line = lines[li];
    if (detail::blank(line) || line.front() == '#') continue;
    const std::string where = "line " + std::to_string(li + 1) + ": ";
    std::vector<std::optional<double>> row;
    while (true) {
      const std::string_view tok = detail::next_token(line);
      if (tok.empty()) break;
      if (tok == "-") {
        row.emplace_back(std::nullopt);
        continue;
      }
      try {
        std::size_t used = 0;
        const double v = std::stod(std::string(tok), &used);
        if (used != tok.size()) throw std::invalid_argument("trailing junk");
        row.emplace_back(v);
      } catch (const std::exception&) {
        throw std::invalid_argument(where + "bad matrix value '" + std::string(tok) + "'");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw std::invalid_argument(where + "expected " + std::to_string(rows.front().size()) +
                                  " values");
    rows.push_back(std::move(row));
  }
  if (rows.empty() || rows.front().empty()) throw std::invalid_argument("empty matrix");

  ScoreGrid grid(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) grid.at(i, j) = rows[i][j];
  return grid;
}

}  // namespace sigmap
